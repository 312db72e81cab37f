"""Reproducible random states/observables and batch scans over the bounds.

Random streams are counter-based: sample ``i`` of a run with seed ``s`` uses
a Philox4x64 generator keyed by ``s + 2**64 * i``. Gaussians come from
``numpy.random.Generator.standard_normal`` (ziggurat) on that stream; a
complex Gaussian is ``x + i y`` with the real block drawn before the
imaginary block. Golden values in the tests depend on this exact recipe.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bounds import MPSuiteReport, bound_suite
from .constants import SLACK_TOL
from .linalg import hermitian_eigensystem
from .scenarios import _require_noncommuting
from .state import Observable, StateVector, as_observable

__all__ = [
    "SampleConfig",
    "TightnessStats",
    "ApproachStep",
    "stream",
    "haar_state",
    "gue_observable",
    "draw_instance",
    "tightness_scan",
    "eigenstate_approach_scan",
    "SCAN_BOUNDS",
]

_MASK64 = (1 << 64) - 1

#: bounds whose relative slack is tracked by :func:`tightness_scan`
SCAN_BOUNDS = ("hr", "mp1_best", "mp2", "m12a")


def stream(seed: int, index: int) -> np.random.Generator:
    """Independent generator for ``(seed, index)``."""
    if seed < 0 or index < 0:
        raise ValueError("seed and index must be non-negative")
    key = (int(seed) & _MASK64) | ((int(index) & _MASK64) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def _complex_gaussian(rng: np.random.Generator, shape) -> np.ndarray:
    re = rng.standard_normal(shape)
    im = rng.standard_normal(shape)
    return re + 1j * im


def haar_state(dim: int, rng: np.random.Generator) -> StateVector:
    """Uniformly random unit vector in C^dim."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    return StateVector.from_unnormalized(_complex_gaussian(rng, dim))


def gue_observable(dim: int, rng: np.random.Generator) -> Observable:
    """(G + G^H) / 2 for G with iid standard complex Gaussian entries."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    g = _complex_gaussian(rng, (dim, dim))
    return Observable(0.5 * (g + g.conj().T))


def draw_instance(dim: int, seed: int, index: int) -> tuple[Observable, Observable, StateVector]:
    """The (A, B, phi) triple of sample ``index``: A, then B, then phi from one stream."""
    rng = stream(seed, index)
    A = gue_observable(dim, rng)
    B = gue_observable(dim, rng)
    phi = haar_state(dim, rng)
    return A, B, phi


@dataclass(frozen=True)
class SampleConfig:
    dim: int
    n_samples: int
    seed: int = 0

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dim must be >= 2")
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if not 0 <= self.seed <= _MASK64:
            raise ValueError("seed must be a 64-bit unsigned integer")


@dataclass
class TightnessStats:
    config: SampleConfig
    reports: list[MPSuiteReport]
    relative_slack: dict[str, np.ndarray]
    quantiles: dict[str, dict[str, float]]
    hr_zero_m12a_positive: int
    violations: int
    min_scaled_slack: float = field(default=0.0)

    def summary(self) -> dict:
        cfg = self.config
        return {
            "dim": cfg.dim,
            "n_samples": cfg.n_samples,
            "seed": cfg.seed,
            "violations": self.violations,
            "min_scaled_slack": self.min_scaled_slack,
            "hr_zero_m12a_positive": self.hr_zero_m12a_positive,
            "relative_slack_quantiles": self.quantiles,
        }


def _relative_slack(lhs: float, rhs: float) -> float:
    return (lhs - rhs) / lhs if lhs > 0 else 0.0


def tightness_scan(cfg: SampleConfig, hr_zero_tol: float = 1e-6, m12a_pos_tol: float = 1e-3) -> TightnessStats:
    """Run :func:`bound_suite` on ``cfg.n_samples`` random triples.

    Relative slack is ``(lhs - rhs) / lhs`` with the product dA dB as lhs for
    the product bound and dA^2 + dB^2 for the sum bounds. Also counts samples
    whose product bound is below ``hr_zero_tol`` while the real-part sum bound
    exceeds ``m12a_pos_tol``.
    """
    reports = [bound_suite(*draw_instance(cfg.dim, cfg.seed, i)) for i in range(cfg.n_samples)]
    rel = {name: np.empty(cfg.n_samples) for name in SCAN_BOUNDS}
    for i, r in enumerate(reports):
        rel["hr"][i] = _relative_slack(r.hr.lhs_product, r.hr.rhs)
        rel["mp1_best"][i] = _relative_slack(r.lhs_sum, r.mp1_best)
        rel["mp2"][i] = _relative_slack(r.lhs_sum, r.mp2)
        rel["m12a"][i] = _relative_slack(r.lhs_sum, r.m12a)
    quantiles = {
        name: {
            "min": float(np.min(arr)),
            "median": float(np.median(arr)),
            "max": float(np.max(arr)),
        }
        for name, arr in rel.items()
    }
    scaled = [r.min_scaled_slack() for r in reports]
    return TightnessStats(
        config=cfg,
        reports=reports,
        relative_slack=rel,
        quantiles=quantiles,
        hr_zero_m12a_positive=sum(
            1 for r in reports if r.hr.rhs < hr_zero_tol and r.m12a > m12a_pos_tol
        ),
        violations=sum(1 for s in scaled if s < -SLACK_TOL),
        min_scaled_slack=float(min(scaled)),
    )


@dataclass(frozen=True)
class ApproachStep:
    t: float
    state: StateVector
    report: MPSuiteReport


def eigenstate_approach_scan(A, B, eig_index: int, n_steps: int, rng: np.random.Generator) -> list[ApproachStep]:
    """Bounds along phi(t) = normalize((1 - t) psi_b + t chi), t from 1 down to 0.

    ``psi_b`` is the ``eig_index``-th eigenvector of B and ``chi`` a Haar
    state drawn from ``rng``. The last step is exactly the eigenstate.
    """
    A, B = as_observable(A), as_observable(B)
    _require_noncommuting(A, B)
    if n_steps < 2:
        raise ValueError("n_steps must be >= 2")
    _, evecs = hermitian_eigensystem(B.mat)
    if not 0 <= eig_index < evecs.shape[1]:
        raise IndexError(f"eig_index {eig_index} out of range")
    psi_b = evecs[:, eig_index]
    chi = haar_state(A.dim, rng).vec
    steps = []
    for t in np.linspace(1.0, 0.0, n_steps):
        phi = StateVector.from_unnormalized((1.0 - t) * psi_b + t * chi)
        steps.append(ApproachStep(t=float(t), state=phi, report=bound_suite(A, B, phi)))
    return steps
