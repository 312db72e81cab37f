"""Executable checks of the eigenstate collapse and the vanishing-commutator regime."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .av import av_decompose
from .bounds import bound_suite, hr_bound, m12a_rhs, mp1_optimal, mp2_bound
from .constants import (
    COMMUTATOR_TOL,
    EPS_EIGEN,
    IDENTITY_TOL,
    NONCOMMUTING_TOL,
    SEARCH_PENALTY,
    SEARCH_STARTS,
)
from .linalg import DimensionError, _vdot, hermitian_eigensystem
from .state import (
    StateVector,
    as_observable,
    as_state,
    commutator,
    moments,
    pair_scale,
)

__all__ = [
    "CommutingPairError",
    "Check",
    "ScenarioResult",
    "eigenstate_scenario",
    "counterexample_scenario",
    "counterexample_search",
]


class CommutingPairError(ValueError):
    """The scenario needs [A, B] != 0."""


@dataclass(frozen=True)
class Check:
    """One assertion: ``computed`` compared with ``expected`` under ``relation``.

    ``relation`` is ``"=="`` (|computed - expected| <= tolerance), ``"<="``
    (computed <= expected + tolerance) or ``">"`` (computed > expected + tolerance).
    """

    label: str
    computed: float
    expected: float
    tolerance: float
    relation: str = "=="

    @property
    def passed(self) -> bool:
        if self.relation == "==":
            return abs(self.computed - self.expected) <= self.tolerance
        if self.relation == "<=":
            return self.computed <= self.expected + self.tolerance
        if self.relation == ">":
            return self.computed > self.expected + self.tolerance
        raise ValueError(f"unknown relation {self.relation!r}")

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "computed": float(self.computed),
            "relation": self.relation,
            "expected": float(self.expected),
            "tolerance": float(self.tolerance),
            "pass": self.passed,
        }


@dataclass
class ScenarioResult:
    name: str
    checks: list[Check] = field(default_factory=list)
    values: dict[str, float] = field(default_factory=dict)
    summary: str = ""
    warnings: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "verdict": self.verdict,
            "checks": [c.to_dict() for c in self.checks],
            "values": {k: float(v) for k, v in self.values.items()},
            "summary": self.summary,
            "warnings": list(self.warnings),
        }

    def render(self) -> str:
        width = max((len(c.label) for c in self.checks), default=10)
        lines = [f"scenario {self.name}: {'PASS' if self.verdict else 'FAIL'}"]
        for c in self.checks:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(
                f"  [{mark}] {c.label:<{width}}  computed={c.computed:.12g}  "
                f"{c.relation} {c.expected:.12g}  (tol {c.tolerance:.1e})"
            )
        if self.summary:
            lines.append(f"  summary: {self.summary}")
        for w in self.warnings:
            lines.append(f"  warning: {w}")
        return "\n".join(lines)


def _require_noncommuting(A, B) -> None:
    if np.max(np.abs(commutator(A, B))) <= NONCOMMUTING_TOL:
        raise CommutingPairError("A and B commute; the scenario needs [A, B] != 0")


def eigenstate_scenario(A, B, eig_index: int, eps_eigen: float = EPS_EIGEN) -> ScenarioResult:
    """Evaluate every bound at the ``eig_index``-th eigenvector of ``B``.

    The checks are the identities that make each bound collapse there: B has
    no spread, the commutator term vanishes, the first sum bound reduces to
    overlap^2 * dA^2 and the second one to dA^2 / 2.
    """
    A, B = as_observable(A), as_observable(B)
    if A.dim != B.dim:
        raise DimensionError(f"dimension mismatch: {A.dim} vs {B.dim}")
    _require_noncommuting(A, B)
    evals, evecs = hermitian_eigensystem(B.mat)
    if not 0 <= eig_index < len(evals):
        raise IndexError(f"eig_index {eig_index} out of range for dimension {len(evals)}")

    result = ScenarioResult(name="eigenstate")
    b = evals[eig_index]
    gaps = np.abs(np.delete(evals, eig_index) - b)
    if gaps.size and gaps.min() <= 1e-8 * (1.0 + abs(b)):
        result.warnings.append(
            f"eigenvalue {b:.6g} is degenerate; the eigenvector is one basis choice of its eigenspace"
        )

    psi = StateVector.from_unnormalized(evecs[:, eig_index])
    scale = pair_scale(A, B)
    tol = IDENTITY_TOL * scale

    ma, mb = moments(A, psi), moments(B, psi)
    comm = _vdot(psi.vec, commutator(A, B) @ psi.vec)
    mp1 = mp1_optimal(A, B, psi, +1, eps_eigen)
    perp_b = mp1.perp_used
    dec_a = av_decompose(A, psi, eps_eigen)
    if dec_a.perp_state is None:
        result.warnings.append("psi_b is also an eigenstate of A; no perpendicular direction for A")
        overlap = 0.0
    else:
        overlap = abs(_vdot(dec_a.perp_state.vec, perp_b.vec))
    mp1_best = max(mp1.rhs, mp1_optimal(A, B, psi, -1, eps_eigen).rhs)
    m_sum = moments(A + B, psi)
    mp2 = mp2_bound(A, B, psi, eps_eigen)
    hr = hr_bound(A, B, psi, eps_eigen)

    a_elem = abs(_vdot(psi.vec, A.mat @ perp_b.vec))
    result.checks = [
        Check("c1 dB = 0 and <[A,B]> = 0", max(mb.std_dev, abs(comm)), 0.0, tol),
        Check("c2 <psi_b|B|psi_b_perp> = 0", abs(_vdot(psi.vec, B.mat @ perp_b.vec)), 0.0, tol),
        Check("c3 |<psi_b|A|perp>| = dA * overlap", a_elem, ma.std_dev * overlap, tol),
        Check("c4 overlap <= 1", overlap, 1.0, tol, "<="),
        Check("c5 d(A+B) = dA", m_sum.std_dev, ma.std_dev, tol),
        Check("c6 mp2 = dA^2 / 2", mp2, 0.5 * ma.variance, tol),
        Check("c7 mp1 = overlap^2 * dA^2", mp1_best, overlap**2 * ma.variance, tol),
        Check("c8 hr rhs = 0", hr.rhs, 0.0, tol),
    ]
    result.values = {
        "eigenvalue": b,
        "delta_a": ma.std_dev,
        "delta_b": mb.std_dev,
        "var_a": ma.variance,
        "overlap": overlap,
        "mp1_best": mp1_best,
        "mp2": mp2,
        "hr_rhs": hr.rhs,
        "lhs_sum": ma.variance + mb.variance,
        "delta_a_positive": float(ma.std_dev > eps_eigen),
    }
    result.summary = (
        f"every bound reduces to (dA)^2 >= c (dA)^2 with c = {overlap**2:.6g} (first sum bound) "
        f"and c = 0.5 (second sum bound), i.e. (dA)^2 >= 0 with dA = {ma.std_dev:.6g}"
    )
    return result


def counterexample_scenario(A, B, phi, tol: float | None = None) -> ScenarioResult:
    """Check that ``phi`` has <[A,B]> = 0 but a positive real-part sum bound.

    ``tol`` defaults to ``COMMUTATOR_TOL * scale``. A state that fails the
    predicate gives ``verdict == False``; it is not an error.
    """
    A, B, phi = as_observable(A), as_observable(B), as_state(phi)
    if not (A.dim == B.dim == phi.dim):
        raise DimensionError("dimension mismatch")
    scale = pair_scale(A, B)
    if tol is None:
        tol = COMMUTATOR_TOL * scale
    suite = bound_suite(A, B, phi)
    ma, mb = moments(A, phi), moments(B, phi)
    comm = abs(_vdot(phi.vec, commutator(A, B) @ phi.vec))
    op_comm = float(np.max(np.abs(commutator(A, B))))

    result = ScenarioResult(name="counterexample")
    result.checks = [
        Check("[A,B] != 0 as operators", op_comm, 0.0, NONCOMMUTING_TOL, ">"),
        Check("<[A,B]> = 0", comm, 0.0, tol),
        Check("dA > 0", ma.std_dev, 0.0, EPS_EIGEN, ">"),
        Check("dB > 0", mb.std_dev, 0.0, EPS_EIGEN, ">"),
        Check("m12a > 0", suite.m12a, 0.0, tol, ">"),
        Check("hr rhs = 0", suite.hr.rhs, 0.0, tol),
    ]
    result.values = {
        "lhs_sum": suite.lhs_sum,
        "hr_lhs": suite.hr.lhs_product,
        "hr_rhs": suite.hr.rhs,
        "mp1_best": suite.mp1_best,
        "mp2": suite.mp2,
        "m12a": suite.m12a,
        "commutator_abs": comm,
    }
    result.summary = (
        f"product bound gives {suite.hr.rhs:.3g}, real-part sum bound gives {suite.m12a:.6g} "
        f"against dA^2 + dB^2 = {suite.lhs_sum:.6g}"
    )
    return result


def _search_objective(phi, A, B, S, K, penalty):
    a = np.vdot(phi, A @ phi).real
    b = np.vdot(phi, B @ phi).real
    r = np.vdot(phi, S @ phi).real - a * b
    k = np.vdot(phi, K @ phi).real
    value = 2.0 * abs(r) - penalty * k * k
    # Wirtinger gradient with respect to conj(phi), up to a factor 2
    grad = 2.0 * np.sign(r) * (S @ phi - b * (A @ phi) - a * (B @ phi)) - 2.0 * penalty * k * (K @ phi)
    return value, grad


def _project_constraint(phi, K, tol, max_iter=50):
    """Newton steps along dK phi until |<K>| <= tol."""
    for _ in range(max_iter):
        k = np.vdot(phi, K @ phi).real
        if abs(k) <= tol:
            break
        d = K @ phi - k * phi
        dn = np.vdot(d, d).real
        if dn == 0.0:
            break
        phi = phi - (k / (2.0 * dn)) * d
        phi = phi / np.linalg.norm(phi)
    return phi


def _ascend(phi, A, B, S, K, penalty, n_iter=300, step=0.5):
    """Backtracking gradient ascent of the penalized objective on the sphere."""
    value, grad = _search_objective(phi, A, B, S, K, penalty)
    for _ in range(n_iter):
        g = grad - np.vdot(phi, grad).real * phi
        gn = np.linalg.norm(g)
        if gn < 1e-12:
            break
        t = step / max(1.0, gn)
        while t > 1e-14:
            trial = phi + t * g
            trial /= np.linalg.norm(trial)
            tv, tg = _search_objective(trial, A, B, S, K, penalty)
            if tv >= value + 1e-4 * t * gn * gn:
                phi, value, grad = trial, tv, tg
                break
            t *= 0.5
        else:
            break
    return phi


def _ascend_on_constraint(phi, A, B, S, K, tol, n_iter=300, step=0.5):
    """Ascent of 2|Re<dA dB>| restricted to the surface <[A,B]> = 0.

    The gradient is projected off both phi and the constraint normal dK phi;
    each trial point is pulled back onto the surface by Newton steps.
    """
    phi = _project_constraint(phi, K, tol)
    value, grad = _search_objective(phi, A, B, S, K, 0.0)
    for _ in range(n_iter):
        g = grad - np.vdot(phi, grad).real * phi
        k = np.vdot(phi, K @ phi).real
        n = K @ phi - k * phi
        nn = np.vdot(n, n).real
        if nn > 0.0:
            g = g - (np.vdot(n, g).real / nn) * n
        gn = np.linalg.norm(g)
        if gn < 1e-10:
            break
        t = step / max(1.0, gn)
        while t > 1e-12:
            trial = phi + t * g
            trial = _project_constraint(trial / np.linalg.norm(trial), K, tol)
            tv, tg = _search_objective(trial, A, B, S, K, 0.0)
            if tv > value:
                phi, value, grad = trial, tv, tg
                break
            t *= 0.5
        else:
            break
    return phi


def counterexample_search(
    A,
    B,
    seed: int = 0,
    n_starts: int = SEARCH_STARTS,
    tol: float | None = None,
    penalty: float = SEARCH_PENALTY,
) -> StateVector | None:
    """Look for a state with <[A,B]> = 0 and a positive real-part sum bound.

    Each start runs projected gradient ascent on the unit sphere of
    ``2 |Re <dA dB>| - penalty * |<[A,B]>|^2`` and then continues the ascent
    of ``2 |Re <dA dB>|`` on the surface |<[A,B]>| <= tol / 10, using
    Newton steps to stay on it. Start ``i`` draws its initial Haar state from
    the stream keyed by ``(seed, i)``, so the result does not depend on
    evaluation order. Returns the state from the lowest-index start that
    reaches ``m12a >= 10 tol`` with the constraint satisfied, else ``None``.
    """
    from .sampler import haar_state, stream

    A, B = as_observable(A), as_observable(B)
    if A.dim != B.dim:
        raise DimensionError(f"dimension mismatch: {A.dim} vs {B.dim}")
    _require_noncommuting(A, B)
    scale = pair_scale(A, B)
    if tol is None:
        tol = COMMUTATOR_TOL * scale
    a, b = A.mat, B.mat
    S = 0.5 * (a @ b + b @ a)
    K = -1j * (a @ b - b @ a)
    K = 0.5 * (K + K.conj().T)

    for i in range(n_starts):
        phi = haar_state(A.dim, stream(seed, i)).vec.copy()
        phi = _ascend(phi, a, b, S, K, penalty)
        phi = _ascend_on_constraint(phi, a, b, S, K, 0.1 * tol)
        cand = StateVector.from_unnormalized(phi)
        comm = abs(_vdot(cand.vec, commutator(A, B) @ cand.vec))
        if comm <= tol and m12a_rhs(A, B, cand) >= 10.0 * tol:
            return cand
    return None
