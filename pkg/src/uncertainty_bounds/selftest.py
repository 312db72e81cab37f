"""Reduced-size invariant suite behind ``uncbounds selftest``.

``MUTATIONS`` lists defects that can be injected to confirm the suite
notices them. ``mp2-sign`` flips the sign of B inside the variance path of
the second sum bound, so that path computes d(A-B)^2 / 2; that value is still
a valid lower bound, and only the cross-check against the matrix-element
form exposes it.
"""

from __future__ import annotations

import contextlib
import time
from unittest import mock

import numpy as np

from . import bounds
from .bounds import bound_suite, mp1_bound, mp1_optimal, mp2_matrix_element
from .constants import IDENTITY_TOL, SLACK_TOL
from .linalg import project_orthogonal
from .sampler import SampleConfig, draw_instance, gue_observable, haar_state, stream, tightness_scan
from .scenarios import counterexample_scenario, counterexample_search, eigenstate_scenario
from .state import (
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    StateVector,
    commutator,
    correlation,
    moments,
)

MUTATIONS = {
    "mp2-sign": lambda: mock.patch.object(
        bounds, "_sum_variance", lambda A, B, phi: moments(A - B, phi).variance
    ),
}

_DIMS = (2, 3, 4, 8)


def _validity(n=100):
    for d in _DIMS:
        for i in range(n):
            A, B, phi = draw_instance(d, 11, i)
            r = bound_suite(A, B, phi)
            if r.min_scaled_slack() < -SLACK_TOL:
                return False, f"negative slack at dim {d} sample {i}"
            mp2_alt = mp2_matrix_element(A, B, phi)
            if mp2_alt is not None and abs(mp2_alt - r.mp2) > IDENTITY_TOL * r.scale:
                return False, f"second sum bound paths disagree at dim {d} sample {i}"
            c = correlation(A, B, phi)
            if abs(c.commutator_expectation - 2j * c.im_part) > IDENTITY_TOL * r.scale:
                return False, f"commutator identity fails at dim {d} sample {i}"
            if r.m12a > 2 * np.sqrt(r.var_a * r.var_b) + SLACK_TOL * r.scale:
                return False, f"Cauchy-Schwarz chain fails at dim {d} sample {i}"
    return True, f"{len(_DIMS) * n} random triples"


def _maximality(n_inst=10, n_perp=20):
    for i in range(n_inst):
        A, B, phi = draw_instance(3, 12, i)
        rng = stream(13, i)
        for sign in (1, -1):
            best = mp1_optimal(A, B, phi, sign).rhs
            for _ in range(n_perp):
                perp = StateVector.from_unnormalized(project_orthogonal(haar_state(3, rng).vec, phi.vec))
                if mp1_bound(A, B, phi, perp, sign).rhs > best + 1e-10:
                    return False, f"random perpendicular beats the optimum at instance {i}"
    return True, f"{n_inst * n_perp * 2} perpendicular states"


def _eigenstates(n=10):
    for k, d in enumerate((2, 3, 5)):
        for i in range(n):
            rng = stream(14 + k, i)
            A, B = gue_observable(d, rng), gue_observable(d, rng)
            for idx in range(d):
                res = eigenstate_scenario(A, B, idx)
                if not res.verdict:
                    failed = [c.label for c in res.checks if not c.passed]
                    return False, f"dim {d} instance {i} index {idx}: {failed}"
    res = eigenstate_scenario(PAULI_X, PAULI_Z, 1)
    if not res.verdict or abs(res.values["mp2"] - 0.5) > 1e-12:
        return False, "Pauli x/z eigenstate case"
    return True, "all eigenvectors of random pairs, dims 2, 3, 5"


def _counterexample():
    phi = StateVector(np.array([1, np.exp(1j * np.pi / 4)]) / np.sqrt(2))
    res = counterexample_scenario(PAULI_X, PAULI_Y, phi)
    if not res.verdict or abs(res.values["m12a"] - 1) > 1e-12:
        return False, "equatorial Pauli state"
    found = counterexample_search(PAULI_X, PAULI_Y, seed=0, n_starts=8)
    if found is None or not counterexample_scenario(PAULI_X, PAULI_Y, found).verdict:
        return False, "search on (pauli_x, pauli_y)"
    if np.max(np.abs(commutator(PAULI_X, PAULI_Y))) == 0:
        return False, "Pauli commutator vanished"
    return True, "equatorial state and search"


def _determinism():
    a = tightness_scan(SampleConfig(3, 50, 5)).summary()
    b = tightness_scan(SampleConfig(3, 50, 5)).summary()
    return (a == b), "repeated scan summaries"


SUITES = [
    ("validity", _validity),
    ("maximality", _maximality),
    ("eigenstate", _eigenstates),
    ("counterexample", _counterexample),
    ("determinism", _determinism),
]


def run(mutate: str | None = None, out=None) -> bool:
    """Run every suite, printing one line each. Returns overall pass/fail."""
    ctx = MUTATIONS[mutate]() if mutate else contextlib.nullcontext()
    results = []
    with ctx:
        for name, fn in SUITES:
            t0 = time.perf_counter()
            try:
                ok, detail = fn()
            except ArithmeticError as exc:
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            dt = time.perf_counter() - t0
            results.append((name, ok))
            if out is not None:
                print(f"{name:<15} {'PASS' if ok else 'FAIL'}  {dt:6.2f} s  {detail}", file=out)
    passed = all(ok for _, ok in results)
    if out is not None:
        summary = " ".join(f"{n}={'pass' if ok else 'fail'}" for n, ok in results)
        print(f"summary: {summary}", file=out)
    return passed


__all__ = ["run", "MUTATIONS", "SUITES"]
