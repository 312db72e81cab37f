"""Acceptance gate: nine criteria at their stated tolerances.

Each criterion is a plain function returning ``(passed, detail)``. Under
pytest every one becomes a test and a PASS/FAIL line per criterion is printed
in the terminal summary; ``python tests/test_acceptance.py`` prints the same
lines directly and exits non-zero if any criterion fails.
"""

import sys
import tempfile
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from conftest import E0, EQUATOR, SX, SY, SZ  # noqa: E402
from uncertainty_bounds.bounds import bound_suite, mp1_bound, mp1_optimal  # noqa: E402
from uncertainty_bounds.cli import main as cli_main  # noqa: E402
from uncertainty_bounds.linalg import project_orthogonal  # noqa: E402
from uncertainty_bounds.sampler import (  # noqa: E402
    draw_instance,
    eigenstate_approach_scan,
    haar_state,
    stream,
)
from uncertainty_bounds.scenarios import counterexample_search, eigenstate_scenario  # noqa: E402
from uncertainty_bounds.state import (  # noqa: E402
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    StateVector,
    correlation,
    pair_scale,
)

RESULTS: dict[str, str] = {}
SUITE_DIMS = (2, 3, 4, 8)
SUITE_SAMPLES = 1000
SUITE_SEED = 2026


def _oracle_moments(A, B, phi):
    # subtraction-form oracle on plain arrays, independent of the package path
    a = np.vdot(phi, A @ phi).real
    b = np.vdot(phi, B @ phi).real
    var_a = np.vdot(A @ phi, A @ phi).real - a * a
    var_b = np.vdot(B @ phi, B @ phi).real - b * b
    corr = np.vdot(phi, A @ B @ phi) - a * b
    comm = np.vdot(phi, (A @ B - B @ A) @ phi)
    return var_a, var_b, corr, comm


def _close(x, y, tol):
    return abs(x - y) <= tol


def _suite():
    # the random triples shared by criteria 3, 4 and 5; cached across calls
    if not hasattr(_suite, "cache"):
        start = time.perf_counter()
        data = []
        for d in SUITE_DIMS:
            for i in range(SUITE_SAMPLES):
                A, B, phi = draw_instance(d, SUITE_SEED, i)
                data.append((A, B, phi, bound_suite(A, B, phi)))
        _suite.cache = (data, time.perf_counter() - start)
    return _suite.cache


def criterion_1():
    """Eigenstate trivialization on (sx, sz) at (1, 0)."""
    start = time.perf_counter()
    tol = 1e-12
    r = bound_suite(PAULI_X, PAULI_Z, E0)
    var_a, var_b, _, comm = _oracle_moments(SX, SZ, E0)
    var_ab, _, _, _ = _oracle_moments(SX + SZ, SZ, E0)
    opt = mp1_optimal(PAULI_X, PAULI_Z, E0, +1)
    scen = eigenstate_scenario(PAULI_X, PAULI_Z, 1)
    elapsed = time.perf_counter() - start
    checks = {
        "dB=0": _close(np.sqrt(r.var_b), 0, tol) and _close(var_b, 0, tol),
        "<[A,B]>=0": _close(abs(comm), 0, tol),
        "d(A+B)=dA=1": _close(var_ab, 1, tol) and _close(r.var_a, 1, tol) and _close(var_a, 1, tol),
        "mp2=0.5": _close(r.mp2, 0.5, tol),
        "lhs_sum=1": _close(r.lhs_sum, 1, tol),
        "ratio=1/2": _close(r.mp2 / r.lhs_sum, 0.5, tol),
        "mp1_optimal=dA^2=1": _close(opt.rhs, 1, tol) and _close(opt.rhs, r.var_a, tol),
        "self_referential": r.self_referential,
        "hr_rhs=0": _close(r.hr.rhs, 0, tol),
        "scenario": scen.verdict,
        "runtime<1s": elapsed < 1.0,
    }
    failed = [k for k, ok in checks.items() if not ok]
    return not failed, f"{elapsed:.3f}s" + (f" failed={failed}" if failed else "")


def criterion_2():
    """Counterexample with vanishing commutator expectation on (sx, sy)."""
    tol = 1e-12
    r = bound_suite(PAULI_X, PAULI_Y, EQUATOR)
    var_a, var_b, corr, comm = _oracle_moments(SX, SY, EQUATOR)
    checks = {
        "<[A,B]>=0": _close(abs(comm), 0, tol),
        "hr_rhs=0": _close(r.hr.rhs, 0, tol),
        "m12a=1": _close(r.m12a, 1, tol) and _close(2 * abs(corr.real), 1, tol),
        "lhs_sum=1": _close(r.lhs_sum, 1, tol) and _close(var_a + var_b, 1, tol),
        "equality": _close(r.lhs_sum, r.m12a, tol),
    }
    failed = [k for k, ok in checks.items() if not ok]
    return not failed, "ok" if not failed else f"failed={failed}"


def criterion_3():
    """Validity of every bound on 1000 random triples per dimension."""
    data, elapsed = _suite()
    worst = np.inf
    for A, B, phi, r in data:
        tol_unit = r.scale
        for rhs in (r.mp1_plus.rhs, r.mp1_minus.rhs, r.mp2, r.m12a):
            worst = min(worst, (r.lhs_sum - rhs) / tol_unit)
        worst = min(worst, (r.hr.lhs_product - r.hr.rhs) / tol_unit)
    ok = worst >= -1e-9 and elapsed < 10.0
    return ok, f"{len(data)} triples, min slack/scale={worst:.3e}, {elapsed:.2f}s"


def criterion_4():
    """Variance form and matrix-element form of mp2 agree."""
    data, _ = _suite()
    worst, used = 0.0, 0
    for A, B, phi, r in data:
        var_sum, _, _, _ = _oracle_moments(A.mat + B.mat, B.mat, phi.vec)
        if np.sqrt(max(var_sum, 0.0)) <= 1e-8:
            continue
        used += 1
        if r.mp2_matrix_element is None:
            return False, "matrix-element path missing on a non-eigenstate sample"
        err = max(abs(r.mp2 - r.mp2_matrix_element), abs(r.mp2 - 0.5 * var_sum)) / r.scale
        worst = max(worst, err)
    return worst <= 1e-10, f"{used} samples, max diff/scale={worst:.3e}"


def criterion_5():
    """<[A,B]> equals 2i Im<dA dB> on every suite sample."""
    data, _ = _suite()
    worst = 0.0
    for A, B, phi, r in data:
        _, _, corr, comm = _oracle_moments(A.mat, B.mat, phi.vec)
        c = correlation(A, B, phi)
        err = max(
            abs(comm - 2j * c.im_part),
            abs(c.commutator_expectation - 2j * corr.imag),
            abs(c.commutator_expectation - comm),
        )
        worst = max(worst, err / r.scale)
    return worst <= 1e-10, f"{len(data)} samples, max diff/scale={worst:.3e}"


def criterion_6():
    """The constructed perpendicular maximizes the first sum bound."""
    worst = -np.inf
    for i in range(50):
        d = SUITE_DIMS[i % len(SUITE_DIMS)]
        A, B, phi = draw_instance(d, 606, i)
        best = {s: mp1_optimal(A, B, phi, s).rhs for s in (1, -1)}
        rng = stream(607, i)
        for _ in range(100):
            perp = StateVector.from_unnormalized(project_orthogonal(haar_state(d, rng).vec, phi.vec))
            for s in (1, -1):
                worst = max(worst, mp1_bound(A, B, phi, perp, s).rhs - best[s])
    return worst <= 1e-10, f"50x100 perps, max excess={worst:.3e}"


def criterion_7():
    """Approach scan endpoint: product bound vanishes and mp2 is half the sum."""
    worst_hr, worst_ratio = 0.0, 0.0
    cases = [(PAULI_X, PAULI_Z, k, 0) for k in range(2)]
    for i in range(4):
        A, B, _ = draw_instance(4, 707, i)
        cases += [(A, B, k, i + 1) for k in range(4)]
    for A, B, k, seed in cases:
        end = eigenstate_approach_scan(A, B, k, 11, stream(708, seed))[-1].report
        worst_hr = max(worst_hr, end.hr.rhs)
        worst_ratio = max(worst_ratio, abs(end.mp2 / end.lhs_sum - 0.5))
    ok = worst_hr <= 1e-9 and worst_ratio <= 1e-9
    return ok, f"{len(cases)} endpoints, max hr={worst_hr:.3e}, max |ratio-1/2|={worst_ratio:.3e}"


def criterion_8():
    """Scan commands re-run with identical flags give byte-identical files."""
    runs = {
        "haar": ["scan", "haar", "--dim", "3", "--samples", "500", "--seed", "8"],
        "approach": ["scan", "approach", "--steps", "25", "--seed", "8"],
    }
    compared = 0
    with tempfile.TemporaryDirectory() as tmp:
        for kind, argv in runs.items():
            outs = [Path(tmp) / f"{kind}{j}" for j in range(2)]
            for out in outs:
                if cli_main(argv + ["--out", str(out)]) != 0:
                    return False, f"scan {kind} exited non-zero"
            for ext in ("csv", "json"):
                name = f"scan_{kind}.{ext}"
                if (outs[0] / name).read_bytes() != (outs[1] / name).read_bytes():
                    return False, f"{name} differs between runs"
                compared += 1
    return True, f"{compared} file pairs identical"


def criterion_9():
    """Counterexample search on (sx, sy) within 32 starts."""
    start = time.perf_counter()
    phi = counterexample_search(PAULI_X, PAULI_Y, seed=0, n_starts=32)
    elapsed = time.perf_counter() - start
    if phi is None:
        return False, f"no state found, {elapsed:.2f}s"
    r = bound_suite(PAULI_X, PAULI_Y, phi)
    _, _, corr, comm = _oracle_moments(SX, SY, phi.vec)
    ok = 2 * abs(corr.real) >= 0.9 and r.m12a >= 0.9 and elapsed < 5.0
    return ok, f"m12a={r.m12a:.6f}, |<[A,B]>|={abs(comm):.1e}, {elapsed:.2f}s"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9]


def _run(fn):
    ok, detail = fn()
    line = f"{fn.__name__.replace('_', ' ')}: {'PASS' if ok else 'FAIL'}  {fn.__doc__.strip()}  [{detail}]"
    RESULTS[fn.__name__] = line
    print(line)
    return ok, line


@pytest.mark.parametrize("fn", CRITERIA, ids=[f.__name__ for f in CRITERIA])
def test_criterion(fn):
    ok, line = _run(fn)
    assert ok, line


def test_pair_scale_is_positive():
    # every scaled tolerance above divides by this
    assert pair_scale(PAULI_X, PAULI_Y) == 2.0


if __name__ == "__main__":
    outcomes = [_run(fn)[0] for fn in CRITERIA]
    sys.exit(0 if all(outcomes) else 1)
