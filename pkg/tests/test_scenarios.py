import numpy as np
import pytest

from conftest import E0, EQUATOR, SX, SY, equator
from uncertainty_bounds.bounds import m12a_rhs
from uncertainty_bounds.sampler import gue_observable, stream
from uncertainty_bounds.scenarios import (
    CommutingPairError,
    counterexample_scenario,
    counterexample_search,
    eigenstate_scenario,
)
from uncertainty_bounds.state import PAULI_X, PAULI_Y, PAULI_Z, Observable, identity


@pytest.mark.parametrize("index", [0, 1])
def test_eigenstate_pauli_xz(index):
    res = eigenstate_scenario(PAULI_X, PAULI_Z, index)
    assert res.verdict
    assert len(res.checks) == 8
    by_label = {c.label[:2]: c for c in res.checks}
    assert by_label["c6"].computed == pytest.approx(0.5, abs=1e-15)
    assert by_label["c5"].computed == pytest.approx(1.0, abs=1e-15)
    assert res.values["delta_a_positive"] == 1.0
    assert "(dA)^2 >= 0" in res.summary


@pytest.mark.parametrize("index", [0, 1])
def test_eigenstate_generic_qubit(index):
    A = PAULI_X + 2 * PAULI_Y
    res = eigenstate_scenario(A, PAULI_Z, index)
    assert res.verdict
    # 2x2 brute force: psi_b is a basis vector, dA^2 = |a01|^2 = 1 + 4
    assert res.values["var_a"] == pytest.approx(5.0, abs=1e-12)
    assert res.values["mp2"] == pytest.approx(2.5, abs=1e-12)


@pytest.mark.parametrize("d", [2, 3, 5, 8])
def test_eigenstate_random_pairs(d):
    for i in range(8):
        rng = stream(300 + d, i)
        A, B = gue_observable(d, rng), gue_observable(d, rng)
        for k in range(d):
            res = eigenstate_scenario(A, B, k)
            assert res.verdict, res.render()


def test_eigenstate_degenerate_warning():
    B = Observable(np.diag([1.0, 1.0, -1.0]))
    A = Observable(np.array([[0, 0, 1], [0, 0, 1], [1, 1, 0]], dtype=complex))
    res = eigenstate_scenario(A, B, 1)
    assert res.verdict
    assert any("degenerate" in w for w in res.warnings)


def test_eigenstate_errors():
    with pytest.raises(CommutingPairError):
        eigenstate_scenario(PAULI_Z, 2 * PAULI_Z, 0)
    with pytest.raises(IndexError):
        eigenstate_scenario(PAULI_X, PAULI_Z, 2)


def test_counterexample_equator():
    res = counterexample_scenario(PAULI_X, PAULI_Y, EQUATOR)
    assert res.verdict
    assert res.values["m12a"] == pytest.approx(1.0, abs=1e-12)
    assert res.values["lhs_sum"] == pytest.approx(1.0, abs=1e-12)
    assert res.values["hr_rhs"] == pytest.approx(0.0, abs=1e-12)


def test_counterexample_rejections():
    assert not counterexample_scenario(PAULI_X, PAULI_Y, E0).verdict
    assert not counterexample_scenario(PAULI_X, PAULI_Z, E0).verdict
    res = counterexample_scenario(PAULI_X, PAULI_X, EQUATOR)
    assert not res.verdict
    assert not res.checks[0].passed


def _m12a_oracle(A, B, phi):
    a = np.vdot(phi, A @ phi).real
    b = np.vdot(phi, B @ phi).real
    return 2 * abs((np.vdot(phi, A @ B @ phi) - a * b).real)


def test_equatorial_family_matches_closed_form():
    for theta in np.linspace(0, 2 * np.pi, 721):
        phi = equator(theta)
        expected = abs(np.sin(2 * theta))
        assert _m12a_oracle(SX, SY, phi) == pytest.approx(expected, abs=1e-9)
        assert m12a_rhs(PAULI_X, PAULI_Y, phi) == pytest.approx(expected, abs=1e-9)


def _grid_max(A, B):
    # brute-force maximum of m12a over the great circle (1, e^{i t})/sqrt(2)
    # and the meridian (cos t, sin t), restricted to <[A,B]> = 0
    best = 0.0
    for t in np.linspace(0, 2 * np.pi, 4001):
        for phi in (equator(t), np.array([np.cos(t), np.sin(t)], dtype=complex)):
            c = np.vdot(phi, (A @ B - B @ A) @ phi)
            if abs(c) <= 1e-3:
                best = max(best, _m12a_oracle(A, B, phi))
    return best


@pytest.mark.parametrize("B", [PAULI_Y, PAULI_Z], ids=["xy", "xz"])
def test_search_qubit_pairs(B):
    oracle = _grid_max(SX, B.mat)
    assert oracle == pytest.approx(1.0, abs=1e-5)
    phi = counterexample_search(PAULI_X, B, seed=0)
    assert phi is not None
    assert m12a_rhs(PAULI_X, B, phi) >= 0.9
    assert counterexample_scenario(PAULI_X, B, phi).verdict


def test_search_is_deterministic():
    a = counterexample_search(PAULI_X, PAULI_Y, seed=11)
    b = counterexample_search(PAULI_X, PAULI_Y, seed=11)
    np.testing.assert_array_equal(a.vec, b.vec)


@pytest.mark.parametrize("seed", range(4))
def test_search_random_dim4_self_consistent(seed):
    rng = stream(400, seed)
    A, B = gue_observable(4, rng), gue_observable(4, rng)
    phi = counterexample_search(A, B, seed=seed, n_starts=8)
    if phi is not None:
        assert counterexample_scenario(A, B, phi).verdict


def test_search_rejects_commuting_pair():
    with pytest.raises(CommutingPairError):
        counterexample_search(PAULI_Z, identity(2))


def test_render_lists_every_check():
    text = eigenstate_scenario(PAULI_X, PAULI_Z, 1).render()
    assert text.splitlines()[0] == "scenario eigenstate: PASS"
    assert sum(1 for line in text.splitlines() if line.strip().startswith("[ok")) == 8
