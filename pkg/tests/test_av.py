import numpy as np
import pytest
from hypothesis import given, settings

from conftest import E0, EQUATOR, instances
from uncertainty_bounds.av import av_decompose, av_reconstruct_residual
from uncertainty_bounds.state import PAULI_X, PAULI_Z, identity, pair_scale


def test_pauli_x_on_up():
    dec = av_decompose(PAULI_X, E0)
    assert dec.mean == 0 and dec.sigma == 1
    np.testing.assert_array_equal(dec.perp_state.vec, [0, 1])
    assert av_reconstruct_residual(PAULI_X, E0, dec) == 0


@pytest.mark.parametrize("F, psi, mean", [(PAULI_Z, E0, 1.0), (identity(2), EQUATOR, 1.0)])
def test_eigenstate_has_no_perpendicular(F, psi, mean):
    dec = av_decompose(F, psi)
    assert dec.perp_state is None and dec.is_eigenstate
    assert dec.mean == pytest.approx(mean, abs=1e-15)
    assert dec.sigma <= 1e-15
    assert av_reconstruct_residual(F, psi, dec) <= 1e-15


def test_eps_must_be_positive():
    with pytest.raises(ValueError):
        av_decompose(PAULI_X, E0, eps_eigen=0.0)


@settings(max_examples=400)
@given(instances)
def test_reconstruction_orthogonality_and_phase(inst):
    A, B, psi = inst
    for F in (A, A + B):
        dec = av_decompose(F, psi)
        assert av_reconstruct_residual(F, psi, dec) <= 1e-10 * (1 + F.norm)
        perp = dec.perp_state.vec
        assert abs(np.vdot(psi.vec, perp)) <= 1e-10
        assert abs(np.linalg.norm(perp) - 1) <= 1e-12
        # <perp|F|psi> is real, positive and equal to sigma
        elem = np.vdot(perp, F.mat @ psi.vec)
        assert abs(elem - dec.sigma) <= 1e-10 * pair_scale(A, B)
