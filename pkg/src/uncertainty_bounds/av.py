"""Aharonov-Vaidman decomposition F|psi> = <F>|psi> + dF |psi_perp_F>."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constants import EPS_EIGEN
from .state import StateVector, as_observable, as_state, deviation_apply, moments

__all__ = ["AVDecomposition", "av_decompose", "av_reconstruct_residual"]


@dataclass(frozen=True)
class AVDecomposition:
    mean: float
    sigma: float
    perp_state: StateVector | None

    @property
    def is_eigenstate(self) -> bool:
        return self.perp_state is None


def av_decompose(F, psi, eps_eigen: float = EPS_EIGEN) -> AVDecomposition:
    """Split the action of ``F`` on ``psi`` into parallel and perpendicular parts.

    When the deviation ``sigma`` does not exceed ``eps_eigen`` the state is
    treated as an eigenstate and ``perp_state`` is ``None``. Otherwise
    ``perp_state`` is the deviation vector divided by ``sigma``, which fixes
    its phase so that <perp|dF psi> = sigma > 0.
    """
    if eps_eigen <= 0:
        raise ValueError("eps_eigen must be positive")
    F, psi = as_observable(F), as_state(psi)
    m = moments(F, psi)
    if m.std_dev <= eps_eigen:
        return AVDecomposition(mean=m.mean, sigma=m.std_dev, perp_state=None)
    dev = deviation_apply(F, psi)
    return AVDecomposition(
        mean=m.mean, sigma=m.std_dev, perp_state=StateVector.from_unnormalized(dev)
    )


def av_reconstruct_residual(F, psi, dec: AVDecomposition) -> float:
    """|| F psi - mean psi - sigma perp ||, with the last term dropped when absent."""
    F, psi = as_observable(F), as_state(psi)
    r = F.mat @ psi.vec - dec.mean * psi.vec
    if dec.perp_state is not None:
        r = r - dec.sigma * dec.perp_state.vec
    return float(np.linalg.norm(r))
