"""Product and sum-of-variances uncertainty bounds.

Bound catalogue (all for a pure state phi, Hermitian A and B):

``hr``
    dA dB >= |<[A,B]>| / 2.
``mp1`` (sign s = +1 or -1, any unit phi_perp orthogonal to phi)
    dA^2 + dB^2 >= s i <[A,B]> + |<phi|(A + s i B)|phi_perp>|^2.
    The overlap equals |<phi_perp|(A - s i B)|phi>|^2, so by Cauchy-Schwarz it
    is maximized by phi_perp along the part of (A - s i B)|phi> orthogonal to
    phi; :func:`mp1_optimal` uses that direction.
``mp2``
    dA^2 + dB^2 >= d(A+B)^2 / 2, equal to |<perp_{A+B}|(A+B)|phi>|^2 / 2 with
    the Aharonov-Vaidman perpendicular state of A+B.
``m12a``
    dA^2 + dB^2 >= 2 |Re <dA dB>|.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .av import av_decompose
from .constants import EPS_EIGEN, IDENTITY_TOL
from .linalg import DimensionError, _vdot, project_orthogonal
from .state import (
    InternalConsistencyError,
    StateVector,
    as_observable,
    as_state,
    commutator,
    correlation,
    moments,
    pair_scale,
)

__all__ = [
    "HRReport",
    "MP1Report",
    "MPSuiteReport",
    "hr_bound",
    "mp1_bound",
    "mp1_optimal",
    "mp2_bound",
    "mp2_matrix_element",
    "m12a_rhs",
    "bound_suite",
]

BOUND_NAMES = ("hr", "mp1_plus", "mp1_minus", "mp1_best", "mp2", "m12a")


@dataclass(frozen=True)
class HRReport:
    lhs_product: float
    rhs: float
    slack: float
    trivial: bool = False


@dataclass(frozen=True)
class MP1Report:
    sign: int
    perp_used: StateVector
    commutator_term: float
    overlap_term: float
    rhs: float
    degenerate: bool = False


@dataclass(frozen=True)
class MPSuiteReport:
    var_a: float
    var_b: float
    lhs_sum: float
    hr: HRReport
    mp1_plus: MP1Report
    mp1_minus: MP1Report
    mp1_best: float
    mp2: float
    mp2_matrix_element: float | None
    m12a: float
    max_bound: float
    self_referential: bool
    scale: float
    slacks: dict[str, float] = field(default_factory=dict)

    def min_scaled_slack(self) -> float:
        return min(self.slacks.values()) / self.scale

    def to_dict(self) -> dict:
        return {
            "var_a": self.var_a,
            "var_b": self.var_b,
            "lhs_sum": self.lhs_sum,
            "hr": {
                "lhs_product": self.hr.lhs_product,
                "rhs": self.hr.rhs,
                "slack": self.hr.slack,
                "trivial": self.hr.trivial,
            },
            "mp1_plus": self.mp1_plus.rhs,
            "mp1_minus": self.mp1_minus.rhs,
            "mp1_best": self.mp1_best,
            "mp2": self.mp2,
            "m12a": self.m12a,
            "max_bound": self.max_bound,
            "self_referential": self.self_referential,
            "slacks": dict(self.slacks),
            "scale": self.scale,
        }


def _prep(A, B, phi):
    A, B, phi = as_observable(A), as_observable(B), as_state(phi)
    if not (A.dim == B.dim == phi.dim):
        raise DimensionError(f"dimension mismatch: A {A.dim}, B {B.dim}, state {phi.dim}")
    return A, B, phi


def hr_bound(A, B, phi, eps_eigen: float = EPS_EIGEN) -> HRReport:
    A, B, phi = _prep(A, B, phi)
    lhs = moments(A, phi).std_dev * moments(B, phi).std_dev
    rhs = 0.5 * abs(_vdot(phi.vec, commutator(A, B) @ phi.vec))
    trivial = lhs <= eps_eigen * pair_scale(A, B)
    return HRReport(lhs_product=lhs, rhs=rhs, slack=lhs - rhs, trivial=trivial)


def _commutator_term(A, B, phi, sign: int) -> float:
    # s * i * <[A,B]> is real because <[A,B]> is purely imaginary
    z = sign * 1j * _vdot(phi.vec, commutator(A, B) @ phi.vec)
    if abs(z.imag) > IDENTITY_TOL * pair_scale(A, B):
        raise InternalConsistencyError(f"commutator expectation not imaginary: residue {z.imag:.3e}")
    return z.real


def _check_sign(sign: int) -> int:
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return int(sign)


def mp1_bound(A, B, phi, phi_perp, sign: int) -> MP1Report:
    """First sum bound evaluated at a caller-supplied orthogonal state."""
    A, B, phi = _prep(A, B, phi)
    sign = _check_sign(sign)
    phi_perp = as_state(phi_perp)
    if phi_perp.dim != phi.dim:
        raise DimensionError("phi_perp dimension mismatch")
    if abs(_vdot(phi.vec, phi_perp.vec)) > 1e-8:
        raise ValueError("phi_perp must be orthogonal to phi")
    ct = _commutator_term(A, B, phi, sign)
    op = A.mat + sign * 1j * B.mat
    overlap = abs(_vdot(phi.vec, op @ phi_perp.vec)) ** 2
    return MP1Report(sign=sign, perp_used=phi_perp, commutator_term=ct, overlap_term=overlap, rhs=ct + overlap)


def _any_orthogonal(phi: StateVector) -> StateVector:
    candidates = [project_orthogonal(e, phi.vec) for e in np.eye(phi.dim, dtype=complex)]
    best = max(candidates, key=np.linalg.norm)
    return StateVector.from_unnormalized(best)


def mp1_optimal(A, B, phi, sign: int, eps_eigen: float = EPS_EIGEN) -> MP1Report:
    """First sum bound at the orthogonal state that maximizes the overlap term."""
    A, B, phi = _prep(A, B, phi)
    sign = _check_sign(sign)
    if phi.dim < 2:
        raise DimensionError("the first sum bound needs dim >= 2 (no orthogonal complement)")
    w = project_orthogonal((A.mat - sign * 1j * B.mat) @ phi.vec, phi.vec)
    if np.linalg.norm(w) <= eps_eigen:
        ct = _commutator_term(A, B, phi, sign)
        return MP1Report(
            sign=sign, perp_used=_any_orthogonal(phi), commutator_term=ct,
            overlap_term=0.0, rhs=ct, degenerate=True,
        )
    return mp1_bound(A, B, phi, StateVector.from_unnormalized(w), sign)


def _sum_variance(A, B, phi) -> float:
    return moments(A + B, phi).variance


def mp2_matrix_element(A, B, phi, eps_eigen: float = EPS_EIGEN) -> float | None:
    """|<perp_{A+B}|(A+B)|phi>|^2 / 2, or ``None`` if phi is an eigenstate of A+B."""
    A, B, phi = _prep(A, B, phi)
    S = A + B
    dec = av_decompose(S, phi, eps_eigen)
    if dec.perp_state is None:
        return None
    return 0.5 * abs(_vdot(dec.perp_state.vec, S.mat @ phi.vec)) ** 2


def mp2_bound(A, B, phi, eps_eigen: float = EPS_EIGEN) -> float:
    """Second sum bound, d(A+B)^2 / 2.

    Cross-checked against the matrix-element form whenever A+B has a
    perpendicular direction at phi.
    """
    A, B, phi = _prep(A, B, phi)
    value = 0.5 * _sum_variance(A, B, phi)
    other = mp2_matrix_element(A, B, phi, eps_eigen)
    if other is not None and abs(value - other) > IDENTITY_TOL * pair_scale(A, B):
        raise InternalConsistencyError(f"second sum bound paths disagree: {value!r} vs {other!r}")
    return value


def m12a_rhs(A, B, phi) -> float:
    A, B, phi = _prep(A, B, phi)
    return 2.0 * abs(correlation(A, B, phi).re_part)


def bound_suite(A, B, phi, eps_eigen: float = EPS_EIGEN) -> MPSuiteReport:
    """Evaluate every bound at ``phi`` along with both sides and slacks.

    ``self_referential`` is set when ``phi`` is within ``eps_eigen * scale``
    of an eigenstate of A or B; every sum bound then reads
    dA^2 >= c dA^2 for some c <= 1.
    """
    A, B, phi = _prep(A, B, phi)
    scale = pair_scale(A, B)
    ma, mb = moments(A, phi), moments(B, phi)
    lhs = ma.variance + mb.variance
    hr = hr_bound(A, B, phi, eps_eigen)
    plus = mp1_optimal(A, B, phi, +1, eps_eigen)
    minus = mp1_optimal(A, B, phi, -1, eps_eigen)
    best = max(plus.rhs, minus.rhs)
    mp2 = mp2_bound(A, B, phi, eps_eigen)
    m12a = m12a_rhs(A, B, phi)
    slacks = {
        "hr": hr.slack,
        "mp1_plus": lhs - plus.rhs,
        "mp1_minus": lhs - minus.rhs,
        "mp1_best": lhs - best,
        "mp2": lhs - mp2,
        "m12a": lhs - m12a,
    }
    return MPSuiteReport(
        var_a=ma.variance,
        var_b=mb.variance,
        lhs_sum=lhs,
        hr=hr,
        mp1_plus=plus,
        mp1_minus=minus,
        mp1_best=best,
        mp2=mp2,
        mp2_matrix_element=mp2_matrix_element(A, B, phi, eps_eigen),
        m12a=m12a,
        max_bound=max(best, mp2),
        self_referential=min(ma.std_dev, mb.std_dev) <= eps_eigen * scale,
        scale=scale,
        slacks=slacks,
    )
