"""States, observables and their first and second moments."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .constants import EXPECTATION_IMAG_TOL, HERMITIAN_TOL, IDENTITY_TOL, NORM_TOL
from .linalg import (
    DimensionError,
    NotHermitianError,
    as_matrix,
    _vdot,
    as_vector,
    is_hermitian,
    opnorm,
)

__all__ = [
    "InternalConsistencyError",
    "StateVector",
    "Observable",
    "MomentReport",
    "CorrelationReport",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "identity",
    "builtin_observable",
    "as_state",
    "as_observable",
    "pair_scale",
    "expectation",
    "deviation_apply",
    "moments",
    "variance_by_moments",
    "commutator",
    "correlation",
]


class InternalConsistencyError(ArithmeticError):
    """A mathematical identity that must hold was violated beyond tolerance."""


@dataclass(frozen=True, eq=False)
class StateVector:
    """Unit-norm complex vector |phi>."""

    vec: np.ndarray

    def __post_init__(self):
        v = as_vector(self.vec).copy()
        n = np.linalg.norm(v)
        if abs(n - 1.0) > NORM_TOL:
            raise ValueError(f"state vector must have unit norm, got {n!r}")
        v.setflags(write=False)
        object.__setattr__(self, "vec", v)

    @classmethod
    def from_unnormalized(cls, v) -> "StateVector":
        v = as_vector(v)
        return cls(v / np.linalg.norm(v))

    @property
    def dim(self) -> int:
        return self.vec.shape[0]


@dataclass(frozen=True, eq=False)
class Observable:
    """Hermitian matrix."""

    mat: np.ndarray

    def __post_init__(self):
        m = as_matrix(self.mat).copy()
        if not is_hermitian(m, HERMITIAN_TOL):
            raise NotHermitianError("observable matrix is not Hermitian")
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    @cached_property
    def norm(self) -> float:
        return opnorm(self.mat)

    def __add__(self, other: "Observable") -> "Observable":
        _same_dim(self, other)
        return Observable(self.mat + other.mat)

    def __sub__(self, other: "Observable") -> "Observable":
        _same_dim(self, other)
        return Observable(self.mat - other.mat)

    def __neg__(self) -> "Observable":
        return Observable(-self.mat)

    def __mul__(self, c: float) -> "Observable":
        return Observable(float(c) * self.mat)

    __rmul__ = __mul__


@dataclass(frozen=True)
class MomentReport:
    mean: float
    variance: float
    std_dev: float


@dataclass(frozen=True)
class CorrelationReport:
    """<phi| dA dB |phi> split into parts, with <[A,B]>_phi alongside."""

    corr: complex
    re_part: float
    im_part: float
    commutator_expectation: complex


PAULI_X = Observable(np.array([[0, 1], [1, 0]], dtype=complex))
PAULI_Y = Observable(np.array([[0, -1j], [1j, 0]], dtype=complex))
PAULI_Z = Observable(np.array([[1, 0], [0, -1]], dtype=complex))


def identity(dim: int) -> Observable:
    return Observable(np.eye(dim, dtype=complex))


_BUILTINS = {"pauli_x": PAULI_X, "pauli_y": PAULI_Y, "pauli_z": PAULI_Z}
_IDENTITY_RE = re.compile(r"^identity\((\d+)\)$")


def builtin_observable(name: str) -> Observable:
    """Resolve ``pauli_x``, ``pauli_y``, ``pauli_z`` or ``identity(d)``."""
    key = name.strip().lower()
    if key in _BUILTINS:
        return _BUILTINS[key]
    m = _IDENTITY_RE.match(key)
    if m and int(m.group(1)) >= 1:
        return identity(int(m.group(1)))
    raise KeyError(f"unknown built-in observable {name!r}")


def as_state(phi) -> StateVector:
    return phi if isinstance(phi, StateVector) else StateVector(phi)


def as_observable(f) -> Observable:
    if isinstance(f, Observable):
        return f
    if isinstance(f, str):
        return builtin_observable(f)
    return Observable(f)


def _same_dim(a, b) -> None:
    if a.dim != b.dim:
        raise DimensionError(f"dimension mismatch: {a.dim} vs {b.dim}")


def pair_scale(A, B) -> float:
    """Tolerance scale 1 + ||A|| ||B|| (induced infinity norms)."""
    return 1.0 + as_observable(A).norm * as_observable(B).norm


def expectation(F, phi) -> float:
    """<phi|F|phi>, which must be real for Hermitian F."""
    F, phi = as_observable(F), as_state(phi)
    _same_dim(F, phi)
    val = _vdot(phi.vec, F.mat @ phi.vec)
    if abs(val.imag) > EXPECTATION_IMAG_TOL * (1.0 + F.norm):
        raise InternalConsistencyError(f"expectation has imaginary residue {val.imag:.3e}")
    return val.real


def deviation_apply(F, phi) -> np.ndarray:
    """(F - <F> I)|phi>; orthogonal to |phi>."""
    F, phi = as_observable(F), as_state(phi)
    _same_dim(F, phi)
    return F.mat @ phi.vec - expectation(F, phi) * phi.vec


def moments(F, phi) -> MomentReport:
    """Mean, variance and standard deviation of ``F`` in ``phi``.

    The variance is the squared norm of the deviation vector, which stays
    accurate near eigenstates where <F^2> - <F>^2 cancels. The subtraction
    form is available as :func:`variance_by_moments` for cross-checks.
    """
    F, phi = as_observable(F), as_state(phi)
    _same_dim(F, phi)
    mean = expectation(F, phi)
    dev = F.mat @ phi.vec - mean * phi.vec
    var = float(np.vdot(dev, dev).real)
    return MomentReport(mean=mean, variance=var, std_dev=float(np.sqrt(var)))


def variance_by_moments(F, phi) -> float:
    """<F^2> - <F>^2."""
    F, phi = as_observable(F), as_state(phi)
    _same_dim(F, phi)
    fphi = F.mat @ phi.vec
    second = float(np.vdot(fphi, fphi).real)
    return second - expectation(F, phi) ** 2


def commutator(A, B) -> np.ndarray:
    """AB - BA (anti-Hermitian)."""
    A, B = as_observable(A), as_observable(B)
    _same_dim(A, B)
    return A.mat @ B.mat - B.mat @ A.mat


def correlation(A, B, phi) -> CorrelationReport:
    """Mixed deviation correlation <dA phi | dB phi>.

    Also evaluates <[A,B]>_phi directly and checks that it equals
    ``2i * Im(corr)``; a mismatch raises :class:`InternalConsistencyError`.
    """
    A, B, phi = as_observable(A), as_observable(B), as_state(phi)
    _same_dim(A, B)
    _same_dim(A, phi)
    corr = _vdot(deviation_apply(A, phi), deviation_apply(B, phi))
    comm = _vdot(phi.vec, commutator(A, B) @ phi.vec)
    tol = IDENTITY_TOL * pair_scale(A, B)
    if abs(comm.real) > tol or abs(comm - 2j * corr.imag) > tol:
        raise InternalConsistencyError(
            f"<[A,B]> = {comm} does not match 2i*Im<dA dB> = {2j * corr.imag}"
        )
    return CorrelationReport(
        corr=corr, re_part=corr.real, im_part=corr.imag, commutator_expectation=comm
    )
