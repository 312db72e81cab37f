"""Small dense complex linear algebra.

Vectors are 1-D complex ndarrays and matrices are square 2-D complex ndarrays.
The inner product is conjugate-linear in its first (bra) argument, so
``inner(u, v)`` reads as <u|v>.
"""

from __future__ import annotations

import numpy as np

from .constants import HERMITIAN_TOL, NORM_TOL

__all__ = [
    "DimensionError",
    "DegenerateDirectionError",
    "NotHermitianError",
    "as_vector",
    "as_matrix",
    "inner",
    "apply",
    "norm",
    "normalize",
    "project_orthogonal",
    "is_hermitian",
    "hermitian_eigensystem",
    "jacobi_eigensystem",
    "opnorm",
]


class DimensionError(ValueError):
    """Operands have incompatible dimensions."""


class DegenerateDirectionError(ValueError):
    """A (near-)zero vector cannot be normalized."""


class NotHermitianError(ValueError):
    """A matrix expected to be Hermitian is not."""


def as_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1 or v.size == 0:
        raise DimensionError(f"expected a non-empty 1-D vector, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError("vector has non-finite entries")
    return v


def as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    return m


def _check_dims(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[0] != b.shape[0]:
        raise DimensionError(f"dimension mismatch: {a.shape[0]} vs {b.shape[0]}")


def _vdot(u: np.ndarray, v: np.ndarray) -> complex:
    # unchecked <u|v> for already-validated arrays
    return complex(np.vdot(u, v))


def inner(u, v) -> complex:
    """<u|v>, conjugating ``u``."""
    u, v = as_vector(u), as_vector(v)
    _check_dims(u, v)
    return complex(np.vdot(u, v))


def apply(m, v) -> np.ndarray:
    m, v = as_matrix(m), as_vector(v)
    _check_dims(m, v)
    return m @ v


def norm(v) -> float:
    return float(np.linalg.norm(as_vector(v)))


def normalize(v, tol: float = NORM_TOL) -> np.ndarray:
    v = as_vector(v)
    n = np.linalg.norm(v)
    if n <= tol:
        raise DegenerateDirectionError(f"cannot normalize vector of norm {n:.3e}")
    return v / n


def project_orthogonal(v, phi) -> np.ndarray:
    """Component of ``v`` orthogonal to the unit vector ``phi``: v - <phi|v> phi."""
    v, phi = as_vector(v), as_vector(phi)
    _check_dims(v, phi)
    return v - np.vdot(phi, v) * phi


def opnorm(m) -> float:
    """Induced infinity norm (max absolute row sum)."""
    return float(np.linalg.norm(as_matrix(m), np.inf))


def is_hermitian(m, tol: float = HERMITIAN_TOL) -> bool:
    """True iff max|M - M^H| <= tol * (1 + max|M|)."""
    if tol < 0:
        raise ValueError("tol must be non-negative")
    m = as_matrix(m)
    asym = np.max(np.abs(m - m.conj().T))
    return bool(asym <= tol * (1.0 + np.max(np.abs(m))))


def _sort_eigenpairs(w: np.ndarray, vecs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    order = np.argsort(w, kind="stable")
    return w[order], vecs[:, order]


def jacobi_eigensystem(m, tol: float = HERMITIAN_TOL, max_sweeps: int = 60):
    """Cyclic complex Jacobi eigensolver for a Hermitian matrix.

    Each rotation first removes the phase of the pivot ``a_pq`` with a
    diagonal unitary and then applies the real symmetric Jacobi rotation.
    Sweeps stop once the off-diagonal Frobenius mass drops below machine
    precision relative to ``||M||_F``.

    Returns ``(eigenvalues, eigenvectors)`` with eigenvectors as columns,
    eigenvalues ascending.
    """
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        raise NotHermitianError("jacobi_eigensystem requires a Hermitian matrix")
    a = 0.5 * (m + m.conj().T)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    target = np.finfo(float).eps * scale

    for _ in range(max_sweeps):
        off = np.linalg.norm(a[~np.eye(n, dtype=bool)])
        if off <= target:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= target * 1e-3:
                    continue
                phase = apq / r
                tau = (a[q, q].real - a[p, p].real) / (2.0 * r)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                # G = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                g = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                v[:, idx] = v[:, idx] @ g
                a[p, q] = a[q, p] = 0.0
    else:
        raise RuntimeError("Jacobi iteration did not converge")

    return _sort_eigenpairs(np.real(np.diag(a)).copy(), v)


def hermitian_eigensystem(m, tol: float = HERMITIAN_TOL, method: str = "lapack"):
    """Eigen-decomposition of a Hermitian matrix.

    Parameters
    ----------
    m : array_like
        Square Hermitian matrix.
    tol : float
        Relative hermiticity tolerance, see :func:`is_hermitian`.
    method : {"lapack", "jacobi"}
        ``"lapack"`` uses :func:`numpy.linalg.eigh`; ``"jacobi"`` uses the
        in-package cyclic Jacobi solver.

    Returns
    -------
    eigenvalues : ndarray of float, ascending
    eigenvectors : ndarray, shape (d, d)
        Orthonormal eigenvectors as columns, ``eigenvectors[:, k]`` pairs with
        ``eigenvalues[k]``. Bases inside degenerate eigenspaces are not
        canonicalized.
    """
    m = as_matrix(m)
    if not is_hermitian(m, tol):
        raise NotHermitianError("hermitian_eigensystem requires a Hermitian matrix")
    if method == "jacobi":
        return jacobi_eigensystem(m, tol)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver method {method!r}")
    w, vecs = np.linalg.eigh(0.5 * (m + m.conj().T))
    return _sort_eigenpairs(w, vecs)
