"""Small dense complex matrix helpers for 2x2 and 4x4 work.

Matrices are plain ``numpy`` complex arrays. Everything returned from this
module is marked read-only so values can be shared freely between callers
and threads.
"""

from __future__ import annotations

import numpy as np

__all__ = [
    "PAULI",
    "IDENTITY2",
    "SIGMA_X",
    "SIGMA_Y",
    "SIGMA_Z",
    "as_matrix",
    "tensor",
    "dagger",
    "is_hermitian",
    "hermiticity_residual",
    "eigenvalues_hermitian",
    "eigenvalues_general",
]


def as_matrix(data) -> np.ndarray:
    """Return ``data`` as a read-only 2-D complex128 array.

    Raises ``ValueError`` for non 2-D input or non-finite entries.
    """
    m = np.array(data, dtype=np.complex128)
    if m.ndim != 2 or m.size == 0:
        raise ValueError(f"expected a non-empty 2-D matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix contains NaN or Inf entries")
    m.flags.writeable = False
    return m


IDENTITY2 = as_matrix(np.eye(2))
SIGMA_X = as_matrix([[0, 1], [1, 0]])
SIGMA_Y = as_matrix([[0, -1j], [1j, 0]])
SIGMA_Z = as_matrix([[1, 0], [0, -1]])
PAULI = (IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z)


def tensor(a, b) -> np.ndarray:
    """Kronecker product; entry ``(i*b.rows + k, j*b.cols + l)`` is ``a[i,j]*b[k,l]``."""
    return as_matrix(np.kron(as_matrix(a), as_matrix(b)))


def dagger(a) -> np.ndarray:
    """Conjugate transpose."""
    return as_matrix(as_matrix(a).conj().T)


def _require_square(a: np.ndarray) -> None:
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")


def hermiticity_residual(a) -> float:
    """Largest ``|a[i,j] - conj(a[j,i])|``."""
    a = as_matrix(a)
    _require_square(a)
    return float(np.max(np.abs(a - a.conj().T)))


def is_hermitian(a, tol: float = 1e-12) -> bool:
    return hermiticity_residual(a) <= tol


def eigenvalues_hermitian(a, tol: float = 1e-10) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted in descending order.

    The input must be Hermitian within ``tol``; otherwise ``ValueError``.
    """
    a = as_matrix(a)
    _require_square(a)
    if hermiticity_residual(a) > tol:
        raise ValueError("eigenvalues_hermitian called on a non-Hermitian matrix")
    # symmetrise so LAPACK sees exactly Hermitian input
    h = 0.5 * (a + a.conj().T)
    w = np.linalg.eigvalsh(h)[::-1].copy()
    w.flags.writeable = False
    return w


def eigenvalues_general(a) -> np.ndarray:
    """All eigenvalues of a general 4x4 matrix as complex numbers.

    Sorted by descending real part. Imaginary parts are left in place so the
    caller can judge whether discarding them is legitimate.
    """
    a = as_matrix(a)
    if a.shape != (4, 4):
        raise ValueError(f"eigenvalues_general expects a 4x4 matrix, got {a.shape}")
    w = np.linalg.eigvals(a)
    w = w[np.argsort(-w.real, kind="stable")]
    w.flags.writeable = False
    return w
