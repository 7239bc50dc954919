"""Dense complex matrices, column stacking, Kronecker and commutation matrices.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  :func:`as_matrix`
is the single validation gate: it coerces array-likes, promotes scalars and
vectors to 2-D and rejects non-finite entries.
"""

import numpy as np

from .errors import DimensionError

__all__ = [
    "F_KINDS",
    "as_matrix",
    "as_vector",
    "vec",
    "unvec",
    "kron",
    "commutation_matrix",
    "apply_f",
    "matmul",
    "add",
    "scale",
    "norm_fro",
]

F_KINDS = ("identity", "transpose", "conjugate", "hermitian")


def as_matrix(a, name="matrix"):
    """Return `a` as a finite 2-D complex128 array.

    Scalars become 1x1 matrices and 1-D input becomes a column.
    """
    arr = np.array(a, dtype=np.complex128)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    elif arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    elif arr.ndim != 2:
        raise DimensionError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.size == 0:
        raise DimensionError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def as_vector(v, name="vector"):
    arr = np.array(v, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite entries")
    return arr


def vec(X):
    """Stack the columns of `X` into one vector (column-major order)."""
    X = np.asarray(X)
    return X.reshape(-1, order="F").copy()


def unvec(v, m, n):
    v = np.asarray(v)
    if v.ndim != 1 or v.size != m * n:
        raise DimensionError(f"cannot unstack a length-{v.size} vector into {m}x{n}")
    return v.reshape((m, n), order="F").copy()


def kron(A, B):
    return np.kron(A, B)


def commutation_matrix(m, n):
    """Permutation `P` of order ``m*n`` with ``vec(X.T) == P @ vec(X)``.

    Built blockwise: block ``(i, j)`` of the ``m x n`` block grid is the
    transpose of the ``m x n`` elementary matrix with a one at ``(i, j)``.
    """
    if m < 1 or n < 1:
        raise DimensionError("commutation matrix needs m, n >= 1")
    P = np.zeros((m * n, m * n))
    for i in range(m):
        for j in range(n):
            # E_ij^T is n x m with a single one at (j, i)
            P[i * n + j, j * m + i] = 1.0
    return P


def apply_f(X, kind):
    """Apply one of the four maps ``identity``, ``transpose``, ``conjugate``,
    ``hermitian`` to `X`."""
    if kind == "identity":
        return X
    if kind == "transpose":
        return X.T
    if kind == "conjugate":
        return X.conj()
    if kind == "hermitian":
        return X.conj().T
    raise ValueError(f"unknown f kind {kind!r}")


def matmul(*mats):
    out = mats[0]
    for M in mats[1:]:
        if out.shape[1] != M.shape[0]:
            raise DimensionError(f"cannot multiply {out.shape} by {M.shape}")
        out = out @ M
    return out


def add(A, B):
    if A.shape != B.shape:
        raise DimensionError(f"cannot add {A.shape} and {B.shape}")
    return A + B


def scale(A, s):
    return s * A


def norm_fro(A):
    return float(np.linalg.norm(A, "fro")) if np.ndim(A) == 2 else float(np.linalg.norm(A))
