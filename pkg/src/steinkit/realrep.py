"""Real representations of complex matrices.

For ``A = A1 + i A2`` with real ``A1, A2``:

* ``sigma(A) = [[A1, A2], [A2, -A1]]``
* ``phi_rep(A) = [[A1, -A2], [A2, A1]]``
* ``phi_vec(A) = [vec(A1); vec(A2)]``

All three are returned as real ``float64`` arrays.
"""

import numpy as np

from .errors import DimensionError, NonRealInput
from .matcore import as_matrix, unvec, vec

__all__ = [
    "sigma",
    "phi_rep",
    "z_matrix",
    "phi_vec",
    "phi_vec_inverse",
    "q_matrix",
    "reconstruct_from_sigma",
    "stacked_p",
]


def sigma(A):
    A = np.asarray(A)
    A1, A2 = A.real, A.imag
    return np.block([[A1, A2], [A2, -A1]])


def phi_rep(A):
    A = np.asarray(A)
    A1, A2 = A.real, A.imag
    return np.block([[A1, -A2], [A2, A1]])


def z_matrix(n):
    """Unitary ``Z_n = (sqrt(2)/2) [[iI, I], [I, iI]]``.

    ``phi_rep(A) == Z_m^H @ blkdiag(conj(A), A) @ Z_n``, equivalently
    ``Z_m @ blkdiag(A, conj(A)) @ Z_n^H``.
    """
    I = np.eye(n)
    return (np.sqrt(2) / 2) * np.block([[1j * I, I], [I, 1j * I]])


def phi_vec(X):
    X = np.asarray(X)
    return np.concatenate([vec(X.real), vec(X.imag)]).astype(float)


def phi_vec_inverse(c, m, n):
    c = np.asarray(c)
    if c.ndim != 1 or c.size != 2 * m * n:
        raise DimensionError(f"expected a real vector of length {2 * m * n}, got {c.shape}")
    if np.iscomplexobj(c):
        if np.any(np.abs(c.imag) > 1e-12):
            raise NonRealInput("phi_vec_inverse needs a real vector")
        c = c.real
    k = m * n
    return unvec(c[:k], m, n) + 1j * unvec(c[k:], m, n)


def q_matrix(s):
    if s < 1:
        raise DimensionError("q_matrix needs s >= 1")
    I = np.eye(s)
    Z = np.zeros((s, s))
    return np.block([[Z, I], [-I, Z]])


def stacked_p(P):
    """Block-diagonal ``diag(P, P)``: acts on ``phi_vec`` the way `P` acts on ``vec``."""
    Z = np.zeros_like(P)
    return np.block([[P, Z], [Z, P]])


def reconstruct_from_sigma(Y, m, n):
    """Complex ``m x n`` matrix encoded by a real ``2m x 2n`` matrix.

    `Y` is first projected onto sigma-images by ``(Y + Q_m Y Q_n) / 2``; on an
    exact sigma-image this is a no-op and the original matrix is returned.
    """
    Y = as_matrix(Y, "Y")
    if Y.shape != (2 * m, 2 * n):
        raise DimensionError(f"expected a {2 * m}x{2 * n} matrix, got {Y.shape}")
    if np.any(np.abs(Y.imag) > 1e-12):
        raise NonRealInput("reconstruct_from_sigma needs a real matrix")
    Y = Y.real
    sym = Y + q_matrix(m) @ Y @ q_matrix(n)
    left = np.hstack([np.eye(m), 1j * np.eye(m)])
    right = np.vstack([np.eye(n), 1j * np.eye(n)])
    return 0.25 * (left @ sym @ right)
