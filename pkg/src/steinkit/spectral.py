"""Spectra, ranks, generalized inverses and characteristic polynomials.

Eigenvalues, singular values and determinants come from LAPACK through
``numpy.linalg``; the threshold conventions used for numerical rank, the
pseudoinverse and null spaces are fixed here so that every solvability test
in the package counts singular values the same way.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, DimensionError, NonSquareError, NotSolvable, OrderTooLarge

__all__ = [
    "CharPoly",
    "GeneralLinearSolution",
    "eigenvalues",
    "spectral_radius",
    "singular_values",
    "rank_threshold",
    "rank",
    "pseudo_inverse",
    "nullspace",
    "solve_linear_general",
    "char_poly_reversed",
    "poly_eval_matrix",
    "det",
    "match_multisets",
]

MAX_CHARPOLY_ORDER = 64


def _square(A):
    A = np.asarray(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {A.shape}")
    return A


def eigenvalues(A):
    """Eigenvalues of a square matrix as a 1-D complex array (unordered)."""
    A = _square(A)
    try:
        return np.linalg.eigvals(A).astype(np.complex128)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc


def spectral_radius(A):
    lam = eigenvalues(A)
    return float(np.max(np.abs(lam))) if lam.size else 0.0


def singular_values(A):
    try:
        return np.linalg.svd(np.asarray(A), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc


def rank_threshold(A, tol=0.0, s=None):
    """Absolute cutoff below which singular values of `A` count as zero.

    ``tol == 0`` selects ``max(m, n) * eps * sigma_max``.
    """
    if tol < 0:
        raise ValueError("tol must be >= 0")
    if tol > 0:
        return tol
    if s is None:
        s = singular_values(A)
    smax = s[0] if s.size else 0.0
    return max(A.shape) * np.finfo(float).eps * smax


def rank(A, tol=0.0):
    A = np.asarray(A)
    s = singular_values(A)
    return int(np.sum(s > rank_threshold(A, tol, s)))


def _svd(A):
    try:
        return np.linalg.svd(np.asarray(A), full_matrices=True)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(str(exc)) from exc


def pseudo_inverse(A, tol=0.0):
    """Moore-Penrose pseudoinverse with the same cutoff as :func:`rank`."""
    A = np.asarray(A)
    U, s, Vh = _svd(A)
    k = int(np.sum(s > rank_threshold(A, tol, s)))
    Uk, sk, Vk = U[:, :k], s[:k], Vh[:k].conj().T
    return (Vk / sk) @ Uk.conj().T


def nullspace(A, tol=0.0):
    """Orthonormal basis of ker(A), one vector per column."""
    A = np.asarray(A)
    _, s, Vh = _svd(A)
    k = int(np.sum(s > rank_threshold(A, tol, s)))
    return Vh[k:].conj().T


@dataclass
class GeneralLinearSolution:
    """All solutions ``particular + sum(t_i * nullspace_basis[i])`` of a system."""

    particular: np.ndarray
    nullspace_basis: list = field(default_factory=list)
    tol_used: float = 0.0


def solve_linear_general(A, b, tol=1e-10, scale=None):
    """General solution of ``A x = b`` through the pseudoinverse.

    The system is declared consistent when
    ``||A A^+ b - b|| <= tol * (1 + ||b||)``.  Singular values at or below
    ``tol * scale`` are treated as zero; `scale` defaults to ``sigma_max``.

    Raises
    ------
    NotSolvable
        If `b` is not (numerically) in the range of `A`.
    """
    A = np.asarray(A)
    b = np.asarray(b).reshape(-1)
    if A.shape[0] != b.size:
        raise DimensionError(f"system has {A.shape[0]} rows but rhs has length {b.size}")
    U, s, Vh = _svd(A)
    if scale is None:
        scale = s[0] if s.size else 0.0
    cut = tol * scale
    k = int(np.sum(s > cut))
    Uk = U[:, :k]
    x = Vh[:k].conj().T @ ((Uk.conj().T @ b) / s[:k])
    gap = np.linalg.norm(Uk @ (Uk.conj().T @ b) - b)
    if gap > tol * (1.0 + np.linalg.norm(b)):
        raise NotSolvable(f"inconsistent linear system (range gap {gap:.3e})")
    basis = [Vh[i].conj() for i in range(k, A.shape[1])]
    return GeneralLinearSolution(particular=x, nullspace_basis=basis, tol_used=cut)


@dataclass(frozen=True)
class CharPoly:
    """Coefficients ``alpha[0..m]`` of ``det(sI - A) = sum(alpha[k] s^k)``.

    ``alpha[m]`` is 1.  The reversed polynomial ``det(I - sA)`` has the same
    coefficients read backwards.
    """

    alpha: np.ndarray

    @property
    def order(self):
        return len(self.alpha) - 1


def char_poly_reversed(A):
    """Characteristic polynomial coefficients by the Faddeev-LeVerrier recursion."""
    A = _square(A).astype(np.complex128)
    m = A.shape[0]
    if m > MAX_CHARPOLY_ORDER:
        raise OrderTooLarge(f"order {m} exceeds the recursion guard {MAX_CHARPOLY_ORDER}")
    alpha = np.zeros(m + 1, dtype=np.complex128)
    alpha[m] = 1.0
    I = np.eye(m, dtype=np.complex128)
    M = np.zeros_like(A)
    for k in range(1, m + 1):
        M = A @ M + alpha[m - k + 1] * I
        alpha[m - k] = -np.trace(A @ M) / k
    return CharPoly(alpha)


def poly_eval_matrix(p, M, reversed=True):
    """Evaluate a characteristic polynomial at a square matrix by Horner's rule.

    With ``reversed=True`` (default) this is ``det(I - sA)`` at ``s = M``,
    i.e. ``sum(alpha[k] M^(m-k))``; otherwise ``det(sI - A)`` at ``M``.
    """
    M = _square(M)
    coeffs = p.alpha if reversed else p.alpha[::-1]
    I = np.eye(M.shape[0], dtype=np.complex128)
    out = coeffs[0] * I
    for c in coeffs[1:]:
        out = out @ M + c * I
    return out


def det(A):
    return complex(np.linalg.det(_square(A)))


def match_multisets(x, y):
    """Largest distance in an optimal one-to-one pairing of two point sets."""
    from scipy.optimize import linear_sum_assignment

    x = np.asarray(x).reshape(-1)
    y = np.asarray(y).reshape(-1)
    if x.size != y.size:
        return np.inf
    if x.size == 0:
        return 0.0
    cost = np.abs(x[:, None] - y[None, :])
    r, c = linear_sum_assignment(cost)
    return float(cost[r, c].max())
