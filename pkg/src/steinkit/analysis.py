"""Solvability, uniqueness, degrees of freedom and convergence verdicts.

Every equation ``X = sum_i A_i f(X) B_i + C`` is equivalent to a square
linear system ``M x = r``.  For ``f`` in {identity, transpose} the unknown is
``x = vec(X)`` over the complex numbers; for the conjugating maps the equation
is only real-linear and the unknown is ``x = phi_vec(X)`` in ``R^(2mn)``.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .equations import EquationSpec, apply_operator
from .errors import NotSolvable
from .matcore import commutation_matrix, kron, vec
from .realrep import phi_vec, sigma, stacked_p
from .spectral import eigenvalues, rank, singular_values, spectral_radius

__all__ = [
    "EquationSpec",
    "AnalysisReport",
    "DEFAULT_TOL",
    "UNIQUE_TOL",
    "lifted_operator",
    "lift_to_linear_system",
    "unlift",
    "to_lifted",
    "check_solvability",
    "check_uniqueness",
    "lifted_full_rank",
    "lifted_cutoff",
    "sigma_uniqueness",
    "degrees_of_freedom",
    "rho_product",
    "convergence_precheck",
    "auxiliary_stein",
    "analyze",
]

DEFAULT_TOL = 1e-10
# |eta*gamma - 1| at or below this flags a non-unique solution
UNIQUE_TOL = 1e-10


@dataclass
class AnalysisReport:
    kind: str
    solvable: bool
    unique_exact: Optional[bool]
    unique_sufficient: bool
    dof_real: Optional[int]
    rho_product: float
    converges: Optional[bool]
    predicted_rate: Optional[float]
    lifted_dim: int

    def as_dict(self):
        return dict(self.__dict__)


def lifted_operator(spec):
    """Matrix `K` of ``X -> sum_i A_i f(X) B_i`` in lifted coordinates."""
    m, n = spec.shape
    P = commutation_matrix(m, n) if spec.f in ("transpose", "hermitian") else None
    K = None
    for a, b in spec.terms:
        E = kron(b.T, a)
        if spec.real_lift:
            E = sigma(E)
        K = E if K is None else K + E
    if P is not None:
        K = K @ (stacked_p(P) if spec.real_lift else P)
    return K


def lift_to_linear_system(spec):
    """Return ``(M, r)`` with solutions of ``M x = r`` in bijection with solutions of `spec`."""
    K = lifted_operator(spec)
    M = np.eye(K.shape[0]) - K
    r = phi_vec(spec.C) if spec.real_lift else vec(spec.C)
    return M, r


def to_lifted(spec, X):
    return phi_vec(X) if spec.real_lift else vec(np.asarray(X, dtype=np.complex128))


def unlift(spec, x):
    from .realrep import phi_vec_inverse
    from .matcore import unvec

    m, n = spec.shape
    if spec.real_lift:
        return phi_vec_inverse(np.real(x), m, n)
    return unvec(np.asarray(x, dtype=np.complex128), m, n)


def lifted_cutoff(M, tol=DEFAULT_TOL):
    """Singular values of a lifted ``M = I - K`` at or below this count as zero.

    The scale is ``max(1, sigma_max(M))``: the identity part fixes a floor, so
    an operator with ``K`` numerically equal to ``I`` reads as rank zero.
    """
    s = singular_values(M)
    return tol * max(1.0, s[0] if s.size else 0.0)


def check_solvability(spec, tol=DEFAULT_TOL):
    """Rank test ``rank([M, r]) == rank(M)`` on the lifted system.

    `r` is first scaled by ``max(1, ||M||) / (1 + ||r||)``, which leaves both
    ranks unchanged in exact arithmetic.  Large right-hand sides are thereby
    judged relative to their size and tiny ones absolutely, the same mixed
    rule as ``||A A^+ b - b|| <= tol (1 + ||b||)``.
    """
    M, r = lift_to_linear_system(spec)
    thr = lifted_cutoff(M, tol)
    r = r * (max(1.0, np.linalg.norm(M, 2)) / (1.0 + np.linalg.norm(r)))
    return rank(M, thr) == rank(np.column_stack([M, r]), thr)


def _no_unit_products(x, y, tol=UNIQUE_TOL):
    x = np.asarray(x).reshape(-1, 1)
    y = np.asarray(y).reshape(1, -1)
    return bool(np.all(np.abs(x * y - 1.0) > tol))


def _smaller_product(A, B):
    """Return whichever of ``A @ B`` and ``B @ A`` is smaller; nonzero spectra agree."""
    return A @ B if A.shape[0] <= B.shape[1] else B @ A


def lifted_full_rank(spec, tol=DEFAULT_TOL):
    M, _ = lift_to_linear_system(spec)
    return bool(singular_values(M)[-1] > lifted_cutoff(M, tol))


def check_uniqueness(spec):
    """Return ``(unique_exact, unique_sufficient)``.

    ``unique_exact`` is an if-and-only-if verdict for a unique solution for
    every right-hand side.  ``unique_sufficient`` is the condition under which
    the auxiliary standard equation has a unique solution; for the transpose
    kind it can be False while ``unique_exact`` is True.
    """
    kind = spec.kind
    if kind == "general":
        exact = lifted_full_rank(spec)
        sufficient = lifted_full_rank(auxiliary_stein(spec))
        return exact, sufficient
    A, B = spec.A[0], spec.B[0]
    if kind == "standard":
        exact = _no_unit_products(eigenvalues(A), eigenvalues(B))
        return exact, exact
    if kind == "transpose":
        upsilon = lifted_operator(spec)
        exact = bool(np.all(np.abs(eigenvalues(upsilon) - 1.0) > UNIQUE_TOL))
        lam = eigenvalues(_smaller_product(A, B.T))
        return exact, _no_unit_products(lam, lam)
    if kind == "conjugate":
        exact = _no_unit_products(eigenvalues(A @ A.conj()), eigenvalues(B.conj() @ B))
        return exact, exact
    lam = eigenvalues(_smaller_product(A, B.conj().T))
    exact = _no_unit_products(lam.conj(), lam)
    return exact, exact


def sigma_uniqueness(spec):
    """Uniqueness of the doubled real equation built from sigma representations.

    conjugate: ``Y = A_s Y B_s + C_s``, unique iff no product of eigenvalues
    of ``A_s`` and ``B_s`` equals one.  hermitian: ``Y = A_s Y^T B_s + C_s``,
    unique iff 1 is not an eigenvalue of ``(B_s^T kron A_s) P(2m, 2n)``.
    """
    A, B = spec.A[0], spec.B[0]
    As, Bs = sigma(A), sigma(B)
    if spec.kind == "conjugate":
        return _no_unit_products(eigenvalues(As), eigenvalues(Bs))
    if spec.kind == "hermitian":
        m, n = spec.shape
        lam = eigenvalues(kron(Bs.T, As) @ commutation_matrix(2 * m, 2 * n))
        return bool(np.all(np.abs(lam - 1.0) > UNIQUE_TOL))
    raise ValueError("sigma_uniqueness applies to conjugate and hermitian kinds")


def degrees_of_freedom(spec, tol=DEFAULT_TOL):
    """Number of free real parameters in the general solution.

    Complex-linear kinds report twice the complex nullity of the lifted system.
    For the single-term conjugate and hermitian kinds the count is
    ``mn - rank(I - G)`` with ``G = (conj(B) B)^T kron A conj(A)`` or
    ``G = (A^H B)^T kron A B^H``.
    """
    if not check_solvability(spec, tol):
        raise NotSolvable("degrees of freedom are defined for solvable equations only")
    m, n = spec.shape
    if spec.kind in ("conjugate", "hermitian"):
        A, B = spec.A[0], spec.B[0]
        if spec.kind == "conjugate":
            G = kron((B.conj() @ B).T, A @ A.conj())
        else:
            G = kron((A.conj().T @ B).T, A @ B.conj().T)
        N = np.eye(m * n) - G
        return m * n - rank(N, lifted_cutoff(N, tol))
    M, _ = lift_to_linear_system(spec)
    nullity = M.shape[1] - rank(M, lifted_cutoff(M, tol))
    return nullity if spec.real_lift else 2 * nullity


def rho_product(spec):
    """The spectral quantity whose size decides whether Smith iteration converges.

    standard ``rho(A) rho(B)``; transpose ``rho(B^T A)``; conjugate
    ``rho(A conj(A)) rho(conj(B) B)``; hermitian ``rho(B^H A)``.  For the
    general kind, the spectral radius of the lifted operator.
    """
    if spec.kind == "general":
        return spectral_radius(lifted_operator(spec))
    A, B = spec.A[0], spec.B[0]
    if spec.kind == "standard":
        return spectral_radius(A) * spectral_radius(B)
    if spec.kind == "transpose":
        return spectral_radius(_smaller_product(B.T, A))
    if spec.kind == "conjugate":
        return spectral_radius(A @ A.conj()) * spectral_radius(B.conj() @ B)
    return spectral_radius(_smaller_product(B.conj().T, A))


def convergence_precheck(spec):
    """Return ``(converges, predicted_rate)`` for plain Smith iteration.

    The rate is the asymptotic per-step exponent ``-ln(rho)``, ``inf`` when
    ``rho == 0``.  For the conjugate kind one Smith step is half a step of the
    auxiliary standard equation, so the per-step rate is
    ``-ln(rho(A conj(A)) rho(conj(B) B)) / 2``.
    """
    if spec.kind == "general":
        raise ValueError("no Smith convergence test for general N-term equations")
    rho = rho_product(spec)
    if rho >= 1.0:
        return False, None
    if rho == 0.0:
        return True, math.inf
    rate = -math.log(rho)
    if spec.kind == "conjugate":
        rate /= 2.0
    return True, rate


def auxiliary_stein(spec):
    """The same-size standard equation ``W = AA W BB + CC`` tied to `spec`.

    Applying the original map twice gives ``W = L(L(W)) + L(C) + C``:

    * transpose: ``W = A B^T W A^T B + A C^T B + C``
    * conjugate: ``W = A conj(A) W conj(B) B + A conj(C) B + C``
    * hermitian: ``W = A B^H W A^H B + A C^H B + C``
    * standard: ``W = A^2 W B^2 + A C B + C``

    General N-term equations give a general identity-f equation with
    ``(N + 1)^2`` terms.
    """
    if spec.kind == "general":
        from .genstein import build_auxiliary_general

        return build_auxiliary_general(spec)
    A, B, C = spec.A[0], spec.B[0], spec.C
    if spec.kind == "standard":
        AA, BB = A @ A, B @ B
    elif spec.kind == "transpose":
        AA, BB = A @ B.T, A.T @ B
    elif spec.kind == "conjugate":
        AA, BB = A @ A.conj(), B.conj() @ B
    else:
        AA, BB = A @ B.conj().T, A.conj().T @ B
    return EquationSpec("standard", AA, BB, apply_operator(spec, C) + C)


def analyze(spec, tol=DEFAULT_TOL):
    solvable = check_solvability(spec, tol)
    exact, sufficient = check_uniqueness(spec)
    rho = rho_product(spec)
    if spec.kind == "general":
        converges, rate = rho < 1.0, None
    else:
        converges, rate = convergence_precheck(spec)
    K = lifted_operator(spec)
    return AnalysisReport(
        kind=spec.kind,
        solvable=solvable,
        unique_exact=exact,
        unique_sufficient=sufficient,
        dof_real=degrees_of_freedom(spec, tol) if solvable else None,
        rho_product=rho,
        converges=converges,
        predicted_rate=rate,
        lifted_dim=K.shape[0],
    )
