"""Closed-form unique solutions and parameterized general solutions."""

from dataclasses import dataclass, field

import numpy as np

from .analysis import (
    DEFAULT_TOL,
    auxiliary_stein,
    check_solvability,
    check_uniqueness,
    lift_to_linear_system,
    lifted_cutoff,
    to_lifted,
    unlift,
)
from .equations import apply_operator
from .errors import NotSolvable, NotUnique, SingularDenominator
from .spectral import char_poly_reversed, poly_eval_matrix, solve_linear_general

__all__ = [
    "GeneralSolution",
    "stein_numerator",
    "stein_denominator",
    "solve_stein_closed",
    "solve_unique",
    "general_solution",
    "lift_general_solution",
]

# denominator is singular when sigma_min <= this times max(sigma_max, term scale)
DENOMINATOR_TOL = 1e-12


@dataclass
class GeneralSolution:
    """Affine family ``particular + sum_i t_i * basis[i]``.

    `parameter_field` is ``"complex"`` when the ``t_i`` range over the complex
    numbers and ``"real"`` when they must be real.  Basis matrices are
    orthonormal for the (real part of the) Frobenius inner product.
    """

    particular: np.ndarray
    basis: list = field(default_factory=list)
    parameter_field: str = "complex"

    @property
    def dof_real(self):
        k = len(self.basis)
        return 2 * k if self.parameter_field == "complex" else k

    def sample(self, params):
        params = np.asarray(params).reshape(-1)
        if params.size != len(self.basis):
            raise ValueError(f"need {len(self.basis)} parameters, got {params.size}")
        if self.parameter_field == "real" and np.any(np.imag(params) != 0):
            raise ValueError("this family takes real parameters")
        X = np.array(self.particular, dtype=np.complex128)
        for t, E in zip(params, self.basis):
            X = X + t * E
        return X


def _powers(M, k):
    out = [np.eye(M.shape[0], dtype=np.complex128)]
    for _ in range(k):
        out.append(out[-1] @ M)
    return out


def stein_numerator(A, B, C):
    """``sum_{k=1..m} sum_{s=1..k} alpha_k A^(k-s) C B^(m-s)`` for ``X = AXB + C``.

    ``alpha`` are the coefficients of ``det(sI - A)``.
    """
    alpha = char_poly_reversed(A).alpha
    m = A.shape[0]
    Ap, Bp = _powers(A, m), _powers(B, m)
    N = np.zeros(C.shape, dtype=np.complex128)
    for k in range(1, m + 1):
        if alpha[k] == 0:
            continue
        for s in range(1, k + 1):
            N += alpha[k] * (Ap[k - s] @ C @ Bp[m - s])
    return N


def stein_denominator(A, B):
    """``det(I - sA)`` evaluated at ``s = B``."""
    return poly_eval_matrix(char_poly_reversed(A), B, reversed=True)


def _denominator_scale(A, B):
    """``sum_k |alpha_k| ||B||^(m-k)``: size of the terms summed into the denominator."""
    alpha = char_poly_reversed(A).alpha
    m = A.shape[0]
    nb = np.linalg.norm(B, 2)
    return float(sum(abs(alpha[k]) * nb ** (m - k) for k in range(m + 1)))


def solve_stein_closed(A, B, C):
    """Unique solution of ``X = A X B + C`` as numerator times inverse denominator.

    Raises
    ------
    SingularDenominator
        When the denominator is numerically singular, which happens exactly
        when the equation lacks a unique solution.
    """
    A, B, C = (np.asarray(M, dtype=np.complex128) for M in (A, B, C))
    D = stein_denominator(A, B)
    s = np.linalg.svd(D, compute_uv=False)
    if s[-1] <= DENOMINATOR_TOL * max(s[0], _denominator_scale(A, B)):
        raise SingularDenominator("denominator polynomial is singular at B")
    N = stein_numerator(A, B, C)
    return np.linalg.solve(D.T, N.T).T


def _solve_lifted(spec):
    M, r = lift_to_linear_system(spec)
    return unlift(spec, np.linalg.solve(M, r))


def solve_unique(spec, method="auto", tol=DEFAULT_TOL):
    """The unique solution of `spec`.

    method
        ``"closed"`` evaluates the characteristic-polynomial formula on the
        auxiliary standard equation, ``"lifted"`` solves the vectorized linear
        system, ``"auto"`` picks closed form when it applies.
    """
    exact, sufficient = check_uniqueness(spec)
    if not exact:
        if check_solvability(spec, tol):
            raise NotUnique(f"{spec.kind} equation has infinitely many solutions")
        raise NotSolvable(f"{spec.kind} equation has no solution")
    if method == "auto":
        method = "closed" if spec.kind != "general" and sufficient else "lifted"
    if method == "lifted":
        return _solve_lifted(spec)
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    if spec.kind == "general":
        raise ValueError("no closed form for general N-term equations; use method='lifted'")
    if spec.kind == "standard":
        return solve_stein_closed(spec.A[0], spec.B[0], spec.C)
    aux = auxiliary_stein(spec)
    return solve_stein_closed(aux.A[0], aux.B[0], aux.C)


def _orthonormal_family(spec, mats, tol):
    """Orthonormal basis (in lifted coordinates) of the span of `mats`."""
    if not mats:
        return []
    V = np.column_stack([to_lifted(spec, E) for E in mats])
    U, s, _ = np.linalg.svd(V, full_matrices=False)
    if s[0] == 0:
        return []
    k = int(np.sum(s > tol * max(1.0, s[0])))
    return [unlift(spec, U[:, i]) for i in range(k)]


def general_solution(spec, tol=DEFAULT_TOL):
    """Particular solution plus a basis of the homogeneous solutions.

    Raises
    ------
    NotSolvable
        If the equation has no solution.
    """
    M, r = lift_to_linear_system(spec)
    sol = solve_linear_general(M, r, tol, scale=lifted_cutoff(M, 1.0))
    return GeneralSolution(
        particular=unlift(spec, sol.particular),
        basis=[unlift(spec, v) for v in sol.nullspace_basis],
        parameter_field="real" if spec.real_lift else "complex",
    )


def lift_general_solution(W_general, spec, tol=DEFAULT_TOL):
    """Map the general solution of ``auxiliary_stein(spec)`` onto that of `spec`.

    The particular solution goes through ``X = (W + L(W) + C) / 2`` and each
    direction through ``E -> (E + L(E)) / 2``, where ``L`` is the linear part
    of `spec`.  The image of the auxiliary null space can be smaller than the
    null space itself, so dependent directions are dropped.
    """
    Wp = W_general.particular
    Xp = 0.5 * (Wp + apply_operator(spec, Wp) + spec.C)
    dirs = list(W_general.basis)
    if spec.real_lift and W_general.parameter_field == "complex":
        dirs = dirs + [1j * E for E in dirs]
    images = [0.5 * (E + apply_operator(spec, E)) for E in dirs]
    return GeneralSolution(
        particular=Xp,
        basis=_orthonormal_family(spec, images, tol),
        parameter_field="real" if spec.real_lift else "complex",
    )
