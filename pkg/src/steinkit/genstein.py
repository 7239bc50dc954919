"""Equations with several terms, ``X = sum_{i=0..N} A_i f(X) B_i + C``."""

from .closedform import general_solution, lift_general_solution
from .equations import EquationSpec, apply_operator

__all__ = ["build_auxiliary_general", "solve_general_n", "solve_general_n_via_auxiliary"]


def build_auxiliary_general(spec):
    """Identity-f equation with ``(N + 1)^2`` terms from applying the map twice.

    ``W = sum_i A_i (sum_k f(A_k f(W) B_k)) B_i + sum_i A_i f(C) B_i + C``.
    The inner ``f(A_k f(W) B_k)`` is linear in `W` with coefficients

    * transpose: ``B_k^T W A_k^T``
    * conjugate: ``conj(A_k) W conj(B_k)``
    * hermitian: ``B_k^H W A_k^H``
    * identity:  ``A_k W B_k``
    """
    if spec.kind != "general":
        spec = spec.as_general()
    A_aux, B_aux = [], []
    for ai, bi in spec.terms:
        for ak, bk in spec.terms:
            if spec.f == "transpose":
                left, right = bk.T, ak.T
            elif spec.f == "conjugate":
                left, right = ak.conj(), bk.conj()
            elif spec.f == "hermitian":
                left, right = bk.conj().T, ak.conj().T
            else:
                left, right = ak, bk
            A_aux.append(ai @ left)
            B_aux.append(right @ bi)
    C_aux = apply_operator(spec, spec.C) + spec.C
    return EquationSpec.general("identity", A_aux, B_aux, C_aux)


def solve_general_n(spec, tol=1e-10):
    """General solution of an N-term equation through its lifted linear system."""
    return general_solution(spec, tol)


def solve_general_n_via_auxiliary(spec, tol=1e-10):
    """Same family, computed by solving the auxiliary equation and mapping back."""
    aux = build_auxiliary_general(spec)
    return lift_general_solution(general_solution(aux, tol), spec, tol)
