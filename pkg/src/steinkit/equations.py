"""The equation family ``X = sum_i A_i f(X) B_i + C`` and its coefficient checks."""

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError
from .matcore import F_KINDS, apply_f, as_matrix

__all__ = ["KINDS", "EquationSpec", "apply_operator", "equation_residual"]

KINDS = ("standard", "transpose", "conjugate", "hermitian", "general")

_KIND_TO_F = {
    "standard": "identity",
    "transpose": "transpose",
    "conjugate": "conjugate",
    "hermitian": "hermitian",
}
_ALIASES = {"generalN": "general", "general-n": "general", "general_n": "general"}


@dataclass(frozen=True, eq=False)
class EquationSpec:
    """Coefficients of ``X = sum_i A[i] f(X) B[i] + C``.

    Single-term kinds (``standard``, ``transpose``, ``conjugate``,
    ``hermitian``) carry one-element ``A`` and ``B`` tuples and fix `f`.  The
    ``general`` kind takes ``N + 1`` terms and an explicit `f`.

    Shapes: for f in {identity, conjugate} every ``A[i]`` is ``m x m`` and
    every ``B[i]`` is ``n x n``; for f in {transpose, hermitian} every
    coefficient is ``m x n``.  ``C`` is ``m x n`` in both cases.
    """

    kind: str
    A: tuple
    B: tuple
    C: np.ndarray
    f: str = None

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        if kind not in KINDS:
            raise ValueError(f"unknown equation kind {self.kind!r}")
        A, B = self.A, self.B
        if kind == "general":
            if self.f not in F_KINDS:
                raise ValueError(f"general equations need f in {F_KINDS}, got {self.f!r}")
            f = self.f
            A = [as_matrix(a, f"A[{i}]") for i, a in enumerate(A)]
            B = [as_matrix(b, f"B[{i}]") for i, b in enumerate(B)]
            if len(A) != len(B) or not A:
                raise DimensionError("A and B lists must have equal, nonzero length")
        else:
            f = _KIND_TO_F[kind]
            if self.f not in (None, f):
                raise ValueError(f"kind {kind!r} implies f={f!r}, got {self.f!r}")
            if isinstance(A, (list, tuple)) and len(A) == 1 and np.ndim(A[0]) == 2:
                A = A[0]
            if isinstance(B, (list, tuple)) and len(B) == 1 and np.ndim(B[0]) == 2:
                B = B[0]
            A, B = [as_matrix(A, "A")], [as_matrix(B, "B")]
        C = as_matrix(self.C, "C")
        m, n = C.shape
        for i, (a, b) in enumerate(zip(A, B)):
            if f in ("identity", "conjugate"):
                want_a, want_b = (m, m), (n, n)
            else:
                want_a = want_b = (m, n)
            if a.shape != want_a or b.shape != want_b:
                raise DimensionError(
                    f"term {i}: with C {m}x{n} and f={f} expected A {want_a} and B {want_b}, "
                    f"got {a.shape} and {b.shape}"
                )
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "A", tuple(A))
        object.__setattr__(self, "B", tuple(B))
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "f", f)

    @classmethod
    def general(cls, f, A_list, B_list, C):
        return cls("general", tuple(A_list), tuple(B_list), C, f)

    @property
    def shape(self):
        return self.C.shape

    @property
    def m(self):
        return self.C.shape[0]

    @property
    def n(self):
        return self.C.shape[1]

    @property
    def terms(self):
        return list(zip(self.A, self.B))

    @property
    def real_lift(self):
        """True when the equation is only real-linear (conjugating f)."""
        return self.f in ("conjugate", "hermitian")

    def with_C(self, C):
        return EquationSpec(self.kind, self.A, self.B, C, self.f)

    def as_general(self):
        return EquationSpec("general", self.A, self.B, self.C, self.f)


def apply_operator(spec, X):
    """``sum_i A[i] f(X) B[i]``: the linear part of the right-hand side."""
    X = np.asarray(X)
    if X.shape != spec.shape:
        raise DimensionError(f"X has shape {X.shape}, equation needs {spec.shape}")
    fX = apply_f(X, spec.f)
    out = np.zeros(spec.shape, dtype=np.complex128)
    for a, b in spec.terms:
        out += a @ fX @ b
    return out


def equation_residual(spec, X):
    """Relative residual ``||X - L(X) - C||_F / (1 + ||C||_F)``."""
    R = X - apply_operator(spec, X) - spec.C
    return float(np.linalg.norm(R) / (1.0 + np.linalg.norm(spec.C)))
