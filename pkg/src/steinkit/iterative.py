"""Smith, Smith(l) and r-Smith fixed-point iterations.

All three run on the original equation for ``kind == "standard"``.  For the
transpose, conjugate and hermitian kinds two Smith steps collapse into one
step of the auxiliary standard equation ``W = AA W BB + CC`` (see
:func:`steinkit.analysis.auxiliary_stein`), which the accelerated variants
exploit.
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .analysis import auxiliary_stein, convergence_precheck, rho_product
from .equations import apply_operator, equation_residual
from .errors import DivergenceDetected, NoConvergence, PrecheckFailed

__all__ = [
    "SolveOptions",
    "IterationTrace",
    "residual",
    "empirical_rate",
    "smith",
    "smith_l",
    "r_smith",
]

DIVERGENCE_FACTOR = 1e6


@dataclass
class SolveOptions:
    tol: float = 1e-10
    max_iter: int = 10000
    l: int = 1
    r: int = 2
    x0: Optional[np.ndarray] = None
    precheck: bool = False
    rate_window: int = 10
    # called as callback(k, X_k) for every iterate, X_0 included
    callback: Optional[Callable] = None

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.l < 1:
            raise ValueError("l must be >= 1")
        if self.r < 2:
            raise ValueError("r must be >= 2")


@dataclass
class IterationTrace:
    """Outcome of one iteration run.

    ``residuals[k]`` is the relative residual of the k-th iterate, the first
    entry being the starting matrix, so ``steps == len(residuals)`` and
    `iterate` is the matrix whose residual is ``residuals[-1]``.
    """

    iterate: np.ndarray
    residuals: list = field(default_factory=list)
    steps: int = 0
    empirical_rate: Optional[float] = None
    predicted_rate: Optional[float] = None
    converged: bool = False
    method: str = "smith"


def residual(spec, X):
    """``||X - sum_i A_i f(X) B_i - C||_F / (1 + ||C||_F)``."""
    return equation_residual(spec, np.asarray(X))


def empirical_rate(residuals, window=10):
    """Mean of ``-ln(res[k+1] / res[k])`` over the last `window` steps."""
    res = [r for r in residuals]
    if len(res) < 2:
        return None
    w = min(window, len(res) - 1)
    lo, hi = res[-1 - w], res[-1]
    if lo <= 0 or hi <= 0:
        return None
    return (math.log(lo) - math.log(hi)) / w


def _run(spec, x0, step, opts, method, predicted):
    """Drive ``X <- step(X)`` until the residual drops below ``opts.tol``."""
    X = np.array(x0, dtype=np.complex128)
    residuals = []

    def trace(converged):
        return IterationTrace(
            iterate=X,
            residuals=residuals,
            steps=len(residuals),
            empirical_rate=empirical_rate(residuals, opts.rate_window),
            predicted_rate=predicted,
            converged=converged,
            method=method,
        )

    for k in range(opts.max_iter + 1):
        if opts.callback is not None:
            opts.callback(k, X)
        res = residual(spec, X)
        residuals.append(res)
        if not np.isfinite(res):
            raise DivergenceDetected(f"{method}: residual overflowed", trace(False))
        if res <= opts.tol:
            return trace(True)
        if res > DIVERGENCE_FACTOR * residuals[0]:
            raise DivergenceDetected(
                f"{method}: residual grew by more than {DIVERGENCE_FACTOR:g}x", trace(False)
            )
        if k == opts.max_iter:
            break
        X = step(X)
    raise NoConvergence(f"{method}: no convergence in {opts.max_iter} steps", trace(False))


def _check(spec, opts, force):
    if spec.kind == "general":
        raise ValueError("Smith iterations are defined for single-term equations")
    ok, rate = convergence_precheck(spec)
    if force and not ok:
        raise PrecheckFailed(
            f"rho = {rho_product(spec):.6g} >= 1: the iteration cannot converge for every start"
        )
    return rate


def smith(spec, opts=None):
    """Plain Smith iteration ``X <- sum A f(X) B + C`` started from ``opts.x0`` (default C)."""
    opts = opts or SolveOptions()
    rate = _check(spec, opts, opts.precheck)

    def step(X):
        return apply_operator(spec, X) + spec.C

    x0 = spec.C if opts.x0 is None else opts.x0
    return _run(spec, x0, step, opts, "smith", rate)


def _partial_sum(A, B, C, count):
    """``sum_{i<count} A^i C B^i``."""
    total = np.zeros(C.shape, dtype=np.complex128)
    term = np.array(C, dtype=np.complex128)
    for i in range(count):
        if i:
            term = A @ term @ B
        total += term
    return total


def smith_l(spec, opts=None):
    """Smith(l): ``l`` Smith steps fused into one update.

    Standard kind: ``Y <- A^l Y B^l + sum_{i<l} A^i C B^i``.  Other kinds use
    the auxiliary coefficients ``AA, BB, CC``: with ``l = 2j`` the update is
    ``Y <- AA^j Y BB^j + sum_{i<j} AA^i CC BB^i``, and an odd ``l`` prepends
    one plain Smith step.  ``l = 2`` is therefore exactly Smith iteration on
    the auxiliary equation.
    """
    opts = opts or SolveOptions()
    rate = _check(spec, opts, opts.precheck)
    l = opts.l
    if spec.kind == "standard":
        A, B, C = spec.A[0], spec.B[0], spec.C
        Al, Bl = np.linalg.matrix_power(A, l), np.linalg.matrix_power(B, l)
        S = _partial_sum(A, B, C, l)

        def step(X):
            return Al @ X @ Bl + S
    else:
        aux = auxiliary_stein(spec)
        j, odd = divmod(l, 2)
        Aj = np.linalg.matrix_power(aux.A[0], j)
        Bj = np.linalg.matrix_power(aux.B[0], j)
        S = _partial_sum(aux.A[0], aux.B[0], aux.C, j)

        def step(X):
            if odd:
                X = apply_operator(spec, X) + spec.C
            return Aj @ X @ Bj + S

    x0 = spec.C if opts.x0 is None else opts.x0
    return _run(spec, x0, step, opts, f"smith-l({l})", None if rate is None else l * rate)


def r_smith(spec, opts=None):
    """r-Smith: ``X <- sum_{i<r} A_k^i X B_k^i`` with ``A_{k+1} = A_k^r``.

    Starts from ``X_0 = C`` (``CC`` of the auxiliary equation for the non
    standard kinds), so after k steps ``X_k = sum_{i < r^k} A^i C B^i``.
    The convergence condition is always enforced.
    """
    opts = opts or SolveOptions()
    _check(spec, opts, force=True)
    eq = spec if spec.kind == "standard" else auxiliary_stein(spec)
    state = {"A": eq.A[0], "B": eq.B[0]}
    r = opts.r

    def step(X):
        Ak, Bk = state["A"], state["B"]
        total = np.array(X)
        term = X
        for _ in range(r - 1):
            term = Ak @ term @ Bk
            total = total + term
        state["A"] = np.linalg.matrix_power(Ak, r)
        state["B"] = np.linalg.matrix_power(Bk, r)
        return total

    return _run(spec, eq.C, step, opts, f"r-smith({r})", None)
