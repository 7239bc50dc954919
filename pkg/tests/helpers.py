import numpy as np

from steinkit import EquationSpec
from steinkit.analysis import rho_product
from steinkit.equations import apply_operator

SINGLE_KINDS = ("standard", "transpose", "conjugate", "hermitian")


def crandn(rng, *shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2)


def coeff_shapes(kind, m, n):
    if kind in ("standard", "conjugate", "identity"):
        return (m, m), (n, n)
    return (m, n), (m, n)


def random_spec(rng, kind, m, n, rho=None):
    """Random single-term spec, optionally rescaled so rho_product == rho."""
    sa, sb = coeff_shapes(kind, m, n)
    spec = EquationSpec(kind, crandn(rng, *sa), crandn(rng, *sb), crandn(rng, m, n))
    if rho is None:
        return spec
    cur = rho_product(spec)
    # conjugate products are quadratic in A
    factor = np.sqrt(rho / cur) if kind == "conjugate" else rho / cur
    return EquationSpec(kind, spec.A[0] * factor, spec.B[0], spec.C)


def random_general(rng, f, m, n, terms):
    sa, sb = coeff_shapes(f, m, n)
    A = [crandn(rng, *sa) for _ in range(terms)]
    B = [crandn(rng, *sb) for _ in range(terms)]
    return EquationSpec.general(f, A, B, crandn(rng, m, n))


def brute_lifted(spec):
    """System matrix of X - L(X) = C assembled column by column from L on a basis.

    Complex-linear kinds use unit matrices over C and vec coordinates; the
    real-linear kinds use the 2mn real directions E and iE with coordinates
    (Re vec, Im vec).
    """
    m, n = spec.shape
    real = spec.f in ("conjugate", "hermitian")
    cols = []
    for k in range(m * n):
        E = np.zeros(m * n, dtype=complex)
        E[k] = 1
        E = E.reshape((m, n), order="F")
        for d in ((E, 1j * E) if real else (E,)):
            Y = d - apply_operator(spec, d)
            v = Y.reshape(-1, order="F")
            cols.append(np.concatenate([v.real, v.imag]) if real else v)
    M = np.column_stack(cols)
    if real:
        # reorder columns to (all real parts, all imaginary parts)
        M = np.concatenate([M[:, 0::2], M[:, 1::2]], axis=1)
    return M


def brute_nullity_real(spec, tol=1e-9):
    M = brute_lifted(spec)
    s = np.linalg.svd(M, compute_uv=False)
    null = M.shape[1] - int(np.sum(s > tol * max(1.0, s[0])))
    return null if spec.f in ("conjugate", "hermitian") else 2 * null


def lifted_direct_solve(spec):
    """Unique solution by a dense solve of the brute-force lifted system."""
    m, n = spec.shape
    M = brute_lifted(spec)
    c = spec.C.reshape(-1, order="F")
    if spec.f in ("conjugate", "hermitian"):
        x = np.linalg.solve(M, np.concatenate([c.real, c.imag]))
        v = x[: m * n] + 1j * x[m * n :]
    else:
        v = np.linalg.solve(M, c)
    return v.reshape((m, n), order="F")


def rel_err(X, Y):
    return np.linalg.norm(X - Y) / max(1.0, np.linalg.norm(Y))


def lower_pair(alpha):
    A = np.array([[2, 0], [1, alpha]], dtype=complex)
    return A, np.eye(2, dtype=complex)


HERM3_A = np.array([[1, 1 + 1j, 1], [-2, 1j, -1j], [1 - 1j, 0, -1]])
HERM3_B = np.array([[1j, 1, -1], [0, 1j, 2 + 1j], [1 + 1j, 3, -1j]])
HERM3_C = np.array(
    [
        [-5 + 1j, -4 - 1j, -5 - 12j],
        [2 - 1j, -4 - 2j, 6 + 8j],
        [1 + 3j, 15 - 5j, -4 - 5j],
    ]
)
HERM3_X = np.array([[1 + 3j, -2, 0], [1, 2 - 1j, 1], [-2, 2, 2 + 1j]])


def conj_diag_spec(c1=1.0, c2=1 - 1j):
    return EquationSpec(
        "conjugate",
        np.diag([2, 1j]),
        np.array([[1.0]]),
        np.array([[c1], [c2]], dtype=complex),
    )


def conj_diag_family(c1, c2, t1, t2):
    """Two-parameter symbolic family, collapsed to t1 + t2 after lifting."""
    return np.array(
        [[-(c1 + 2 * np.conj(c1)) / 3], [0.5 * (1 + 1j) * (t1 + t2) + 0.5 * c2]]
    )


def dominant_mode(rng, size, rho, tail=0.05):
    """Matrix with spectrum {rho, tail, ...} in a random orthonormal basis."""
    Q, _ = np.linalg.qr(rng.standard_normal((size, size)))
    d = np.full(size, tail)
    d[0] = rho
    return Q @ np.diag(d) @ Q.T
