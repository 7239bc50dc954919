import numpy as np
import pytest

from helpers import SINGLE_KINDS, crandn, lower_pair, random_general, random_spec
from steinkit import EquationSpec, auxiliary_stein, build_auxiliary_general, general_solution, solve_general_n
from steinkit.analysis import check_uniqueness, degrees_of_freedom, lifted_full_rank, to_lifted
from steinkit.equations import apply_operator, equation_residual
from steinkit.errors import DimensionError
from steinkit.genstein import solve_general_n_via_auxiliary


def same_family(spec, F, G, tol=1e-8):
    """True when two affine families describe the same solution set."""
    if F.dof_real != G.dof_real:
        return False
    if not F.basis:
        return np.allclose(F.particular, G.particular, atol=tol)
    V = np.column_stack([to_lifted(spec, E) for E in F.basis])
    W = np.column_stack([to_lifted(spec, E) for E in G.basis])
    d = to_lifted(spec, G.particular - F.particular)
    for target in [d] + list(W.T):
        coef, *_ = np.linalg.lstsq(V, target, rcond=None)
        if np.linalg.norm(V @ coef - target) > tol:
            return False
    return True


@pytest.mark.parametrize("kind", SINGLE_KINDS)
def test_single_term_reduction(kind, rng):
    for _ in range(5):
        spec = random_spec(rng, kind, *rng.integers(1, 4, size=2))
        a = general_solution(spec)
        b = solve_general_n(spec.as_general())
        assert same_family(spec, a, b)


def test_zero_padding_matches_single_term(rng):
    spec = random_spec(rng, "conjugate", 3, 2, rho=0.5)
    padded = EquationSpec.general(
        "conjugate", [spec.A[0], np.zeros((3, 3))], [spec.B[0], np.zeros((2, 2))], spec.C
    )
    X = solve_general_n(padded).particular
    assert np.allclose(X, general_solution(spec).particular, atol=1e-12)


@pytest.mark.parametrize("kind", SINGLE_KINDS)
def test_auxiliary_reduces_for_one_term(kind, rng):
    spec = random_spec(rng, kind, 2, 3)
    gen = build_auxiliary_general(spec.as_general())
    single = auxiliary_stein(spec)
    assert len(gen.terms) == 1 and gen.f == "identity"
    W = crandn(rng, 2, 3)
    assert np.allclose(apply_operator(gen, W), apply_operator(single, W), atol=1e-12)
    assert np.allclose(gen.C, single.C)


def test_auxiliary_identity_coefficients(rng):
    C = crandn(rng, 2, 2)
    I = np.eye(2)
    aux = build_auxiliary_general(EquationSpec.general("transpose", [I, I], [I, I], C))
    assert len(aux.terms) == 4
    assert np.allclose(aux.C, 2 * C.T + C)
    W = crandn(rng, 2, 2)
    assert np.allclose(apply_operator(aux, W), 4 * W)


@pytest.mark.parametrize("f", ["identity", "transpose", "conjugate", "hermitian"])
def test_auxiliary_is_operator_squared(f, rng):
    spec = random_general(rng, f, 2, 3, terms=3)
    aux = build_auxiliary_general(spec)
    assert len(aux.terms) == 9 and aux.shape == spec.shape
    W = crandn(rng, 2, 3)
    assert np.allclose(apply_operator(aux, W), apply_operator(spec, apply_operator(spec, W)), atol=1e-11)


@pytest.mark.parametrize("f", ["transpose", "conjugate", "hermitian"])
def test_original_solution_solves_auxiliary(f, rng):
    for _ in range(10):
        spec = random_general(rng, f, 2, 2, terms=3)
        X = solve_general_n(spec).particular
        assert equation_residual(build_auxiliary_general(spec), X) <= 1e-10


def test_transpose_three_terms_lift(rng):
    for _ in range(10):
        spec = random_general(rng, "transpose", 2, 2, terms=3)
        direct = solve_general_n(spec)
        assert equation_residual(spec, direct.particular) <= 1e-9
        via_aux = solve_general_n_via_auxiliary(spec)
        assert same_family(spec, direct, via_aux)


@pytest.mark.parametrize("f", ["transpose", "conjugate", "hermitian"])
def test_lift_on_degenerate_general_specs(f, rng):
    I = np.eye(2, dtype=complex)
    X0 = crandn(rng, 2, 2)
    spec = EquationSpec.general(f, [I / 2, I / 2], [I, I], np.zeros((2, 2)))
    spec = spec.with_C(X0 - apply_operator(spec, X0))
    direct = solve_general_n(spec, tol=1e-9)
    assert direct.dof_real == degrees_of_freedom(spec, tol=1e-9) > 0
    assert same_family(spec, direct, solve_general_n_via_auxiliary(spec, tol=1e-9))


def degenerate_generals(rng, f):
    """``X = f(X) / 2 + f(X) / 2 + C`` has a singular lifted system."""
    I = np.eye(2, dtype=complex)
    return [EquationSpec.general(f, [I / 2, I / 2], [I, I], crandn(rng, 2, 2)) for _ in range(3)]


@pytest.mark.parametrize("f", ["conjugate", "hermitian"])
def test_uniqueness_transfer_iff(f, rng):
    specs = [random_general(rng, f, *rng.integers(1, 3, size=2), terms=int(rng.integers(1, 4))) for _ in range(100)]
    specs += degenerate_generals(rng, f)
    verdicts = set()
    for spec in specs:
        exact, sufficient = check_uniqueness(spec)
        assert exact == lifted_full_rank(spec)
        assert sufficient == lifted_full_rank(build_auxiliary_general(spec))
        assert exact == sufficient
        verdicts.add(exact)
    assert False in verdicts and True in verdicts


def test_uniqueness_transfer_transpose_one_way(rng):
    specs = [random_general(rng, "transpose", *rng.integers(1, 3, size=2), terms=2) for _ in range(100)]
    A, B = lower_pair(-1)
    gap = EquationSpec.general("transpose", [A, np.zeros((2, 2))], [B, np.zeros((2, 2))], np.eye(2))
    specs.append(gap)
    for spec in specs:
        exact, sufficient = check_uniqueness(spec)
        if sufficient:
            assert exact
    assert check_uniqueness(gap) == (True, False)


def test_general_dimension_rules(rng):
    EquationSpec.general("transpose", [crandn(rng, 2, 3)], [crandn(rng, 2, 3)], crandn(rng, 2, 3))
    with pytest.raises(DimensionError):
        EquationSpec.general("transpose", [crandn(rng, 2, 2)], [crandn(rng, 3, 3)], crandn(rng, 2, 3))
    with pytest.raises(DimensionError):
        EquationSpec.general("conjugate", [crandn(rng, 2, 3)], [crandn(rng, 2, 3)], crandn(rng, 2, 3))
    with pytest.raises(DimensionError):
        EquationSpec.general("conjugate", [np.eye(2), np.eye(2)], [np.eye(3)], crandn(rng, 2, 3))
    with pytest.raises(ValueError):
        EquationSpec.general("inverse", [np.eye(2)], [np.eye(2)], np.eye(2))
