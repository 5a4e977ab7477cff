import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from addax import algebra as alg
from addax import hpair as hp
from addax.corpus import random_chain_pair
from addax.linalg import Subspace, mat_vec
from addax.poly import homogeneous_degree, normalize_scalar
from addax.presentations import algebra_from_text, parse_poly
from addax.verify import equation_vanishes, same_up_to_scalar
from oracles import chain_equation_via_log, same_up_to_scalar_sympy


def pair(text, u, order="grlex"):
    A, cb = algebra_from_text(text, order=order)
    return hp.make_hpair(A, hp.parse_u(A, u, cb))


def zpoly(text, dim):
    return parse_poly(text, hp.coordinate_names(dim))


CHAIN_PAIRS = [(n, i) for n in range(2, 7) for i in range(2, n + 1)]


def test_worked_example():
    h = pair("Q[x]/(x^3)", "x")
    assert h.w_index == 2
    assert h.pi == (0, 0, 1)
    eq = hp.equation(h)
    assert eq.degree == 2
    assert eq.poly == zpoly("z0*z2 - 1/2*z1^2", 3)


def test_non_generating_u_is_rejected():
    with pytest.raises(hp.HPairError):
        pair("Q[x]/(x^4)", "x^2, x^3")


def test_u_outside_maximal_ideal_is_rejected():
    with pytest.raises(hp.HPairError):
        pair("Q[x]/(x^3)", "1 + x")


def test_wrong_codimension_is_rejected():
    with pytest.raises(hp.HPairError):
        pair("Q[x]/(x^4)", "x")


def test_two_variable_pair():
    h = pair("Q[x,y]/(x^2, y^2)", "x, y")
    assert h.algebra.basis_names[h.w_index] == "x*y"
    assert hp.equation(h).poly == zpoly("z0*z3 - z1*z2", 4)


@pytest.mark.parametrize("n", range(2, 7))
def test_degrees_of_canonical_pairs(n):
    assert hp.degree(hp.chain_hpair(n, n)) == n
    if n >= 3:
        assert hp.degree(hp.chain_hpair(n, n - 1)) == n - 1


def test_cubic_and_quartic_equations():
    assert hp.equation(hp.chain_hpair(3, 3)).poly == zpoly("z0^2*z3 - z0*z1*z2 + 1/3*z1^3", 4)
    quartic = hp.equation(hp.chain_hpair(4, 4)).poly
    # the sign of z0^2*z2^2 is negative; see test_acceptance for the printed table
    assert quartic == zpoly("z0^3*z4 - z0^2*z1*z3 - 1/2*z0^2*z2^2 + z0*z1^2*z2 - 1/4*z1^4", 5)


@pytest.mark.parametrize("n, i", CHAIN_PAIRS)
def test_equation_matches_log_series_oracle(n, i):
    F = hp.equation(hp.chain_hpair(n, i)).poly
    assert same_up_to_scalar_sympy(F, chain_equation_via_log(n, i))


@pytest.mark.parametrize("n, i", CHAIN_PAIRS)
def test_degree_is_homogeneous_degree(n, i):
    h = hp.chain_hpair(n, i)
    eq = hp.equation(h)
    assert homogeneous_degree(eq.poly) == eq.degree == hp.degree(h)
    w = tuple(int(k == 0) * (eq.degree - 1) + int(k == h.w_index) for k in range(h.algebra.dim))
    assert eq.poly.coefficient(w) == 1


def test_canonical_index_with_explicit_automorphism():
    A = alg.chain_algebra(3)
    h = hp.make_hpair(A, [[0, 1, 0, 1], [0, 0, 1, 0]])
    cn = hp.canonical_chain_index(h)
    assert cn.index == 3
    image = Subspace.span([mat_vec(cn.automorphism, u) for u in h.U.basis], 4)
    assert image == hp.chain_subspace(A, 3)
    M = cn.automorphism
    for a in range(4):
        for b in range(4):
            lhs = mat_vec(M, A.mul(A.basis(a), A.basis(b)))
            rhs = A.mul(mat_vec(M, A.basis(a)), mat_vec(M, A.basis(b)))
            assert tuple(lhs) == tuple(rhs)


def test_canonical_index_already_canonical():
    for n in range(2, 7):
        assert hp.canonical_chain_index(hp.chain_hpair(n, n)).index == n


def test_canonical_index_of_cli_example():
    h = pair("Q[x]/(x^6)", "x, x^2, x^4, x^5")
    v = hp.finite_orbits(h)
    assert v.finite is False
    assert v.certificate == "canonical index 3, requires i ∈ {4,5}"


automorphisms = st.integers(2, 6).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.integers(2, n),
        st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=n - 1, max_size=n - 1),
    )
)


@settings(max_examples=60, deadline=None)
@given(automorphisms)
def test_canonical_index_invariant_under_automorphisms(data):
    n, i, betas = data
    A = alg.chain_algebra(n)
    phi_x = (Fraction(0), Fraction(1)) + tuple(betas)
    images = alg.power_basis(A, phi_x)
    h = hp.make_hpair(A, [images[k] for k in range(1, n + 1) if k != i])
    assert hp.canonical_chain_index(h).index == i
    assert hp.finite_orbits(h).finite == (i >= n - 1)


def test_canonical_index_survives_basis_change():
    rng = random.Random(11)
    for _ in range(10):
        c = random_chain_pair(rng, max_n=5)
        assert hp.canonical_chain_index(c.pair).index == c.index


def test_finite_orbit_examples():
    assert hp.finite_orbits(hp.chain_hpair(4, 4)).finite
    assert hp.finite_orbits(hp.chain_hpair(4, 3)).finite
    assert not hp.finite_orbits(hp.chain_hpair(4, 2)).finite
    v = hp.finite_orbits(hp.dual_hpair_of_size(4))
    assert not v.finite and v.certificate == "socle dim 2"


def test_nondegeneracy_examples():
    assert hp.is_nondegenerate_algebraic(hp.chain_hpair(3, 3))
    assert not hp.is_nondegenerate_algebraic(hp.chain_hpair(3, 2))
    assert hp.is_nondegenerate_algebraic(pair("Q[x,y]/(x^2, y^2)", "x, y"))


def test_smoothness_examples():
    assert hp.is_smooth(hp.chain_hpair(2, 2))
    assert hp.is_smooth(pair("Q[x,y]/(x^2, y^2)", "x, y"))
    assert not hp.is_smooth(hp.chain_hpair(3, 3))
    assert not hp.is_smooth(hp.chain_hpair(3, 2))


def test_normality_examples():
    assert hp.is_normal(hp.chain_hpair(2, 2)).normal
    assert hp.is_normal(pair("Q[x,y]/(x^2, y^2)", "x, y")).normal
    v = hp.is_normal(hp.chain_hpair(4, 4))
    assert not v.normal
    assert normalize_scalar(v.witness) == zpoly("z1^2", 5)
    assert normalize_scalar(v.reduced_top) == zpoly("z1^3", 5)


@pytest.mark.parametrize("n, i", CHAIN_PAIRS)
def test_normality_conventions_agree(n, i):
    h = hp.chain_hpair(n, i)
    if hp.degree(h) >= 2:
        assert hp.is_normal(h).conventions_agree


@pytest.mark.parametrize("n", range(3, 7))
def test_kernel_of_degenerate_pair(n):
    h = hp.chain_hpair(n, n - 1)
    A = h.algebra
    assert hp.largest_ideal_within(h) == Subspace.span([A.basis(n)], A.dim)
    assert hp.largest_ideal_within(hp.chain_hpair(n, n)).dim == 0


@pytest.mark.parametrize("n", range(3, 7))
def test_reduce_by_kernel(n):
    h = hp.chain_hpair(n, n - 1)
    r = hp.reduce_by_kernel(h)
    assert r.algebra == alg.chain_algebra(n - 1)
    assert r.U == hp.chain_subspace(r.algebra, n - 1)
    # deleting the J coordinate (the last one) from F gives the reduced equation
    F = hp.equation(h).poly
    G = hp.equation(r).poly
    assert F.degree_in(n) == 0
    assert same_up_to_scalar(F, G.embed(F.gens, list(range(n))))


def test_reduce_rejects_nondegenerate():
    with pytest.raises(hp.HPairError):
        hp.reduce_by_kernel(hp.chain_hpair(4, 4))


def test_dual_of_n3():
    d = hp.dual_hpair(hp.chain_hpair(3, 2))
    B = d.algebra
    assert B.basis_names == ["1", "y", "y^2", "z"]
    assert d.U == Subspace.span([B.basis(1), B.basis(3)], 4)
    assert alg.socle(B).dim == 2


def test_dual_requires_index_n_minus_one():
    with pytest.raises(hp.HPairError):
        hp.dual_hpair(hp.chain_hpair(4, 4))


@pytest.mark.parametrize("n, i", CHAIN_PAIRS)
def test_vanishing_on_open_orbit(n, i):
    h = hp.chain_hpair(n, i)
    if h.algebra.dim <= 6:
        assert equation_vanishes(h)


def test_vanishing_for_other_algebras():
    assert equation_vanishes(pair("Q[x,y]/(x^2, y^2)", "x, y"))
    assert equation_vanishes(pair("Q[x,y]/(x*y, x^3, y^2 - x^2)", "x, y", "grlex-rev"))
    for n in range(3, 6):
        assert equation_vanishes(hp.dual_hpair_of_size(n))


def test_u_from_vectors_and_names():
    A = alg.chain_algebra(3)
    a = hp.parse_u(A, "[0,1,0,0]; [0,0,1,0]")
    b = hp.parse_u(A, "x, x^2")
    assert a == b
    with pytest.raises(hp.HPairError):
        hp.parse_u(A, "[0,1,0]")
