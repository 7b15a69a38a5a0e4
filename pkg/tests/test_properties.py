"""Randomized identities; the acceptance suite repeats the counted versions."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from ruledsymp import catalog, graded
from ruledsymp.algebra import (
    LaurentPoly,
    NotDivisible,
    StructuredRationalFunction,
    divide_exact,
    parse_poly,
    rational_series_equal,
    series_of_rational,
)

XY = ("x", "y")
ONE = LaurentPoly.const(1, XY)

exponents = st.tuples(st.integers(-4, 4), st.integers(-4, 4))
coefficients = st.fractions(min_value=-6, max_value=6, max_denominator=5)
laurent = st.lists(st.tuples(exponents, coefficients), max_size=6).map(lambda ts: LaurentPoly(ts, XY))
nonzero_monomial = exponents.filter(any)


@given(laurent, nonzero_monomial)
def test_divide_exact_inverts_multiplication(q, m):
    p = (ONE - LaurentPoly.monomial(m, XY)) * q
    assert divide_exact(p, m) == q


@given(laurent, nonzero_monomial)
def test_divide_exact_is_sound(p, m):
    try:
        q = divide_exact(p, m)
    except NotDivisible:
        return
    assert (ONE - LaurentPoly.monomial(m, XY)) * q == p


@given(laurent)
def test_render_parse_round_trip(p):
    assert parse_poly(str(p), XY) == p


@given(laurent, laurent, laurent)
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p - p == LaurentPoly.zero(XY)


@given(laurent, laurent, nonzero_monomial, nonzero_monomial)
def test_rational_function_addition(p, q, m1, m2):
    r = StructuredRationalFunction.build(p, [m1])
    s = StructuredRationalFunction.build(q, [m2, m1])
    assert ((r + s) - (s + r)).numerator.is_zero()
    assert (((r + s) - s) - r).numerator.is_zero()


@given(laurent, nonzero_monomial, nonzero_monomial)
def test_rational_function_expansion(p, m1, m2):
    num = p * (ONE - LaurentPoly.monomial(m1, XY)) * (ONE - LaurentPoly.monomial(m2, XY))
    assert StructuredRationalFunction.build(num, [m1, m2]).to_laurent() == p


T1 = ("t",)
univariate = st.lists(st.tuples(st.tuples(st.integers(0, 6)), st.integers(-4, 4)), max_size=4).map(
    lambda ts: LaurentPoly(ts, T1))


@given(univariate, univariate, st.sampled_from([1, -1, 2]), univariate)
def test_series_cross_multiplication(num, tail, lead, extra):
    den = LaurentPoly.const(lead, T1) + LaurentPoly({m: c for m, c in tail.terms.items() if m != (0,)}, T1)
    extra = LaurentPoly.const(1, T1) + LaurentPoly({m: c for m, c in extra.terms.items() if m != (0,)}, T1)
    assert series_of_rational(num, den, 15) == series_of_rational(num * extra, den * extra, 15)
    assert rational_series_equal(num, den, num * extra, den * extra)


XYZ = ("x", "y", "z")
trivariate = st.lists(st.tuples(st.tuples(*[st.integers(0, 4)] * 3), st.integers(-3, 3)), max_size=4).map(
    lambda ts: LaurentPoly(ts, XYZ))
RELATION = catalog.main2_ring(2).relations[0]


@given(trivariate, trivariate)
def test_reduce_mod_monic_normal_form(p, q):
    nf = lambda e: graded.reduce_mod_monic(e, RELATION, "z")  # noqa: E731
    assert nf(nf(p)) == nf(p)
    assert nf(p * q) == nf(nf(p) * nf(q))
    assert nf(p).var_degree("z") < 5 if not nf(p).is_zero() else True


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 12), st.integers(0, 16))
def test_rank_nullity_on_psi(n, d):
    f = catalog.psi_star(n)
    assert len(graded.kernel_basis(f, d)) + graded.image_dims(f, d)[d] == f.source.quotient(d).dim


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(catalog.FAMILIES), st.integers(1, 4))
def test_mayer_vietoris_identity(family, ell):
    sq = catalog.pushout_square(ell, family)
    fp = graded.fiber_product_dims(sq.f, sq.g, 20)
    a, b, c = sq.f.source.dims(20), sq.g.source.dims(20), sq.g.target.dims(20)
    assert all(fp[d] + c[d] == a[d] + b[d] for d in range(21))


@given(st.fractions(min_value=Fraction(1, 4), max_value=8), st.fractions(min_value=0, max_value=4),
       st.sampled_from(catalog.FAMILIES))
def test_connectivity_random(lam, gap, family):
    assert catalog.connectivity_check(lam, lam + gap, family, "Q", 30)
