from fractions import Fraction

import pytest
import sympy

from ruledsymp.algebra import (
    LaurentPoly,
    NotDivisible,
    NotPolynomial,
    StructuredRationalFunction,
    VariableMismatch,
    divide_exact,
    laurent_arith,
    monomial_substitution,
    parse_poly,
    rational_series_equal,
    series_of_rational,
)

XY = ("x", "y")
x, y = LaurentPoly.gens(XY)
one = LaurentPoly.const(1, XY)
sx, sy = sympy.symbols("x y")


def to_sympy(p):
    return sum(c * sx ** m[0] * sy ** m[1] for m, c in p.terms.items())


def test_zero_terms_dropped_and_duplicates_accumulate():
    p = LaurentPoly([((1, 0), 2), ((1, 0), -2), ((0, 1), 1)], XY)
    assert p == y
    assert len(p) == 1


def test_canonical_rendering():
    A, X = LaurentPoly.gens(("A", "X"))
    assert str(A ** 3 - A * X) == "A^3 - A*X"
    assert str(Fraction(1, 2) * x * y ** -1 - 3) == "1/2*x*y^-1 - 3"
    assert str(LaurentPoly.zero(XY)) == "0"


def test_parse_round_trip():
    for p in (x + y + 2 + y ** -1 + x ** -1, Fraction(-3, 7) * x ** 2 * y ** -3 + 5, LaurentPoly.zero(XY)):
        assert parse_poly(str(p), XY) == p
    assert parse_poly("2 + y + 1/y + x + 1/x", XY) == x + y + 2 + y ** -1 + x ** -1


def test_arithmetic_against_sympy():
    p = 3 * x ** 2 * y ** -1 - Fraction(1, 2) * y + 4
    q = x ** -1 + 2 * y ** 2
    assert sympy.simplify(to_sympy(p * q) - to_sympy(p) * to_sympy(q)) == 0
    assert sympy.simplify(to_sympy(p - q) - (to_sympy(p) - to_sympy(q))) == 0


def test_laurent_arith_rejects_mismatched_variables():
    with pytest.raises(VariableMismatch):
        laurent_arith(x, LaurentPoly.var("a", ("a", "b")), "add")


def test_divide_exact():
    q = x * y ** -2 + 3 - Fraction(2, 3) * x ** -1
    m = (1, -1)
    p = (one - LaurentPoly.monomial(m, XY)) * q
    assert divide_exact(p, m) == q
    assert divide_exact(LaurentPoly.zero(XY), m).is_zero()


def test_divide_exact_refuses():
    with pytest.raises(NotDivisible):
        divide_exact(x + 1, (0, 1))
    with pytest.raises(NotDivisible):
        divide_exact(one, (1, 0))


def test_monomial_substitution_merges_terms():
    p = x + y
    collapsed = monomial_substitution(p, [[1, 1]], ("t",))
    assert collapsed == 2 * LaurentPoly.var("t", ("t",))


def test_structured_rational_function_identity():
    # 1/(1-x) + 1/(1-1/x) = 1
    r = StructuredRationalFunction.build(one, [(1, 0)]) + StructuredRationalFunction.build(one, [(-1, 0)])
    assert r.to_laurent() == one


def test_structured_rational_function_not_polynomial():
    with pytest.raises(NotPolynomial):
        StructuredRationalFunction.build(one, [(1, 0)]).to_laurent()


def test_series_of_rational():
    t = LaurentPoly.var("t", ("t",))
    num = 1 - t ** 6
    den = (1 - t ** 2) * (1 - t ** 4) ** 2
    st = sympy.symbols("t")
    oracle = sympy.series((1 - st ** 6) / ((1 - st ** 2) * (1 - st ** 4) ** 2), st, 0, 21).removeO()
    got = series_of_rational(num, den, 20)
    assert list(got.as_ints()) == [oracle.coeff(st, k) for k in range(21)]
    assert rational_series_equal(num, den, num * (1 + t), den * (1 + t))
