from fractions import Fraction

import pytest
import sympy

from ruledsymp.algebra import LaurentPoly
from ruledsymp.localization import (
    LocalizationError,
    RewriteError,
    atiyah_bott_index,
    character_dimension,
    euler_class,
    euler_closed_form,
    h01_character_standard,
    h01_closed_form,
    isotropy_rep_name,
    rewrite_invariant,
    split_index,
    torus_euler_class,
    verify_euler_nzd,
    weyl_invariant,
)
from ruledsymp.torus import HirzebruchParams, fixed_point_weights, moment_polygon

sx, sy = sympy.symbols("x y")


def sympy_index(n):
    """Oracle: sum the four fixed-point fractions and cancel with sympy."""
    p = moment_polygon(HirzebruchParams(n, n // 2 + 1))
    total = 0
    for (a, b), (c, d) in fixed_point_weights(p).weights:
        w1 = sx ** a * sy ** b
        w2 = sx ** c * sy ** d
        total += w1 * w2 * (w1 + w2) / ((1 - w1) * (1 - w2))
    return sympy.expand(sympy.cancel(sympy.together(total)))


def to_sympy(p):
    return sum(c * sx ** m[0] * sy ** m[1] for m, c in p.terms.items())


@pytest.mark.parametrize("n", range(0, 7))
def test_index_against_sympy(n):
    assert sympy.expand(to_sympy(atiyah_bott_index(n).value) - sympy_index(n)) == 0


def test_index_displayed_n0():
    x, y = LaurentPoly.gens(("x", "y"))
    assert atiyah_bott_index(0).value == 2 + y + y ** -1 + x + x ** -1


@pytest.mark.parametrize("n", range(1, 13))
def test_split_dimensions(n):
    pos, neg = split_index(atiyah_bott_index(n))
    assert character_dimension(neg) == n - 1
    assert character_dimension(pos) == n + 5


def test_weights_in_standard_basis_small_cases():
    a, b = LaurentPoly.gens(("a", "b"))
    assert h01_character_standard(2) == a
    assert h01_character_standard(3) == a + b
    assert h01_character_standard(4) == a * b ** -1 + a + a * b


@pytest.mark.parametrize("n", range(2, 13))
def test_named_representation(n):
    rep = isotropy_rep_name(n)
    assert rep.dimension == n - 1
    assert rep.character() == h01_character_standard(n) == h01_closed_form(n)


def test_named_representation_groups():
    assert isotropy_rep_name(4).group == "S1xSO(3)"
    assert isotropy_rep_name(5).det_power == -1


def test_euler_class_small_cases():
    A, X = LaurentPoly.gens(("A", "X"))
    assert euler_class(2).value == A
    assert euler_class(3).value == X
    assert euler_class(4).value == A ** 3 - A * X
    assert euler_class(5).value == 9 * X ** 2 - 2 * A ** 2 * X


@pytest.mark.parametrize("n", range(2, 13))
def test_euler_class_closed_form_and_degree(n):
    e = euler_class(n)
    assert e.value == euler_closed_form(n)
    assert e.degree == 2 * (n - 1)
    assert weyl_invariant(torus_euler_class(n), n)


@pytest.mark.parametrize("n", range(2, 9))
def test_euler_class_via_sympy_product(n):
    t1, t2 = sympy.symbols("T1 T2")
    product = 1
    for (p, q), c in h01_closed_form(n).terms.items():
        product *= (p * t1 + q * t2) ** int(c)
    A, X = (t1 + t2, t1 * t2) if n % 2 else (t1, t2 ** 2)
    ours = sum(c * A ** i * X ** j for (i, j), c in euler_class(n).value.terms.items())
    assert sympy.expand(ours - product) == 0


def test_nzd_over_all_fields():
    for n in range(2, 13):
        for fld in ("Q", "F2", "F3"):
            assert verify_euler_nzd(n, fld)


def test_rewrite_rejects_non_invariant():
    t1, t2 = LaurentPoly.gens(("T1", "T2"))
    with pytest.raises(RewriteError):
        rewrite_invariant(t1 - t2, 3)


def test_euler_class_needs_n_above_one():
    with pytest.raises(LocalizationError):
        euler_class(1)
    assert euler_class(4).coefficients == "Z[1/2]"
    assert euler_class(5).coefficients == "Z"
    assert Fraction(1) in euler_class(6).value.terms.values()
