from fractions import Fraction

import pytest
import sympy

from ruledsymp import linalg


def test_rank_over_q_matches_sympy():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1], [0, 2, 2]]
    assert linalg.rank([[Fraction(a) for a in r] for r in rows], 3) == sympy.Matrix(rows).rank()


def test_rank_depends_on_characteristic():
    rows = [[1, 1], [1, 3]]
    assert linalg.rank(rows, 2, 0) == 2
    assert linalg.rank(rows, 2, 2) == 1


def test_nullspace():
    rows = [[Fraction(1), Fraction(1), Fraction(0)], [Fraction(0), Fraction(1), Fraction(1)]]
    (v,) = linalg.nullspace(rows, 3)
    assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_solve():
    x, nullity = linalg.solve([[1, 1], [1, -1]], [3, 1])
    assert x == [2, 1] and nullity == 0
    x, nullity = linalg.solve([[1, 1], [2, 2]], [1, 3])
    assert x is None


def test_field_conversion():
    assert linalg.to_field(Fraction(1, 2), 3) == 2
    with pytest.raises(linalg.FieldError):
        linalg.to_field(Fraction(1, 2), 2)
    with pytest.raises(linalg.FieldError):
        linalg.characteristic("F5")
