from fractions import Fraction

import pytest

from ruledsymp.algebra import LaurentPoly, monomial_substitution
from ruledsymp.torus import (
    CircleAction,
    DegeneratePolygon,
    HirzebruchParams,
    LatticeMap,
    NotPrimitive,
    ParityMismatch,
    admissible,
    circle_karshon,
    fixed_point_weights,
    karshon_invariant,
    moment_polygon,
    shear_equivalent_circles,
    weight_exponent_map,
    weight_table,
)


def test_trapezoid_vertices():
    p = moment_polygon(HirzebruchParams(2, 2))
    assert p.vertices == ((0, 0), (1, 0), (1, 3), (0, 1))
    assert p.is_delzant()


def test_degenerate_when_surface_does_not_occur():
    with pytest.raises(DegeneratePolygon):
        moment_polygon(HirzebruchParams(4, 1))
    assert not admissible(4, 1)
    assert admissible(4, Fraction(5, 2))


@pytest.mark.parametrize("n", range(0, 9))
def test_weights_match_table(n):
    p = moment_polygon(HirzebruchParams(n, n // 2 + 1))
    w = fixed_point_weights(p)
    table = weight_table(n)
    for label in w.labels:
        assert tuple(sorted(w[label])) == tuple(sorted(table[label]))


def test_weights_along_bottom_edge_are_opposite():
    # weights at the two ends of an edge are negatives of each other along it
    p = moment_polygon(HirzebruchParams(3, 2))
    w = fixed_point_weights(p)
    assert (-1, 0) in [tuple(v) for v in w["B"]] and (1, 0) in [tuple(v) for v in w["A"]]


def test_weight_exponent_map_odd():
    xy = LaurentPoly.gens(("x", "y"))
    mono = xy[0] * xy[1] ** 2
    a = LaurentPoly.var("a", ("a", "b"))
    assert monomial_substitution(mono, weight_exponent_map(3), ("a", "b")) == a


def test_lattice_inverse():
    m = LatticeMap(((2, 1), (1, 1)))
    assert (m @ m.inverse()).rows == LatticeMap.identity().rows


def test_primitive_circle_required():
    with pytest.raises(NotPrimitive):
        CircleAction((2, 4), "moment")


def test_karshon_for_f0_f2():
    c0, c2 = shear_equivalent_circles(0, 2, 2)
    assert circle_karshon(0, 2, c0) == circle_karshon(2, 2, c2)


def test_karshon_distinguishes_inequivalent_circles():
    p = moment_polygon(HirzebruchParams(0, 2))
    a = karshon_invariant(p, CircleAction((0, 1), "moment"))
    b = karshon_invariant(p, CircleAction((1, 1), "moment"))
    assert a != b


def test_shear_parity():
    with pytest.raises(ParityMismatch):
        shear_equivalent_circles(1, 2, 3)
