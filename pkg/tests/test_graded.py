import itertools

import pytest

from ruledsymp.algebra import LaurentPoly
from ruledsymp.graded import (
    CoefficientViolation,
    GradedError,
    GradedRingPresentation,
    IllFormedMap,
    NotFree,
    NotInvolution,
    NotMonic,
    RegularityCheckFailed,
    RingInvolution,
    RingMap,
    SurjectivityFailed,
    anti_invariant_dims,
    check_kernel,
    configured_max_degree,
    fiber_product_dims,
    free_dims,
    hilbert_series,
    ideal_dims,
    invariant_subring,
    kernel_dims,
    module_closure_check,
    monomial_basis,
    reduce_mod_monic,
    weighted_monomials,
)

FDIFF = GradedRingPresentation((("T", 2), ("X", 4), ("Y", 4)))
T, X, Y = FDIFF.gens()


def brute_count(degrees, d):
    ranges = [range(d // g + 1) for g in degrees]
    return sum(1 for e in itertools.product(*ranges) if sum(a * g for a, g in zip(e, degrees)) == d)


@pytest.mark.parametrize("degrees", [(2, 4, 4), (2, 2, 3), (4, 4), (1, 2)])
def test_monomial_counts(degrees):
    for d in range(16):
        assert len(weighted_monomials(degrees, d)) == brute_count(degrees, d) == free_dims(degrees, 15)[d]


def test_basis_in_degree_four():
    basis, dim = monomial_basis(FDIFF, 4)
    assert dim == 3 and set(map(str, basis)) == {"T^2", "X", "Y"}


def test_quotient_dimension_example():
    ring = FDIFF.with_relations([T * (X - Y + T * T)])
    assert monomial_basis(ring, 6)[1] == 2
    assert ring.dims(4) == FDIFF.dims(4)


def test_relations_must_be_homogeneous():
    with pytest.raises(GradedError):
        FDIFF.with_relations([T + X])


def test_hilbert_series_checks_regularity():
    num, den = hilbert_series(FDIFF.with_relations([T * (X - Y + T * T)]), 20)
    t = LaurentPoly.var("t", ("t",))
    assert num == 1 - t ** 6
    # T^2 and T*X do not form a regular sequence
    with pytest.raises(RegularityCheckFailed):
        hilbert_series(FDIFF.with_relations([T * T, T * X]), 12)


def test_kernel_of_psi0():
    k0 = GradedRingPresentation((("Y0", 4), ("X0", 4)))
    psi0 = RingMap(FDIFF, k0, {"T": 0, "X": k0.gen("X0"), "Y": k0.gen("Y0")})
    check = check_kernel(psi0, [T], 20)
    assert check.ok
    assert kernel_dims(psi0, 6) == ideal_dims(FDIFF, [T], 6) == (0, 0, 1, 0, 1, 0, 3)


def test_identity_has_no_kernel():
    ident = RingMap(FDIFF, FDIFF, {"T": T, "X": X, "Y": Y})
    assert not any(kernel_dims(ident, 12))


def test_ill_formed_maps():
    target = GradedRingPresentation((("A", 2), ("B", 4)))
    with pytest.raises(IllFormedMap):
        RingMap(FDIFF, target, {"T": target.gen("B"), "X": target.gen("B"), "Y": target.gen("B")})
    with pytest.raises(IllFormedMap):
        RingMap(FDIFF, target, {"T": target.gen("A")})
    quotient = FDIFF.with_relations([T])
    bad = RingMap(quotient, target, {"T": target.gen("A"), "X": target.gen("B"), "Y": target.gen("B")})
    with pytest.raises(IllFormedMap):
        kernel_dims(bad, 4)


def test_fiber_product_of_identities_is_diagonal():
    ring = GradedRingPresentation((("x", 2),))
    ident = RingMap(ring, ring, {"x": ring.gen("x")})
    assert fiber_product_dims(ident, ident, 10) == ring.dims(10)


def test_fiber_product_needs_surjective_g():
    ring = GradedRingPresentation((("x", 2),))
    zero = RingMap(ring, ring, {"x": 0})
    ident = RingMap(ring, ring, {"x": ring.gen("x")})
    with pytest.raises(SurjectivityFailed):
        fiber_product_dims(ident, zero, 4)


def test_base_untwisted_square_by_hand():
    # H*(BK(0)) and H*(BK(2)) glued over H*(BK(2))/(A2)
    k0 = GradedRingPresentation((("Y0", 4), ("X0", 4)))
    k2 = GradedRingPresentation((("A2", 2), ("X2", 4)))
    c = k2.with_relations([k2.gen("A2")])
    j = RingMap(k0, c, {"Y0": c.gen("X2"), "X0": c.gen("X2")})
    q = RingMap(k2, c, {"A2": c.gen("A2"), "X2": c.gen("X2")})
    dims = fiber_product_dims(j, q, 12)
    assert dims == FDIFF.with_relations([T * (X - Y + T * T)]).dims(12)
    assert dims[2] == 1 and dims[4] == 3


def test_involutions():
    ring = GradedRingPresentation((("u", 2), ("v", 2), ("w", 2)))
    u, v, w = ring.gens()
    tau2 = RingInvolution(ring, {"u": u, "v": -v, "w": w})
    for d, basis in enumerate(invariant_subring(tau2, 8)):
        expected = [m for m in weighted_monomials((2, 2, 2), d) if m[1] % 2 == 0]
        assert len(basis) == len(expected)
        assert all(tau2.fixes(b) for b in basis)
    plus = [len(b) for b in invariant_subring(tau2, 8)]
    assert tuple(p + m for p, m in zip(plus, anti_invariant_dims(tau2, 8))) == ring.dims(8)

    ident = RingInvolution(ring, {"u": u, "v": v, "w": w})
    assert [len(b) for b in invariant_subring(ident, 6)] == list(ring.dims(6))

    with pytest.raises(NotInvolution):
        RingInvolution(ring, {"u": v, "v": w, "w": u})


def test_tau1_invariants():
    ring = GradedRingPresentation((("u", 2), ("V", 4), ("w", 2)))
    u, V, w = ring.gens()
    tau1 = RingInvolution(ring, {"u": -u, "V": V - u * w, "w": w})
    assert all(tau1.fixes(p) for p in (w, u * u, 2 * V - u * w))
    assert not tau1.fixes(V)


def test_reduce_mod_monic():
    xyz = ("x", "y", "z")
    x, y, z = LaurentPoly.gens(xyz)
    rel = z * (z * z + x - y)
    assert reduce_mod_monic(rel, rel, "z").is_zero()
    assert reduce_mod_monic(z * z + x, rel, "z") == z * z + x
    assert reduce_mod_monic(z ** 3, rel, "z") == z * (y - x)
    with pytest.raises(NotMonic):
        reduce_mod_monic(z, x * z, "z")


def test_module_closure_examples():
    xyz = ("x", "y", "z")
    x, y, z = LaurentPoly.gens(xyz)
    rel = z * (z * z + x - y)
    basis = {"1": LaurentPoly.const(1, xyz), "b0": z, "a1": z * z / 2}
    report = module_closure_check(basis, "z", "Z[1/2]", rel)
    assert report.products[("b0", "b0")] == {"a1": LaurentPoly.const(2, xyz)}
    with pytest.raises(CoefficientViolation):
        module_closure_check(basis, "z", "Z", rel)


def test_module_closure_hhh_example():
    uvw = ("u", "v", "w")
    u, v, w = LaurentPoly.gens(uvw)
    f0, g1 = w, w * (w + u + 2 * v) / 2
    exp = module_closure_check({"f0": f0}, "w", "Z", expansion_basis={"f0": f0, "g1": g1}).products
    assert exp[("f0", "f0")] == {"g1": LaurentPoly.const(2, uvw), "f0": -u - 2 * v}


def test_module_closure_not_free():
    xyz = ("x", "y", "z")
    x, y, z = LaurentPoly.gens(xyz)
    with pytest.raises(NotFree):
        module_closure_check({"a": z, "b": 2 * z}, "z")
    with pytest.raises(NotFree):
        module_closure_check({"a": z}, "z")  # z^2 has no basis element


def test_configured_max_degree(monkeypatch):
    monkeypatch.delenv("RULEDSYMP_MAX_DEGREE", raising=False)
    assert configured_max_degree() == 30
    monkeypatch.setenv("RULEDSYMP_MAX_DEGREE", "12")
    assert configured_max_degree() == 12
    monkeypatch.setenv("RULEDSYMP_MAX_DEGREE", "twelve")
    with pytest.raises(GradedError):
        configured_max_degree()
