"""Graded commutative rings by generators and homogeneous relations.

Everything is decided degree by degree with exact linear algebra on monomial
bases, up to a bound ``D`` (30 by default). No Groebner bases.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Mapping, Sequence

from . import linalg
from .algebra import LaurentPoly, one_minus_t, series_of_rational

DEFAULT_MAX_DEGREE = 30
MAX_DEGREE_ENV = "RULEDSYMP_MAX_DEGREE"


def configured_max_degree() -> int:
    """The degree bound ``D``: the environment override if set, else 30."""
    raw = os.environ.get(MAX_DEGREE_ENV)
    if not raw:
        return DEFAULT_MAX_DEGREE
    try:
        value = int(raw)
    except ValueError:
        raise GradedError(f"{MAX_DEGREE_ENV} must be an integer, got {raw!r}") from None
    if value < 0:
        raise GradedError(f"{MAX_DEGREE_ENV} must be nonnegative")
    return value


class GradedError(ValueError):
    pass


class IllFormedMap(GradedError):
    pass


class SurjectivityFailed(GradedError):
    pass


class RegularityCheckFailed(GradedError):
    pass


class NotInvolution(GradedError):
    pass


class NotMonic(GradedError):
    pass


class NotFree(GradedError):
    pass


class CoefficientViolation(GradedError):
    pass


def weighted_monomials(degrees: Sequence[int], d: int) -> list:
    """Exponent vectors of weighted degree ``d``, descending lex order."""
    out = []

    def rec(i, left, acc):
        if i == len(degrees) - 1:
            if left % degrees[i] == 0:
                out.append(tuple(acc) + (left // degrees[i],))
            return
        for e in range(left // degrees[i], -1, -1):
            rec(i + 1, left - e * degrees[i], acc + [e])

    if d < 0:
        return []
    if not degrees:
        return [()] if d == 0 else []
    rec(0, d, [])
    return out


def free_dims(degrees: Sequence[int], bound: int) -> tuple:
    """Dimensions of a free graded-commutative polynomial ring in degrees ``0..bound``."""
    dims = [0] * (bound + 1)
    dims[0] = 1
    for g in degrees:
        for d in range(g, bound + 1):
            dims[d] += dims[d - g]
    return tuple(dims)


class QuotientSpace:
    """Degree-``d`` part of a presented ring: monomials modulo the relations."""

    def __init__(self, ring: "GradedRingPresentation", d: int):
        self.ring = ring
        self.degree = d
        self.p = linalg.characteristic(ring.field)
        self.monomials = weighted_monomials(ring.degrees, d)
        self.index = {m: i for i, m in enumerate(self.monomials)}
        self.ideal = linalg.Echelon(len(self.monomials), self.p)
        for rel, rdeg in zip(ring.relations, ring.relation_degrees):
            for m in weighted_monomials(ring.degrees, d - rdeg):
                prod = rel * LaurentPoly.monomial(m, ring.variables)
                self.ideal.add(self.vector(prod))
        pivots = set(self.ideal.pivots)
        self.basis_index = [i for i in range(len(self.monomials)) if i not in pivots]

    @property
    def dim(self) -> int:
        return len(self.basis_index)

    def vector(self, poly: LaurentPoly) -> list:
        if poly.variables != self.ring.variables:
            poly = poly.with_variables(self.ring.variables)
        v = [0] * len(self.monomials)
        for m, c in poly.terms.items():
            i = self.index.get(m)
            if i is None:
                raise GradedError(f"term {m} of {poly} is not of degree {self.degree}")
            v[i] = linalg.to_field(c, self.p)
        return v

    def coords(self, poly: LaurentPoly) -> list:
        r = self.ideal.reduce(self.vector(poly))
        return [r[i] for i in self.basis_index]

    def is_zero(self, poly: LaurentPoly) -> bool:
        return not any(self.coords(poly))

    def basis(self) -> list:
        return [LaurentPoly.monomial(self.monomials[i], self.ring.variables) for i in self.basis_index]

    def element(self, coords) -> LaurentPoly:
        terms = {self.monomials[i]: Fraction(c) for i, c in zip(self.basis_index, coords) if c}
        return LaurentPoly(terms, self.ring.variables)


@dataclass(frozen=True)
class GradedRingPresentation:
    """``field[generators] / (relations)``; generators are ``(name, degree)`` pairs."""

    generators: tuple
    relations: tuple = ()
    field: str = "Q"
    name: str = ""
    _cache: dict = dc_field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        gens = tuple((str(n), int(d)) for n, d in self.generators)
        object.__setattr__(self, "generators", gens)
        if any(d <= 0 for _, d in gens):
            raise GradedError("generator degrees must be positive")
        linalg.characteristic(self.field)
        rels = []
        for r in self.relations:
            if r.variables != self.variables:
                r = r.with_variables(self.variables)
            if r.is_zero():
                continue
            if not r.is_polynomial():
                raise GradedError(f"relation {r} has negative exponents")
            if not r.is_homogeneous(self.degrees):
                raise GradedError(f"relation {r} is not homogeneous")
            rels.append(r)
        object.__setattr__(self, "relations", tuple(rels))

    @property
    def variables(self) -> tuple:
        return tuple(n for n, _ in self.generators)

    @property
    def degrees(self) -> tuple:
        return tuple(d for _, d in self.generators)

    @property
    def relation_degrees(self) -> tuple:
        return tuple(r.degree(self.degrees) for r in self.relations)

    def gens(self) -> tuple:
        return LaurentPoly.gens(self.variables)

    def gen(self, name) -> LaurentPoly:
        return LaurentPoly.var(name, self.variables)

    def poly(self, p) -> LaurentPoly:
        """Coerce a constant or a polynomial over a sub-list of variables."""
        if isinstance(p, LaurentPoly):
            return p if p.variables == self.variables else p.with_variables(self.variables)
        return LaurentPoly.const(p, self.variables)

    def degree_of(self, p: LaurentPoly) -> int:
        p = self.poly(p)
        if not p.is_homogeneous(self.degrees):
            raise GradedError(f"{p} is not homogeneous")
        return p.degree(self.degrees)

    def quotient(self, d: int) -> QuotientSpace:
        key = ("q", d)
        if key not in self._cache:
            self._cache[key] = QuotientSpace(self, d)
        return self._cache[key]

    def dims(self, bound: int = DEFAULT_MAX_DEGREE) -> tuple:
        return tuple(self.quotient(d).dim for d in range(bound + 1))

    def with_field(self, fld: str) -> "GradedRingPresentation":
        return GradedRingPresentation(self.generators, self.relations, fld, self.name)

    def with_relations(self, relations) -> "GradedRingPresentation":
        return GradedRingPresentation(self.generators, tuple(relations), self.field, self.name)

    def describe(self) -> str:
        gens = ", ".join(f"{n}" for n, _ in self.generators)
        degs = ", ".join(f"|{n}|={d}" for n, d in self.generators)
        base = f"{self.field}[{gens}]"
        if self.relations:
            base += " / (" + ", ".join(str(r) for r in self.relations) + ")"
        return f"{base}  ({degs})"


def monomial_basis(ring: GradedRingPresentation, d: int):
    q = ring.quotient(d)
    return q.basis(), q.dim


def hilbert_series(ring: GradedRingPresentation, bound: int = DEFAULT_MAX_DEGREE):
    """``prod(1 - t^deg rel) / prod(1 - t^deg gen)``, cross-checked against the basis count."""
    num = LaurentPoly.const(1, ("t",))
    den = LaurentPoly.const(1, ("t",))
    for d in ring.relation_degrees:
        num = num * one_minus_t(d)
    for d in ring.degrees:
        den = den * one_minus_t(d)
    predicted = series_of_rational(num, den, bound).as_ints()
    actual = ring.dims(bound)
    if tuple(predicted) != actual:
        raise RegularityCheckFailed(
            f"{ring.describe()}: series {predicted} disagrees with monomial count {actual}")
    return num, den


@dataclass(frozen=True)
class RingMap:
    source: GradedRingPresentation
    target: GradedRingPresentation
    images: Mapping
    name: str = ""

    def __post_init__(self):
        imgs = {}
        for gen, deg in self.source.generators:
            if gen not in self.images:
                raise IllFormedMap(f"no image for generator {gen}")
            img = self.target.poly(self.images[gen])
            if not img.is_zero():
                if not img.is_polynomial() or not img.is_homogeneous(self.target.degrees) \
                        or img.degree(self.target.degrees) != deg:
                    raise IllFormedMap(f"image {img} of {gen} is not homogeneous of degree {deg}")
            imgs[gen] = img
        object.__setattr__(self, "images", imgs)

    def apply(self, p: LaurentPoly) -> LaurentPoly:
        p = self.source.poly(p)
        return p.substitute(self.images, self.target.variables)

    def __call__(self, p):
        return self.apply(p)

    def well_defined(self) -> bool:
        for rel, d in zip(self.source.relations, self.source.relation_degrees):
            if not self.target.quotient(d).is_zero(self.apply(rel)):
                return False
        return True

    def columns(self, d: int) -> list:
        src = self.source.quotient(d)
        tgt = self.target.quotient(d)
        return [tgt.coords(self.apply(b)) for b in src.basis()]

    def compose(self, other: "RingMap") -> "RingMap":
        """``self o other`` (apply ``other`` first)."""
        return RingMap(other.source, self.target,
                       {g: self.apply(img) for g, img in other.images.items()})

    def images_text(self) -> dict:
        return {g: str(img) for g, img in self.images.items()}


def _require_well_defined(f: RingMap):
    if not f.well_defined():
        raise IllFormedMap(f"{f.name or 'map'} does not respect the source relations")


def _rank(cols, nrows, p) -> int:
    # rank of the matrix whose columns are ``cols``
    return linalg.rank(cols, nrows, p)


def image_dims(f: RingMap, bound: int = DEFAULT_MAX_DEGREE) -> tuple:
    _require_well_defined(f)
    p = linalg.characteristic(f.target.field)
    return tuple(_rank(f.columns(d), f.target.quotient(d).dim, p) for d in range(bound + 1))


def kernel_dims(f: RingMap, bound: int = DEFAULT_MAX_DEGREE) -> tuple:
    im = image_dims(f, bound)
    return tuple(f.source.quotient(d).dim - im[d] for d in range(bound + 1))


def kernel_basis(f: RingMap, d: int) -> list:
    _require_well_defined(f)
    p = linalg.characteristic(f.target.field)
    cols = f.columns(d)
    src = f.source.quotient(d)
    nrows = f.target.quotient(d).dim
    rows = [[c[i] for c in cols] for i in range(nrows)]
    return [src.element(v) for v in linalg.nullspace(rows, len(cols), p)]


def ideal_dims(ring: GradedRingPresentation, generators, bound: int = DEFAULT_MAX_DEGREE) -> tuple:
    """Degreewise dimensions of the ideal generated by ``generators`` inside ``ring``."""
    gens = [ring.poly(g) for g in generators if not ring.poly(g).is_zero()]
    p = linalg.characteristic(ring.field)
    out = []
    for d in range(bound + 1):
        q = ring.quotient(d)
        ech = linalg.Echelon(q.dim, p)
        for g in gens:
            gd = ring.degree_of(g)
            for m in weighted_monomials(ring.degrees, d - gd):
                ech.add(q.coords(g * LaurentPoly.monomial(m, ring.variables)))
        out.append(ech.rank)
    return tuple(out)


@dataclass
class KernelCheck:
    kernel: tuple
    candidate: tuple
    in_kernel: bool

    @property
    def ok(self) -> bool:
        return self.in_kernel and self.kernel == self.candidate


def check_kernel(f: RingMap, candidates, bound: int = DEFAULT_MAX_DEGREE) -> KernelCheck:
    """Accept ``candidates`` as ideal generators of ``ker f`` up to degree ``bound``."""
    ker = kernel_dims(f, bound)
    inside = all(f.target.quotient(f.source.degree_of(c)).is_zero(f.apply(c)) for c in candidates)
    return KernelCheck(ker, ideal_dims(f.source, candidates, bound), inside)


def joint_kernel_dims(maps: Sequence[RingMap], bound: int = DEFAULT_MAX_DEGREE) -> tuple:
    """Kernel of ``p -> (f1(p), f2(p), ...)`` for maps sharing a source."""
    src = maps[0].source
    out = []
    for d in range(bound + 1):
        cols = None
        nrows = 0
        p = 0
        for f in maps:
            if f.source != src:
                raise IllFormedMap("maps must share a source")
            _require_well_defined(f)
            p = linalg.characteristic(f.target.field)
            c = f.columns(d)
            cols = c if cols is None else [a + b for a, b in zip(cols, c)]
            nrows += f.target.quotient(d).dim
        out.append(src.quotient(d).dim - _rank(cols, nrows, p))
    return tuple(out)


def fiber_product_dims(f: RingMap, g: RingMap, bound: int = DEFAULT_MAX_DEGREE) -> tuple:
    """Dimensions of ``{(a, b) : f(a) = g(b)}`` for ``f: A -> C``, ``g: B -> C``."""
    if f.target != g.target:
        raise IllFormedMap("fiber product needs a common target")
    _require_well_defined(f)
    _require_well_defined(g)
    p = linalg.characteristic(f.target.field)
    out = []
    for d in range(bound + 1):
        cdim = f.target.quotient(d).dim
        gcols = g.columns(d)
        rg = _rank(gcols, cdim, p)
        if rg != cdim:
            raise SurjectivityFailed(f"{g.name or 'g'} is not onto in degree {d}")
        fcols = f.columns(d)
        neg = [[(-x) % p if p else -x for x in c] for c in gcols]
        r = _rank(fcols + neg, cdim, p)
        out.append(len(fcols) + len(gcols) - r)
    return tuple(out)


@dataclass(frozen=True)
class RingInvolution:
    ring: GradedRingPresentation
    images: Mapping
    name: str = ""

    def __post_init__(self):
        m = RingMap(self.ring, self.ring, self.images, self.name)
        object.__setattr__(self, "images", m.images)
        for gen in self.ring.variables:
            twice = m.apply(m.apply(self.ring.gen(gen)))
            if twice != self.ring.gen(gen):
                raise NotInvolution(f"{self.name or 'map'} squared sends {gen} to {twice}")

    @property
    def as_map(self) -> RingMap:
        return RingMap(self.ring, self.ring, self.images, self.name)

    def apply(self, p):
        return self.as_map.apply(p)

    def fixes(self, p) -> bool:
        p = self.ring.poly(p)
        return self.apply(p) == p


def eigenspace(sigma: RingInvolution, d: int, sign: int = 1) -> list:
    f = sigma.as_map
    q = sigma.ring.quotient(d)
    p = linalg.characteristic(sigma.ring.field)
    cols = f.columns(d)
    n = q.dim
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            x = cols[j][i] - (sign if i == j else 0)
            row.append(x % p if p else x)
        rows.append(row)
    return [q.element(v) for v in linalg.nullspace(rows, n, p)]


def invariant_subring(sigma: RingInvolution, bound: int = DEFAULT_MAX_DEGREE) -> list:
    """Per degree, a basis of the +1 eigenspace."""
    return [eigenspace(sigma, d, 1) for d in range(bound + 1)]


def anti_invariant_dims(sigma: RingInvolution, bound: int = DEFAULT_MAX_DEGREE) -> tuple:
    return tuple(len(eigenspace(sigma, d, -1)) for d in range(bound + 1))


def leading_in(p: LaurentPoly, var: str):
    """``(degree, coefficient)`` of ``p`` as a polynomial in ``var``."""
    parts = p.coefficients_in(var)
    if not parts:
        return -1, LaurentPoly.zero(p.variables)
    e = max(parts)
    return e, parts[e]


def reduce_mod_monic(p: LaurentPoly, relation: LaurentPoly, var: str) -> LaurentPoly:
    """Remainder of ``p`` on division by ``relation`` in the variable ``var``.

    ``relation`` must have a nonzero constant leading coefficient in ``var``.
    """
    if p.variables != relation.variables:
        relation = relation.with_variables(p.variables)
    n, lc = leading_in(relation, var)
    if n < 0 or not lc.is_constant():
        raise NotMonic(f"{relation} is not monic in {var}")
    inv = 1 / lc.constant_term()
    i = p.variables.index(var)
    r = p
    while True:
        e, c = leading_in(r, var)
        if e < n:
            return r
        shift = tuple(e - n if k == i else 0 for k in range(len(p.variables)))
        r = r - c * LaurentPoly.monomial(shift, p.variables, inv) * relation


def _coefficient_ok(c: Fraction, constraint: str) -> bool:
    den = c.denominator
    if constraint == "Z":
        return den == 1
    if constraint == "Z[1/2]":
        return den & (den - 1) == 0
    if constraint == "Q":
        return True
    raise GradedError(f"unknown coefficient constraint {constraint!r}")


def expand_in_basis(p: LaurentPoly, basis: Mapping, var: str, relation: LaurentPoly | None = None) -> dict:
    """Unique expansion of ``p`` over a basis triangular in ``var``.

    Every basis element must have a constant leading coefficient in ``var`` and
    the ``var``-degrees must be distinct; coefficients are polynomials free of
    ``var``.
    """
    by_degree = {}
    for name, b in basis.items():
        e, lc = leading_in(b, var)
        if not lc.is_constant() or e in by_degree:
            raise NotFree(f"basis is not triangular in {var} at {name}")
        by_degree[e] = (name, b, lc.constant_term())
    r = reduce_mod_monic(p, relation, var) if relation is not None else p
    out: dict = {}
    while not r.is_zero():
        e, c = leading_in(r, var)
        if e not in by_degree:
            raise NotFree(f"no basis element of {var}-degree {e} (remainder {r})")
        name, b, lc = by_degree[e]
        coeff = c / lc
        out[name] = out.get(name, LaurentPoly.zero(p.variables)) + coeff
        r = r - coeff * b
        if relation is not None:
            r = reduce_mod_monic(r, relation, var)
    return out


@dataclass
class ClosureReport:
    constraint: str
    products: dict
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations


def module_closure_check(basis: Mapping, var: str, constraint: str = "Z[1/2]",
                         relation: LaurentPoly | None = None, pairs=None,
                         expansion_basis: Mapping | None = None, strict: bool = True) -> ClosureReport:
    """Expand pairwise products of ``basis`` and check the coefficient constraint.

    ``expansion_basis`` (default ``basis``) must span the products; pass a
    longer list when the ambient ring has no relation to truncate with.
    With ``strict`` a violation raises :class:`CoefficientViolation`.
    """
    target = dict(expansion_basis or basis)
    names = list(basis)
    if pairs is None:
        pairs = [(a, b) for i, a in enumerate(names) for b in names[i:]]
    products = {}
    violations = []
    for a, b in pairs:
        exp = expand_in_basis(basis[a] * basis[b], target, var, relation)
        products[(a, b)] = exp
        for name, c in exp.items():
            bad = [x for x in c.terms.values() if not _coefficient_ok(x, constraint)]
            if bad:
                violations.append((a, b, name, str(c)))
    if violations and strict:
        raise CoefficientViolation(f"coefficients outside {constraint}: {violations[:3]}")
    return ClosureReport(constraint, products, violations)
