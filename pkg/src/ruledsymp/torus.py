"""Moment polygons of Hirzebruch surfaces, fixed-point weights and circle actions.

Polygons live in the dual of the torus Lie algebra in the moment-map basis;
circle directions are vectors in the Lie algebra itself, so levels are
pairings ``<vertex, direction>``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .algebra import LaurentPoly


class GeometryError(ValueError):
    pass


class DegeneratePolygon(GeometryError):
    pass


class NotDelzant(GeometryError):
    pass


class NotPrimitive(GeometryError):
    pass


class ParityMismatch(GeometryError):
    pass


@dataclass(frozen=True)
class LatticeMap:
    rows: tuple

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(tuple(int(x) for x in r) for r in self.rows))

    @property
    def shape(self):
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    def det(self) -> int:
        (a, b), (c, d) = self.rows
        return a * d - b * c

    def apply(self, v):
        return tuple(sum(a * x for a, x in zip(r, v)) for r in self.rows)

    def __matmul__(self, other: "LatticeMap") -> "LatticeMap":
        cols = list(zip(*other.rows))
        return LatticeMap(tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.rows))

    def transpose(self) -> "LatticeMap":
        return LatticeMap(tuple(zip(*self.rows)))

    def inverse(self) -> "LatticeMap":
        d = self.det()
        if d not in (1, -1):
            raise GeometryError(f"matrix {self.rows} is not invertible over Z")
        (a, b), (c, e) = self.rows
        return LatticeMap(((e * d, -b * d), (-c * d, a * d)))

    @classmethod
    def identity(cls, n=2):
        return cls(tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))


@dataclass(frozen=True)
class HirzebruchParams:
    n: int
    lam: Fraction

    def __post_init__(self):
        if self.n < 0:
            raise GeometryError("twist n must be nonnegative")
        object.__setattr__(self, "lam", Fraction(self.lam))
        if self.lam <= 0:
            raise GeometryError("lambda must be positive")

    @property
    def mu(self) -> Fraction:
        return self.lam + (Fraction(self.n, 2) if self.n % 2 == 0 else Fraction(self.n + 1, 2))


def reduction_data(n: int, lam=1):
    """Inclusion of the reducing 2-torus into T^4 and the reduction level."""
    if n < 0:
        raise GeometryError("n must be nonnegative")
    inclusion = LatticeMap(((n, 1), (0, 1), (1, 0), (1, 0)))
    return inclusion, (HirzebruchParams(n, lam).mu, Fraction(1))


def _primitive(vec) -> tuple:
    """Primitive integer vector pointing along a rational vector."""
    vec = [Fraction(x) for x in vec]
    if not any(vec):
        raise DegeneratePolygon("zero-length edge")
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return tuple(x // g for x in ints)


def _affine_length(vec, prim) -> Fraction:
    for x, p in zip(vec, prim):
        if p:
            return Fraction(x) / p
    raise GeometryError("zero primitive vector")


@dataclass(frozen=True)
class MomentPolygon:
    vertices: tuple
    labels: tuple = field(default=())

    def __post_init__(self):
        verts = tuple(tuple(Fraction(c) for c in v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not self.labels:
            object.__setattr__(self, "labels", tuple("ABCDEFGH"[i] for i in range(len(verts))))
        if len(verts) < 3:
            raise DegeneratePolygon("a polygon needs at least three vertices")
        signs = set()
        k = len(verts)
        for i in range(k):
            a, b, c = verts[i - 1], verts[i], verts[(i + 1) % k]
            cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0])
            if cross == 0:
                raise DegeneratePolygon(f"collinear or repeated vertices at {b}")
            signs.add(cross > 0)
        if len(signs) != 1:
            raise GeometryError("polygon is not convex")

    def edge_vectors(self, i):
        """Primitive vectors from vertex ``i`` to its two neighbours (previous, next)."""
        k = len(self.vertices)
        v = self.vertices[i]
        prev_, next_ = self.vertices[i - 1], self.vertices[(i + 1) % k]
        return (_primitive((prev_[0] - v[0], prev_[1] - v[1])),
                _primitive((next_[0] - v[0], next_[1] - v[1])))

    def edges(self):
        """Yield ``(i, j, primitive, affine_length)`` for each edge ``i -> j``."""
        k = len(self.vertices)
        for i in range(k):
            j = (i + 1) % k
            d = (self.vertices[j][0] - self.vertices[i][0], self.vertices[j][1] - self.vertices[i][1])
            prim = _primitive(d)
            yield i, j, prim, _affine_length(d, prim)

    def is_delzant(self) -> bool:
        for i in range(len(self.vertices)):
            (a, b), (c, d) = self.edge_vectors(i)
            if abs(a * d - b * c) != 1:
                return False
        return True

    def transform(self, m: LatticeMap, shift=(0, 0)) -> "MomentPolygon":
        return MomentPolygon(tuple(tuple(x + s for x, s in zip(m.apply(v), shift)) for v in self.vertices),
                             self.labels)

    def to_record(self, n=None, lam=None) -> dict:
        rec = {"vertices": [[_fmt(x) for x in v] for v in self.vertices]}
        if n is not None:
            rec = {"n": n, "lambda": _fmt(Fraction(lam)), **rec}
        return rec

    def to_json(self, n=None, lam=None) -> str:
        return json.dumps(self.to_record(n, lam))

    @classmethod
    def from_record(cls, rec) -> "MomentPolygon":
        if isinstance(rec, str):
            rec = json.loads(rec)
        return cls(tuple(tuple(Fraction(x) for x in v) for v in rec["vertices"]))


def _fmt(x: Fraction) -> str:
    return str(Fraction(x))


def moment_polygon(params: HirzebruchParams) -> MomentPolygon:
    mu, n = params.mu, params.n
    if mu - n <= 0:
        raise DegeneratePolygon(f"F_{n} does not occur at lambda={params.lam} (mu - n = {mu - n})")
    return MomentPolygon(((0, 0), (1, 0), (1, mu), (0, mu - n)))


@dataclass(frozen=True)
class FixedPointWeights:
    """Per-vertex weight pairs as integer vectors (``(p, q)`` means ``x^p y^q``)."""

    labels: tuple
    weights: tuple

    def as_monomials(self, variables=("x", "y")):
        return {lab: tuple(LaurentPoly.monomial(w, variables) for w in pair)
                for lab, pair in zip(self.labels, self.weights)}

    def __getitem__(self, label):
        return self.weights[self.labels.index(label)]


def fixed_point_weights(p: MomentPolygon) -> FixedPointWeights:
    """Isotropy weights at each vertex from the primitive edge vectors there.

    The weight along a non-vertical edge is listed first, which reproduces the
    row order of the usual weight table for Hirzebruch trapezoids.
    """
    if not p.is_delzant():
        raise NotDelzant(f"polygon {p.vertices} is not Delzant")
    out = []
    for i in range(len(p.vertices)):
        u, v = p.edge_vectors(i)
        pair = (u, v) if (u[0] != 0 or v[0] == 0) else (v, u)
        out.append(pair)
    return FixedPointWeights(p.labels, tuple(out))


def weight_table(n: int) -> dict:
    """Hirzebruch weight table written out directly (used as a cross-check)."""
    return {"A": ((1, 0), (0, 1)), "B": ((-1, 0), (0, 1)),
            "C": ((-1, -n), (0, -1)), "D": ((1, n), (0, -1))}


def standard_basis_change(n: int) -> LatticeMap:
    """Circle vectors: moment-map basis -> standard basis of the maximal torus of K(n)."""
    if n < 0:
        raise GeometryError("n must be nonnegative")
    if n == 0:
        return LatticeMap(((-1, 0), (0, 1)))
    if n % 2:
        return LatticeMap(((1, (n + 1) // 2), (1, (n - 1) // 2)))
    return LatticeMap(((1, n // 2), (0, 1)))


def covering_matrix(n: int) -> LatticeMap:
    """The n-fold covering U(2) -> K(n) on maximal tori, standard bases."""
    if n < 1:
        raise GeometryError("covering defined for n >= 1")
    if n % 2:
        return LatticeMap((((n + 1) // 2, (n - 1) // 2), ((n - 1) // 2, (n + 1) // 2)))
    return LatticeMap(((n // 2, n // 2), (1, -1)))


def weight_exponent_map(n: int) -> LatticeMap:
    """Exponents in (x, y) -> exponents in the standard weights (a, b).

    The standard weights are dual to the standard circle basis, so the map is
    the inverse transpose of :func:`standard_basis_change`.
    """
    return standard_basis_change(n).transpose().inverse()


@dataclass(frozen=True)
class CircleAction:
    direction: tuple
    basis: str = "moment"

    def __post_init__(self):
        d = tuple(int(x) for x in self.direction)
        object.__setattr__(self, "direction", d)
        if self.basis not in ("moment", "standard"):
            raise GeometryError(f"unknown basis {self.basis!r}")
        if gcd(*d) != 1:
            raise NotPrimitive(f"circle direction {d} is not primitive")

    def to_moment(self, n: int) -> "CircleAction":
        if self.basis == "moment":
            return self
        return CircleAction(standard_basis_change(n).inverse().apply(self.direction), "moment")

    def to_standard(self, n: int) -> "CircleAction":
        if self.basis == "standard":
            return self
        return CircleAction(standard_basis_change(n).apply(self.direction), "standard")


@dataclass(frozen=True)
class KarshonGraph:
    """Collapsed Karshon invariant: all levels are relative to the minimum.

    ``minimum``/``maximum`` are ``("surface", level, area)`` or
    ``("point", level, (w1, w2))``; ``interior`` is a sorted tuple of
    ``(level, (w1, w2))`` for isolated fixed points strictly inside.
    """

    minimum: tuple
    maximum: tuple
    interior: tuple


def _pair(u, c) -> int:
    return u[0] * c[0] + u[1] * c[1]


def karshon_invariant(p: MomentPolygon, c: CircleAction) -> KarshonGraph:
    if c.basis != "moment":
        raise GeometryError("express the circle in the moment-map basis first")
    d = c.direction
    levels = [v[0] * d[0] + v[1] * d[1] for v in p.vertices]
    lo, hi = min(levels), max(levels)
    on_surface = {}
    for i, j, prim, length in p.edges():
        if _pair(prim, d) == 0:
            on_surface[i] = on_surface[j] = (levels[i] - lo, length)
    surfaces = {lvl: length for lvl, length in on_surface.values()}
    if len(set(levels)) == 1:
        raise GeometryError("circle acts trivially")

    def extreme(level):
        rel = level - lo
        if rel in surfaces:
            return ("surface", rel, surfaces[rel])
        i = levels.index(level)
        u, v = p.edge_vectors(i)
        return ("point", rel, tuple(sorted((_pair(u, d), _pair(v, d)))))

    interior = []
    for i, lvl in enumerate(levels):
        if i in on_surface or lvl in (lo, hi):
            continue
        u, v = p.edge_vectors(i)
        interior.append((lvl - lo, tuple(sorted((_pair(u, d), _pair(v, d))))))
    return KarshonGraph(extreme(lo), extreme(hi), tuple(sorted(interior)))


def admissible(n: int, lam) -> bool:
    return HirzebruchParams(n, lam).mu - n > 0


def shear_equivalent_circles(k: int, l: int, lam):
    """Standard-basis circles on F_k and F_l whose circle actions are equivalent.

    Returns ``(circle on F_k, circle on F_l)`` after checking that the two
    collapsed Karshon invariants coincide.
    """
    if (k - l) % 2:
        raise ParityMismatch(f"F_{k} and F_{l} have different parity")
    polys = []
    for n in (k, l):
        polys.append(moment_polygon(HirzebruchParams(n, lam)))
    on_k = CircleAction(((l - k) // 2, 1), "moment")
    on_l = CircleAction(((k - l) // 2, 1), "moment")
    gk = karshon_invariant(polys[0], on_k)
    gl = karshon_invariant(polys[1], on_l)
    if gk != gl:
        raise GeometryError(f"Karshon invariants differ for F_{k}, F_{l}: {gk} vs {gl}")
    std_k, std_l = on_k.to_standard(k), on_l.to_standard(l)

    def canon(c, n):
        # on F_0 the circles (a, 1) and (-a, 1) are conjugate
        if n == 0 and c.direction[0] < 0:
            return CircleAction((-c.direction[0], c.direction[1]), "standard")
        return c

    return canon(std_k, k), canon(std_l, l)


def circle_karshon(n: int, lam, circle: CircleAction) -> KarshonGraph:
    poly = moment_polygon(HirzebruchParams(n, lam))
    return karshon_invariant(poly, circle.to_moment(n))


def unimodular_pullback(m: LatticeMap, c: CircleAction) -> CircleAction:
    """Direction transformed so that pairings with ``m``-transformed polygons are kept."""
    return CircleAction(m.inverse().transpose().apply(c.direction), c.basis)


__all__ = [
    "LatticeMap", "HirzebruchParams", "MomentPolygon", "FixedPointWeights", "CircleAction",
    "KarshonGraph", "reduction_data", "moment_polygon", "fixed_point_weights", "weight_table",
    "standard_basis_change", "covering_matrix", "weight_exponent_map", "karshon_invariant",
    "shear_equivalent_circles", "circle_karshon", "admissible", "unimodular_pullback",
    "GeometryError", "DegeneratePolygon", "NotDelzant", "NotPrimitive", "ParityMismatch",
]

