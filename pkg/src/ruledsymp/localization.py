"""Fixed-point index of the tangent Dolbeault complex of F_n and its pieces.

The index character ``I(n) = H^0(TF_n) - H^{0,1}(TF_n)`` is summed over the
four torus-fixed points, the H^{0,1} part is moved to the standard weights
``a, b`` of K(n), and its Euler class is rewritten in the Weyl-invariant
generators ``A, X``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import LaurentPoly, StructuredRationalFunction, monomial_substitution
from .torus import HirzebruchParams, fixed_point_weights, moment_polygon, weight_exponent_map

XY = ("x", "y")
AB = ("a", "b")
TORUS = ("T1", "T2")
INVARIANT = ("A", "X")


class LocalizationError(ValueError):
    pass


class RewriteError(LocalizationError):
    pass


@dataclass(frozen=True)
class VirtualCharacter:
    value: LaurentPoly
    basis: str = "xy"

    def __post_init__(self):
        if not self.value.has_integer_coefficients():
            raise LocalizationError(f"virtual character with non-integral coefficients: {self.value}")

    def split(self):
        return split_index(self)

    def __str__(self):
        return str(self.value)


def _default_lambda(n: int) -> Fraction:
    # any level at which F_n occurs; the index does not depend on it
    return Fraction(n // 2 + 1)


def fixed_point_summands(n: int) -> list:
    """The four localization summands ``w1 w2 (w1 + w2) / ((1 - w1)(1 - w2))``."""
    polygon = moment_polygon(HirzebruchParams(n, _default_lambda(n)))
    out = []
    for w1, w2 in fixed_point_weights(polygon).weights:
        m1 = LaurentPoly.monomial(w1, XY)
        m2 = LaurentPoly.monomial(w2, XY)
        out.append(StructuredRationalFunction.build(m1 * m2 * (m1 + m2), [w1, w2]))
    return out


def atiyah_bott_index(n: int) -> VirtualCharacter:
    if n < 0:
        raise LocalizationError("n must be nonnegative")
    summands = fixed_point_summands(n)
    total = summands[0]
    for s in summands[1:]:
        total = total + s
    return VirtualCharacter(total.to_laurent(), "xy")


def index_closed_form(n: int) -> LaurentPoly:
    """The index written as a sum of independent monomials (displayed form)."""
    x, y = LaurentPoly.gens(XY)
    base = 2 + y + y ** -1
    if n == 0:
        return base + x + x ** -1
    top = sum((y ** j for j in range(n + 1)), LaurentPoly.zero(XY))
    out = base + (x * y ** n) ** -1 * top
    if n > 1:
        out = out - x * y * sum((y ** j for j in range(n - 1)), LaurentPoly.zero(XY))
    return out


def split_index(chi: VirtualCharacter):
    """``(positive, negative)`` with ``chi = positive - negative``, both genuine characters."""
    v = chi.value if isinstance(chi, VirtualCharacter) else chi
    return v.positive_part(), -v.negative_part()


def character_dimension(p: LaurentPoly) -> int:
    return int(p.evaluate_at_one())


def h01_character(n: int) -> LaurentPoly:
    """Character of H^{0,1}(TF_n) in the moment-map weights ``x, y``."""
    return split_index(atiyah_bott_index(n))[1]


def h01_character_standard(n: int) -> LaurentPoly:
    if n < 2:
        raise LocalizationError("H^{0,1} in standard weights needs n >= 2")
    return monomial_substitution(h01_character(n), weight_exponent_map(n), AB)


def h01_closed_form(n: int) -> LaurentPoly:
    a, b = LaurentPoly.gens(AB)
    if n % 2:
        s = sum((a ** i * b ** (n - 2 - i) for i in range(n - 1)), LaurentPoly.zero(AB))
        return (a * b) ** (-(n - 3) // 2) * s
    h = n // 2
    return a * sum((b ** j for j in range(1 - h, h)), LaurentPoly.zero(AB))


@dataclass(frozen=True)
class IsotropyRepName:
    """``Det^det_power (x) Sym^sym_power`` for K(n)."""

    n: int
    det_power: Fraction
    sym_power: int

    @property
    def group(self) -> str:
        return "U(2)" if self.n % 2 else "S1xSO(3)"

    @property
    def dimension(self) -> int:
        return self.sym_power + 1

    def character(self) -> LaurentPoly:
        """Expand from the weights of Det and of the symmetric power."""
        a, b = LaurentPoly.gens(AB)
        k = self.sym_power
        if self.n % 2:
            if self.det_power.denominator != 1:
                raise LocalizationError("fractional determinant power")
            det = (a * b) ** int(self.det_power)
            sym = sum((a ** i * b ** (k - i) for i in range(k + 1)), LaurentPoly.zero(AB))
        else:
            det = a ** int(self.det_power)
            # irreducible (k+1)-dimensional SO(3)-representation, k even
            sym = sum((b ** j for j in range(-k // 2, k // 2 + 1)), LaurentPoly.zero(AB))
        return det * sym

    def __str__(self):
        d = self.det_power
        return f"Det^{d} ⊗ Sym^{self.sym_power} of {self.group}"


def isotropy_rep_name(n: int) -> IsotropyRepName:
    if n <= 1:
        raise LocalizationError("the isotropy representation is nontrivial only for n > 1")
    if n % 2:
        return IsotropyRepName(n, Fraction(-(n - 3), 2), n - 2)
    return IsotropyRepName(n, Fraction(1), n - 2)


def weights_of(character: LaurentPoly) -> list:
    """List of exponent vectors, repeated by multiplicity."""
    out = []
    for m, c in character.sorted_terms():
        if c < 0 or c.denominator != 1:
            raise LocalizationError(f"not a genuine character: {character}")
        out.extend([m] * int(c))
    return out


def torus_euler_class(n: int) -> LaurentPoly:
    """Product of the weights of H^{0,1} as linear forms in ``T1, T2``."""
    t1, t2 = LaurentPoly.gens(TORUS)
    e = LaurentPoly.const(1, TORUS)
    for p, q in weights_of(h01_character_standard(n)):
        e = e * (p * t1 + q * t2)
    return e


def invariant_images(n: int) -> dict:
    t1, t2 = LaurentPoly.gens(TORUS)
    if n % 2:
        return {"A": t1 + t2, "X": t1 * t2}
    return {"A": t1, "X": t2 * t2}


def rewrite_invariant(poly: LaurentPoly, n: int) -> LaurentPoly:
    """Write a Weyl-invariant torus polynomial in the generators ``A`` (deg 1) and ``X`` (deg 2)."""
    if not poly.is_homogeneous():
        raise RewriteError("homogeneous input expected")
    d = poly.degree()
    if d < 0:
        return LaurentPoly.zero(INVARIANT)
    images = invariant_images(n)
    candidates = [(d - 2 * j, j) for j in range(d // 2 + 1)]
    expanded = [images["A"] ** i * images["X"] ** j for i, j in candidates]
    monos = sorted({m for p in expanded + [poly] for m in p.terms})
    rows = [[e.coefficient(m) for e in expanded] for m in monos]
    rhs = [poly.coefficient(m) for m in monos]
    sol, _ = linalg.solve(rows, rhs)
    if sol is None:
        raise RewriteError(f"{poly} is not a polynomial in the invariant generators")
    return LaurentPoly({c: s for c, s in zip(candidates, sol)}, INVARIANT)


@dataclass(frozen=True)
class EulerClass:
    n: int
    value: LaurentPoly

    @property
    def coefficients(self) -> str:
        return "Z" if self.n % 2 else "Z[1/2]"

    @property
    def degree(self) -> int:
        """Cohomological degree (|A| = 2, |X| = 4)."""
        return self.value.degree((2, 4))

    def __str__(self):
        return str(self.value)


def euler_class(n: int) -> EulerClass:
    if n <= 1:
        raise LocalizationError("Euler class defined for n > 1")
    return EulerClass(n, rewrite_invariant(torus_euler_class(n), n))


def euler_closed_form(n: int) -> LaurentPoly:
    A, X = LaurentPoly.gens(INVARIANT)
    one = LaurentPoly.const(1, INVARIANT)
    if n % 2:
        out = one
        for i in range(1, (n - 1) // 2 + 1):
            out = out * ((2 * i - 1) ** 2 * X - i * (i - 1) * A * A)
        return out
    out = A
    for i in range(1, n // 2):
        out = out * (A * A - i * i * X)
    return out


def weyl_invariant(poly: LaurentPoly, n: int) -> bool:
    t1, t2 = LaurentPoly.gens(TORUS)
    if n % 2:
        swapped = poly.substitute({"T1": t2, "T2": t1})
    else:
        swapped = poly.substitute({"T1": t1, "T2": -t2})
    return swapped == poly


def verify_euler_nzd(n: int, coefficients: str = "Q") -> bool:
    """Whether ``e_n`` is a non-zero divisor in H*(BK(n); R).

    Odd n: the ring is polynomial, so it is enough that ``e_n`` survives
    reduction of coefficients. Even n: ``A^(n-1)`` has coefficient 1 and
    R[A] is a retract.
    """
    e = euler_class(n).value
    if n % 2 == 0:
        return e.coefficient((n - 1, 0)) == 1
    if coefficients in ("Q", "Z"):
        return not e.is_zero()
    p = linalg.characteristic(coefficients)
    return any(linalg.to_field(c, p) for c in e.terms.values())
