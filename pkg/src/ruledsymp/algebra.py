"""Exact Laurent polynomials, structured rational functions and truncated series.

Coefficients are :class:`fractions.Fraction`. A monomial is a plain tuple of
integer exponents aligned with the ``variables`` of its polynomial; negative
exponents are allowed everywhere.

Canonical text form: terms in descending lexicographic order of exponent
vectors, ``^`` for every exponent other than 1 (``x^-1`` for inverses), ``*``
between factors and ``p/q`` for non-integral coefficients, e.g.
``1/2*x^2*y^-1 - x + 3``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]


class AlgebraError(ValueError):
    pass


class VariableMismatch(AlgebraError):
    pass


class NotDivisible(AlgebraError):
    pass


class NotPolynomial(AlgebraError):
    pass


def _coerce(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)):
        return Fraction(c)
    raise TypeError(f"exact coefficient expected, got {type(c).__name__}")


def lex_positive(m: Monomial) -> bool:
    for e in m:
        if e:
            return e > 0
    return False


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_inv(a: Monomial) -> Monomial:
    return tuple(-x for x in a)


class LaurentPoly:
    """Immutable Laurent polynomial with rational coefficients."""

    __slots__ = ("_vars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, object] | Iterable, variables: Sequence[str]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise AlgebraError(f"repeated variable names in {variables}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict = {}
        n = len(variables)
        for mono, c in items:
            mono = tuple(int(e) for e in mono)
            if len(mono) != n:
                raise AlgebraError(f"exponent vector {mono} does not match variables {variables}")
            c = _coerce(c)
            if c:
                c = clean.get(mono, 0) + c
                if c:
                    clean[mono] = c
                else:
                    clean.pop(mono, None)
        self._vars = variables
        self._terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, variables):
        return cls({}, variables)

    @classmethod
    def const(cls, c, variables):
        variables = tuple(variables)
        return cls({(0,) * len(variables): c}, variables)

    @classmethod
    def var(cls, name, variables):
        variables = tuple(variables)
        mono = tuple(1 if v == name else 0 for v in variables)
        if name not in variables:
            raise VariableMismatch(f"{name!r} is not one of {variables}")
        return cls({mono: 1}, variables)

    @classmethod
    def monomial(cls, exps, variables, coeff=1):
        return cls({tuple(exps): coeff}, variables)

    @classmethod
    def gens(cls, variables):
        variables = tuple(variables)
        return tuple(cls.var(v, variables) for v in variables)

    # basic accessors
    @property
    def variables(self) -> tuple:
        return self._vars

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, mono: Monomial) -> Fraction:
        return self._terms.get(tuple(mono), Fraction(0))

    def constant_term(self) -> Fraction:
        return self.coefficient((0,) * len(self._vars))

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), reverse=True)

    def canonical(self) -> tuple:
        return (self._vars, tuple(self.sorted_terms()))

    def is_polynomial(self) -> bool:
        return all(e >= 0 for m in self._terms for e in m)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self._terms.values())

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def degree(self, weights: Sequence[int] | None = None) -> int:
        """Largest weighted degree of a term (-1 for the zero polynomial)."""
        if not self._terms:
            return -1
        w = weights or (1,) * len(self._vars)
        return max(sum(a * b for a, b in zip(w, m)) for m in self._terms)

    def degrees(self, weights: Sequence[int] | None = None) -> set:
        w = weights or (1,) * len(self._vars)
        return {sum(a * b for a, b in zip(w, m)) for m in self._terms}

    def is_homogeneous(self, weights: Sequence[int] | None = None) -> bool:
        return len(self.degrees(weights)) <= 1

    def var_degree(self, name: str) -> int:
        i = self._index(name)
        return max((m[i] for m in self._terms), default=-1)

    def _index(self, name):
        try:
            return self._vars.index(name)
        except ValueError:
            raise VariableMismatch(f"{name!r} is not one of {self._vars}") from None

    # arithmetic
    def _check(self, other):
        if isinstance(other, LaurentPoly):
            if other._vars != self._vars:
                raise VariableMismatch(f"{self._vars} vs {other._vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return LaurentPoly.const(other, self._vars)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, 0) + c
        return LaurentPoly(terms, self._vars)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({m: -c for m, c in self._terms.items()}, self._vars)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return LaurentPoly({m: c * other for m, c in self._terms.items()}, self._vars)
        other = self._check(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = terms.get(m, 0) + c1 * c2
        return LaurentPoly(terms, self._vars)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / Fraction(other))
        if isinstance(other, LaurentPoly) and len(other) == 1:
            (m, c), = other._terms.items()
            return self * LaurentPoly({mono_inv(m): 1 / c}, self._vars)
        raise TypeError("division only by scalars or single terms; use divide_exact")

    def __pow__(self, k: int):
        if k < 0:
            if len(self) != 1:
                raise NotPolynomial("negative power of a non-monomial")
            (m, c), = self._terms.items()
            return LaurentPoly({tuple(e * k for e in m): Fraction(c) ** k}, self._vars)
        result = LaurentPoly.const(1, self._vars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self._terms == LaurentPoly.const(other, self._vars)._terms
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._vars == other._vars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.canonical())
        return self._hash

    # transformations
    def map_coefficients(self, fn) -> "LaurentPoly":
        return LaurentPoly({m: fn(c) for m, c in self._terms.items()}, self._vars)

    def with_variables(self, variables: Sequence[str]) -> "LaurentPoly":
        """Re-express over another variable list containing every variable in use."""
        variables = tuple(variables)
        pos = []
        for i, v in enumerate(self._vars):
            if v in variables:
                pos.append((i, variables.index(v)))
            elif any(m[i] for m in self._terms):
                raise VariableMismatch(f"{v!r} occurs but is missing from {variables}")
        terms = {}
        for m, c in self._terms.items():
            new = [0] * len(variables)
            for i, j in pos:
                new[j] = m[i]
            terms[tuple(new)] = c
        return LaurentPoly(terms, variables)

    def substitute(self, images: Mapping[str, "LaurentPoly"], variables: Sequence[str] | None = None):
        """Ring substitution; variables without an image map to themselves.

        Images must share one variable list (``variables``, or inferred from them).
        Negative exponents need single-term images.
        """
        if variables is None:
            first = next(iter(images.values()), None)
            variables = first.variables if first is not None else self._vars
        variables = tuple(variables)
        full = {}
        for v in self._vars:
            if v in images:
                img = images[v]
                if img.variables != variables:
                    img = img.with_variables(variables)
                full[v] = img
            else:
                full[v] = LaurentPoly.var(v, variables)
        cache: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in cache:
                cache[key] = full[v] ** e
            return cache[key]

        total = LaurentPoly.zero(variables)
        for m, c in self._terms.items():
            term = LaurentPoly.const(c, variables)
            for v, e in zip(self._vars, m):
                if e:
                    term = term * power(v, e)
            total = total + term
        return total

    def coefficients_in(self, name: str) -> dict:
        """Split by powers of ``name``: exponent -> coefficient polynomial (same variables)."""
        i = self._index(name)
        parts: dict = {}
        for m, c in self._terms.items():
            e = m[i]
            rest = m[:i] + (0,) + m[i + 1:]
            parts.setdefault(e, {})[rest] = c
        return {e: LaurentPoly(t, self._vars) for e, t in parts.items()}

    def positive_part(self) -> "LaurentPoly":
        return LaurentPoly({m: c for m, c in self._terms.items() if c > 0}, self._vars)

    def negative_part(self) -> "LaurentPoly":
        return LaurentPoly({m: c for m, c in self._terms.items() if c < 0}, self._vars)

    def evaluate_at_one(self) -> Fraction:
        return sum(self._terms.values(), Fraction(0))

    # text
    def render(self) -> str:
        return render(self)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPoly({render(self)!r}, {self._vars!r})"


def render_monomial(mono: Monomial, variables: Sequence[str]) -> str:
    parts = []
    for v, e in zip(variables, mono):
        if e == 1:
            parts.append(v)
        elif e:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def render(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for i, (m, c) in enumerate(p.sorted_terms()):
        sign = "-" if c < 0 else "+"
        a = abs(c)
        mono = render_monomial(m, p.variables)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        else:
            body = f"{a}*{mono}"
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


def parse_poly(text: str, variables: Sequence[str]) -> LaurentPoly:
    """Parse an expression such as ``2 + y + 1/y`` or ``x^-1*y^2 - 1/32*z``."""
    import sympy

    variables = tuple(variables)
    symbols = {v: sympy.Symbol(v) for v in variables}
    expr = sympy.sympify(text.replace("^", "**"), locals=symbols)
    expr = sympy.expand(expr)
    terms = {}
    for mono, coeff in expr.as_coefficients_dict().items():
        powers = mono.as_powers_dict()
        exps = []
        for v in variables:
            e = powers.get(symbols[v], 0)
            exps.append(int(e))
        leftover = set(powers) - set(symbols.values()) - {sympy.Integer(1)}
        if leftover:
            raise AlgebraError(f"unknown symbols {leftover} in {text!r}")
        if not coeff.is_Rational:
            raise AlgebraError(f"non-rational coefficient {coeff} in {text!r}")
        c = Fraction(int(coeff.p), int(coeff.q))
        terms[tuple(exps)] = terms.get(tuple(exps), 0) + c
    return LaurentPoly(terms, variables)


def laurent_arith(p: LaurentPoly, q: LaurentPoly, op: str) -> LaurentPoly:
    if p.variables != q.variables:
        raise VariableMismatch(f"{p.variables} vs {q.variables}")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown operation {op!r}")


def divide_exact(p: LaurentPoly, m: Monomial) -> LaurentPoly:
    """Return ``q`` with ``p == (1 - m) * q``, or raise :class:`NotDivisible`.

    Terms of ``p`` are grouped by their coset modulo ``Z*m``; inside a coset the
    problem is univariate in ``M = m`` and the quotient coefficients are the
    prefix sums taken along increasing multiples of ``m``.
    """
    m = tuple(m)
    if len(m) != len(p.variables):
        raise VariableMismatch("monomial length does not match variables")
    pivot = next((i for i, e in enumerate(m) if e), None)
    if pivot is None:
        raise AlgebraError("cannot divide by 1 - 1")
    s = m[pivot]
    cosets: dict = {}
    for mono, c in p.terms.items():
        t = mono[pivot] // s
        rep = tuple(a - t * b for a, b in zip(mono, m))
        cosets.setdefault(rep, {})[t] = c
    q: dict = {}
    for rep, series in cosets.items():
        lo, hi = min(series), max(series)
        acc = Fraction(0)
        for t in range(lo, hi + 1):
            acc += series.get(t, 0)
            if t < hi and acc:
                q[tuple(a + t * b for a, b in zip(rep, m))] = acc
        if acc:
            raise NotDivisible(f"1 - {render_monomial(m, p.variables)} does not divide {p}")
    return LaurentPoly(q, p.variables)


def monomial_substitution(p: LaurentPoly, matrix, variables: Sequence[str] | None = None) -> LaurentPoly:
    """Replace every exponent vector ``v`` by ``matrix @ v``.

    ``matrix`` is a sequence of integer rows (or anything with ``.rows``); the
    result lives over ``variables`` (defaults to the input variables).
    """
    rows = tuple(tuple(r) for r in getattr(matrix, "rows", matrix))
    n = len(p.variables)
    if any(len(r) != n for r in rows):
        raise AlgebraError(f"matrix with {len(rows[0]) if rows else 0} columns cannot act on {n} exponents")
    variables = tuple(variables) if variables is not None else p.variables
    if len(rows) != len(variables):
        raise AlgebraError("matrix rows do not match target variables")
    # a list, so that terms merged by a non-injective map accumulate
    terms = [(tuple(sum(a * b for a, b in zip(r, mono)) for r in rows), c)
             for mono, c in p.terms.items()]
    return LaurentPoly(terms, variables)


@dataclass(frozen=True)
class StructuredRationalFunction:
    """``numerator / prod(1 - m)`` over a multiset of lex-positive monomials ``m``.

    Factors ``1 - m`` with ``m`` lex-negative are rewritten as
    ``-m * (1 - m^-1)`` at construction, the monomial unit being folded into the
    numerator.
    """

    numerator: LaurentPoly
    factors: tuple

    @classmethod
    def build(cls, numerator: LaurentPoly, factors: Iterable[Monomial]) -> "StructuredRationalFunction":
        num = numerator
        norm = []
        n = len(numerator.variables)
        for f in factors:
            f = tuple(f)
            if len(f) != n:
                raise VariableMismatch("factor length does not match variables")
            if not any(f):
                raise ZeroDivisionError("factor 1 - 1 is zero")
            if lex_positive(f):
                norm.append(f)
            else:
                # 1/(1-m) = -m^-1/(1-m^-1)
                inv = mono_inv(f)
                num = num * LaurentPoly({inv: -1}, numerator.variables)
                norm.append(inv)
        return cls(num, tuple(sorted(norm)))

    @property
    def variables(self):
        return self.numerator.variables

    def _expand_to(self, target: Counter) -> LaurentPoly:
        missing = target - Counter(self.factors)
        num = self.numerator
        one = LaurentPoly.const(1, self.variables)
        for f, k in missing.items():
            for _ in range(k):
                num = num * (one - LaurentPoly({f: 1}, self.variables))
        return num

    def __add__(self, other: "StructuredRationalFunction") -> "StructuredRationalFunction":
        if self.variables != other.variables:
            raise VariableMismatch(f"{self.variables} vs {other.variables}")
        common = Counter(self.factors) | Counter(other.factors)
        num = self._expand_to(common) + other._expand_to(common)
        return StructuredRationalFunction(num, tuple(sorted(common.elements())))

    def __neg__(self):
        return StructuredRationalFunction(-self.numerator, self.factors)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other: "StructuredRationalFunction") -> "StructuredRationalFunction":
        return StructuredRationalFunction(self.numerator * other.numerator,
                                          tuple(sorted(self.factors + other.factors)))

    def to_laurent(self) -> LaurentPoly:
        q = self.numerator
        for f in self.factors:
            try:
                q = divide_exact(q, f)
            except NotDivisible:
                raise NotPolynomial(f"{self} is not a Laurent polynomial") from None
        return q

    def __str__(self):
        den = "".join(f"(1 - {render_monomial(f, self.variables) or '1'})" for f in self.factors)
        return f"({self.numerator})/{den}" if den else f"({self.numerator})"


def rf_add(r: StructuredRationalFunction, s: StructuredRationalFunction) -> StructuredRationalFunction:
    return r + s


def rf_to_laurent(r: StructuredRationalFunction) -> LaurentPoly:
    return r.to_laurent()


@dataclass(frozen=True)
class TruncatedSeries:
    coefficients: tuple

    @property
    def bound(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, d):
        return self.coefficients[d]

    def as_ints(self) -> tuple:
        return tuple(int(c) if c.denominator == 1 else c for c in self.coefficients)


def _univariate(p: LaurentPoly) -> dict:
    if len(p.variables) != 1:
        raise AlgebraError("univariate polynomial expected")
    out = {}
    for (e,), c in p.terms.items():
        if e < 0:
            raise AlgebraError("negative power in a power-series numerator/denominator")
        out[e] = c
    return out


def series_of_rational(num: LaurentPoly, den: LaurentPoly, bound: int) -> TruncatedSeries:
    """Power-series coefficients of ``num/den`` in degrees ``0..bound``."""
    n = _univariate(num)
    d = _univariate(den)
    d0 = d.get(0, 0)
    if not d0:
        raise AlgebraError("denominator has zero constant term")
    out = []
    for k in range(bound + 1):
        acc = Fraction(n.get(k, 0))
        for j, c in d.items():
            if 0 < j <= k:
                acc -= c * out[k - j]
        out.append(acc / d0)
    return TruncatedSeries(tuple(out))


def rational_series_equal(n1: LaurentPoly, d1: LaurentPoly, n2: LaurentPoly, d2: LaurentPoly) -> bool:
    return n1 * d2 == n2 * d1


def series_poly(var: str = "t") -> LaurentPoly:
    return LaurentPoly.var(var, (var,))


def one_minus_t(k: int, var: str = "t") -> LaurentPoly:
    return LaurentPoly({(0,): 1, (k,): -1}, (var,))
