"""Exact row reduction over Q (``p == 0``) or a prime field F_p."""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


FIELDS = {"Q": 0, "F2": 2, "F3": 3}


def characteristic(field: str) -> int:
    try:
        return FIELDS[field]
    except KeyError:
        raise FieldError(f"unknown field {field!r}; expected one of {sorted(FIELDS)}") from None


def to_field(c, p: int):
    if p == 0:
        return Fraction(c)
    c = Fraction(c)
    if c.denominator % p == 0:
        raise FieldError(f"coefficient {c} is not defined over F_{p}")
    return c.numerator * pow(c.denominator, -1, p) % p


def _inv(a, p):
    return 1 / a if p == 0 else pow(a, -1, p)


class Echelon:
    """Incrementally maintained reduced row echelon form.

    Rows are dense lists of length ``ncols`` with entries already in the field.
    """

    def __init__(self, ncols: int, p: int = 0):
        self.ncols = ncols
        self.p = p
        self.rows: list = []
        self.pivots: list = []

    def reduce(self, vec) -> list:
        v = list(vec)
        p = self.p
        for row, piv in zip(self.rows, self.pivots):
            a = v[piv]
            if a:
                if p:
                    v = [(x - a * y) % p for x, y in zip(v, row)]
                else:
                    v = [x - a * y for x, y in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        """Insert a row; return False when it was already in the span."""
        v = self.reduce(vec)
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            return False
        inv = _inv(v[piv], self.p)
        v = [(x * inv) % self.p for x in v] if self.p else [x * inv for x in v]
        # keep the form reduced so that ``reduce`` yields canonical residues
        for k, row in enumerate(self.rows):
            a = row[piv]
            if a:
                if self.p:
                    self.rows[k] = [(x - a * y) % self.p for x, y in zip(row, v)]
                else:
                    self.rows[k] = [x - a * y for x, y in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(piv)
        return True

    @property
    def rank(self) -> int:
        return len(self.rows)

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))


def rank(rows, ncols: int, p: int = 0) -> int:
    ech = Echelon(ncols, p)
    for r in rows:
        ech.add(r)
    return ech.rank


def nullspace(rows, ncols: int, p: int = 0) -> list:
    """Basis of ``{x : rows @ x = 0}``."""
    ech = Echelon(ncols, p)
    for r in rows:
        ech.add(r)
    pivset = set(ech.pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        x = [0] * ncols
        x[free] = 1
        for row, piv in zip(ech.rows, ech.pivots):
            x[piv] = (-row[free]) % p if p else -row[free]
        basis.append(x)
    return basis


def solve(rows, rhs, p: int = 0):
    """Solve ``rows @ x = rhs``; returns ``(x, nullity)`` or ``(None, nullity)`` if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    ech = Echelon(ncols + 1, p)
    for r, b in zip(rows, rhs):
        ech.add(list(r) + [b])
    if ncols in ech.pivots:
        return None, ncols - (ech.rank - 1)
    x = [Fraction(0) if p == 0 else 0] * ncols
    for row, piv in zip(ech.rows, ech.pivots):
        x[piv] = row[ncols]
    return x, ncols - ech.rank
