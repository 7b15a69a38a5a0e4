"""Acceptance suites: one suite per acceptance criterion, each a list of checks."""

from __future__ import annotations

import random
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable

from . import catalog, graded, localization, torus
from .algebra import (
    LaurentPoly,
    NotDivisible,
    StructuredRationalFunction,
    divide_exact,
    rational_series_equal,
    series_of_rational,
)


@dataclass
class Check:
    name: str
    expected: str
    actual: str
    source: str
    ok: bool


@dataclass
class SuiteResult:
    suite: str
    criterion: int
    checks: list
    seconds: float
    error: str | None = None

    @property
    def ok(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)


@dataclass
class Report:
    suites: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.suites)

    @property
    def status(self) -> str:
        return "ok" if self.ok else "fail"

    def to_record(self, timing: bool = True) -> dict:
        out = {"status": self.status, "suites": []}
        for s in self.suites:
            rec = {
                "suite": s.suite,
                "criterion": s.criterion,
                "status": "ok" if s.ok else "fail",
                "checks": [asdict(c) for c in s.checks],
            }
            if s.error:
                rec["error"] = s.error
            if timing:
                rec["seconds"] = round(s.seconds, 3)
            out["suites"].append(rec)
        return out


def _check(name, expected, actual, source, ok=None) -> Check:
    if ok is None:
        ok = expected == actual
    return Check(name, str(expected), str(actual), source, bool(ok))


def _timed(checks, label, limit, started):
    elapsed = time.perf_counter() - started
    checks.append(_check(label, f"< {limit} s", "within limit" if elapsed < limit else f"{elapsed:.2f} s",
                         "runtime", elapsed < limit))


# -- criteria -------------------------------------------------------------

def suite_index(bound, rng):
    started = time.perf_counter()
    checks = []
    x, y = LaurentPoly.gens(localization.XY)
    checks.append(_check("I(0) displayed", 2 + y + y ** -1 + x + x ** -1,
                         localization.atiyah_bott_index(0).value, "displayed"))
    i1 = 2 + y + y ** -1 + x ** -1 * y ** -1 + x ** -1
    checks.append(_check("I(1) displayed", i1, localization.atiyah_bott_index(1).value, "displayed"))
    for n in range(13):
        checks.append(_check(f"I({n}) closed form", localization.index_closed_form(n),
                             localization.atiyah_bott_index(n).value, "displayed"))
    _timed(checks, "runtime", 1, started)
    return checks


def suite_dimensions(bound, rng):
    checks = []
    for n in range(1, 13):
        pos, neg = localization.split_index(localization.atiyah_bott_index(n))
        checks.append(_check(f"dim H^(0,1) n={n}", n - 1, localization.character_dimension(neg), "displayed"))
        checks.append(_check(f"dim H^0 n={n}", n + 5, localization.character_dimension(pos), "displayed"))
    return checks


def suite_characters(bound, rng):
    checks = []
    for n in range(2, 13):
        h = localization.h01_character_standard(n)
        checks.append(_check(f"weights n={n}", localization.h01_closed_form(n), h, "displayed"))
        rep = localization.isotropy_rep_name(n)
        checks.append(_check(f"{rep} n={n}", rep.character(), h, "displayed"))
    return checks


def suite_euler(bound, rng):
    checks = []
    for n in range(2, 13):
        e = localization.euler_class(n)
        checks.append(_check(f"e_{n}", localization.euler_closed_form(n), e.value, "displayed"))
        for fld in ("Q", "F2", "F3"):
            checks.append(_check(f"e_{n} non-zero divisor over {fld}", True,
                                 localization.verify_euler_nzd(n, fld), "displayed"))
        fam = "untwisted" if n % 2 == 0 else "twisted"
        k = n // 2
        codim = catalog.strata(k + Fraction(1, 2), fam).codims[k]
        checks.append(_check(f"deg e_{n} = 2(n-1) = codim", (2 * (n - 1), codim), (e.degree, codim),
                             "displayed", e.degree == 2 * (n - 1) == codim))
    return checks


def suite_psi(bound, rng):
    checks = []
    for n in range(2, 13):
        d, p = catalog.derive_psi_star(n), catalog.psi_star(n)
        checks.append(_check(f"derived psi_{n}*", p.images_text(), d.images_text(), "derived"))
    top = min(24, bound)
    for n in range(9):
        k = catalog.certify_kernel(n, top)
        checks.append(_check(f"ker psi_{n}* = ({catalog.kernel_generator(n)}) to degree {top}",
                             k.kernel, k.candidate, "displayed", k.ok))
    return checks


def suite_rings(bound, rng):
    started = time.perf_counter()
    checks = []
    for fam in catalog.FAMILIES:
        for ell in range(6):
            res = catalog.bg_rational_presentation(ell, fam, bound, by_level=True, strict=False)
            for name, ok in res.checks.items():
                checks.append(_check(f"{fam} ℓ={ell}: {name}", True, ok, "displayed"))
            f2 = catalog.gysin_dims(ell, fam, "F2", bound)
            checks.append(_check(f"{fam} ℓ={ell}: F2 Mayer–Vietoris = group table",
                                 catalog.bg_groups_dims(ell, fam, "F2", bound, by_level=True), f2, "displayed"))
    _timed(checks, "runtime", 60, started)
    return checks


def suite_twisted(bound, rng):
    checks = []
    for cert in (catalog.twisted_change_of_variables(), catalog.bg2_twisted(bound)):
        for name, ok in cert.checks:
            checks.append(_check(f"{cert.name}: {name}", True, ok, "displayed"))
    return checks


def suite_modules(bound, rng):
    checks = []
    for ell in range(5):
        _, cert = catalog.main2_generators(ell, bound)
        for name, ok in cert.checks:
            checks.append(_check(f"ℓ={ell}: {name}", True, ok, "displayed"))
    rep = catalog.bfdiff_away_from_2()
    for stage, items in rep.stages.items():
        for name, ok in items:
            checks.append(_check(f"stage {stage}: {name}", True, ok, "displayed"))
    return checks


def karshon_levels(k, l):
    """A few shared λ at which both F_k and F_l exist."""
    base = max(k, l) // 2
    return [Fraction(base) + Fraction(j, 2) for j in (1, 2, 5)]


def suite_karshon(bound, rng):
    checks = []
    for k in range(9):
        for l in range(k, 9, 2):
            for lam in karshon_levels(k, l):
                if not (torus.admissible(k, lam) and torus.admissible(l, lam)):
                    continue
                try:
                    torus.shear_equivalent_circles(k, l, lam)
                    ok, actual = True, "equal"
                except torus.GeometryError as exc:
                    ok, actual = False, str(exc)
                checks.append(_check(f"F_{k} ~ F_{l} at λ={lam}", "equal", actual, "displayed", ok))
    return checks


def random_pair(rng, family):
    lo = 0 if family == "twisted" else 1
    a = Fraction(rng.randint(lo * 4 + 1, 28), 4)
    b = Fraction(rng.randint(lo * 4 + 1, 28), 4)
    return min(a, b), max(a, b)


def suite_connectivity(bound, rng):
    checks = []
    for fam in catalog.FAMILIES:
        for _ in range(10):
            lam, mu = random_pair(rng, fam)
            checks.append(_check(f"{fam} λ={lam}, μ={mu}", True,
                                 catalog.connectivity_check(lam, mu, fam, "Q", bound), "derived"))
    return checks


# -- properties -----------------------------------------------------------

def random_laurent(rng, variables, terms=4, span=3):
    return LaurentPoly([(tuple(rng.randint(-span, span) for _ in variables),
                         Fraction(rng.randint(-5, 5), rng.randint(1, 3))) for _ in range(terms)], variables)


def random_monomial(rng, nvars, span=3):
    while True:
        m = tuple(rng.randint(-span, span) for _ in range(nvars))
        if any(m):
            return m


def catalog_maps(bound):
    maps = [catalog.psi_star(n) for n in range(13)]
    for fam in catalog.FAMILIES:
        for ell in range(1, 6):
            sq = catalog.pushout_square(ell, fam)
            maps += [sq.f, sq.g, sq.restrict, sq.psi]
    return maps


def suite_properties(bound, rng):
    checks = []
    xy = ("x", "y")
    one = LaurentPoly.const(1, xy)
    sound = 0
    for _ in range(1000):
        q = random_laurent(rng, xy)
        m = random_monomial(rng, 2)
        p = (one - LaurentPoly.monomial(m, xy)) * q
        if rng.random() < 0.3:
            p = p + random_laurent(rng, xy, terms=1)
        try:
            r = divide_exact(p, m)
            sound += (one - LaurentPoly.monomial(m, xy)) * r == p
        except NotDivisible:
            # refusal is sound only when p is not a multiple; the multiple case is exact
            sound += p != (one - LaurentPoly.monomial(m, xy)) * q
    checks.append(_check("divide_exact soundness (1000 cases)", 1000, sound, "property"))

    rf_ok = 0
    for _ in range(100):
        m1, m2 = random_monomial(rng, 2), random_monomial(rng, 2)
        r = StructuredRationalFunction.build(random_laurent(rng, xy), [m1])
        s = StructuredRationalFunction.build(random_laurent(rng, xy), [m2, m1])
        t = StructuredRationalFunction.build(one, [m1]) + StructuredRationalFunction.build(
            one, [tuple(-e for e in m1)])
        poly = random_laurent(rng, xy)
        lifted = StructuredRationalFunction.build(
            poly * (one - LaurentPoly.monomial(m1, xy)) * (one - LaurentPoly.monomial(m2, xy)), [m1, m2])
        rf_ok += all((
            ((r + s) - s - r).numerator.is_zero(),
            ((r + s) - (s + r)).numerator.is_zero(),
            t.to_laurent() == one,
            lifted.to_laurent() == poly,
        ))
    checks.append(_check("rf identities (100 cases)", 100, rf_ok, "property"))

    t = ("t",)
    series_ok = 0
    for _ in range(100):
        num = LaurentPoly([((rng.randint(0, 6),), rng.randint(-4, 4)) for _ in range(3)], t)
        den = LaurentPoly([((0,), rng.choice([1, -1, 2]))] +
                          [((rng.randint(1, 6),), rng.randint(-3, 3)) for _ in range(2)], t)
        extra = LaurentPoly([((0,), 1), ((rng.randint(1, 4),), rng.randint(-2, 2))], t)
        a = series_of_rational(num, den, 20)
        b = series_of_rational(num * extra, den * extra, 20)
        series_ok += a == b and rational_series_equal(num, den, num * extra, den * extra)
    checks.append(_check("series cross-multiplication (100 cases)", 100, series_ok, "property"))

    rn_ok, total = 0, 0
    top = min(bound, 20)
    for f in catalog_maps(bound):
        im = graded.image_dims(f, top)
        for d in range(top + 1):
            total += 1
            rn_ok += len(graded.kernel_basis(f, d)) + im[d] == f.source.quotient(d).dim
    checks.append(_check("rank-nullity on catalog maps", total, rn_ok, "property"))

    mv_ok, total = 0, 0
    for fam in catalog.FAMILIES:
        for ell in range(1, 6):
            sq = catalog.pushout_square(ell, fam)
            fp = graded.fiber_product_dims(sq.f, sq.g, bound)
            a, b, c = sq.f.source.dims(bound), sq.g.source.dims(bound), sq.g.target.dims(bound)
            total += 1
            mv_ok += all(fp[d] + c[d] == a[d] + b[d] for d in range(bound + 1))
    checks.append(_check("Mayer–Vietoris identity on pushout squares", total, mv_ok, "property"))

    series_total, series_ok = 0, 0
    for fam in catalog.FAMILIES:
        for ell in range(6):
            series_total += 1
            try:
                graded.hilbert_series(catalog.bg_ring(ell, fam), bound)
                series_ok += 1
            except graded.RegularityCheckFailed:
                pass
    checks.append(_check("Hilbert series = monomial count on catalog rings", series_total, series_ok,
                         "property"))

    ring = graded.GradedRingPresentation((("u", 2), ("v", 2), ("w", 2)))
    u, v, w = ring.gens()
    sigma = graded.RingInvolution(ring, {"u": u, "v": -v, "w": w})
    plus = [len(b) for b in graded.invariant_subring(sigma, 12)]
    minus = graded.anti_invariant_dims(sigma, 12)
    checks.append(_check("eigenspaces of τ2 fill the ring", ring.dims(12),
                         tuple(a + b for a, b in zip(plus, minus)), "property"))

    xyz = ("x", "y", "z")
    rel = catalog.main2_ring(2).relations[0]
    nf_ok = 0
    for _ in range(50):
        p = LaurentPoly([(tuple(rng.randint(0, 3) for _ in xyz), rng.randint(-3, 3)) for _ in range(3)], xyz)
        q = LaurentPoly([(tuple(rng.randint(0, 3) for _ in xyz), rng.randint(-3, 3)) for _ in range(3)], xyz)
        nf = lambda e: graded.reduce_mod_monic(e, rel, "z")  # noqa: E731
        nf_ok += nf(nf(p)) == nf(p) and nf(p * q) == nf(nf(p) * nf(q))
    checks.append(_check("reduce_mod_monic idempotent and multiplicative", 50, nf_ok, "property"))
    return checks


SUITES: dict = {
    "index": (1, suite_index),
    "dimensions": (2, suite_dimensions),
    "characters": (3, suite_characters),
    "euler": (4, suite_euler),
    "psi": (5, suite_psi),
    "rings": (6, suite_rings),
    "twisted": (7, suite_twisted),
    "modules": (8, suite_modules),
    "karshon": (9, suite_karshon),
    "connectivity": (10, suite_connectivity),
    "properties": (11, suite_properties),
}


def run_suite(name: str, bound: int | None = None, seed: int = 0) -> SuiteResult:
    criterion, fn = SUITES[name]
    bound = graded.configured_max_degree() if bound is None else bound
    rng = random.Random(f"{name}:{seed}")
    started = time.perf_counter()
    try:
        checks = fn(bound, rng)
        error = None
    except Exception as exc:  # a crashing suite is a failing suite
        checks, error = [], f"{type(exc).__name__}: {exc}"
    return SuiteResult(name, criterion, checks, time.perf_counter() - started, error)


def run(suites="all", bound: int | None = None, seed: int = 0,
        progress: Callable | None = None) -> Report:
    names = list(SUITES) if suites in ("all", None) else [suites] if isinstance(suites, str) else list(suites)
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise KeyError(f"unknown suite(s): {unknown}")
    report = Report()
    for name in names:
        result = run_suite(name, bound, seed)
        report.suites.append(result)
        if progress:
            progress(result)
    return report
