"""Command-line front end: ``ruledsymp <verb> ...``.

Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction

from . import catalog, graded, localization, torus, verify
from .algebra import AlgebraError, LaurentPoly

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def poly_record(p: LaurentPoly) -> dict:
    return {"text": str(p), "variables": list(p.variables)}


def frac_text(x) -> str:
    return str(Fraction(x))


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def nonnegative(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 0:
        raise argparse.ArgumentTypeError("expected a nonnegative integer")
    return n


def series_text(numerator_degrees, generator_degrees, var="t") -> str:
    def factor(d):
        return f"(1 - {var}^{d})"

    num = "".join(factor(d) for d in numerator_degrees) or "1"
    den = ""
    for d, k in sorted(Counter(generator_degrees).items()):
        den += factor(d) + (f"^{k}" if k > 1 else "")
    return f"{num}/({den})" if len(generator_degrees) > 1 else f"{num}/{den}"


# -- verbs ----------------------------------------------------------------

def cmd_index(args):
    chi = localization.atiyah_bott_index(args.n)
    pos, neg = localization.split_index(chi)
    rec = {
        "n": args.n,
        "index": poly_record(chi.value),
        "H0": poly_record(pos),
        "H01": poly_record(neg),
        "dim_H0": localization.character_dimension(pos),
        "dim_H01": localization.character_dimension(neg),
    }
    lines = [
        f"I({args.n}) = {chi.value}",
        f"H^0    = {pos}   (dim {rec['dim_H0']})",
        f"H^0,1  = {neg}   (dim {rec['dim_H01']})",
    ]
    if args.n >= 2:
        std = localization.h01_character_standard(args.n)
        rep = localization.isotropy_rep_name(args.n)
        rec["H01_standard"] = poly_record(std)
        rec["representation"] = str(rep)
        lines.append(f"H^0,1 in standard weights = {std}  =  {rep}")
    return rec, lines, EXIT_OK


def cmd_euler(args):
    e = localization.euler_class(args.n)
    rec = {"n": args.n, "euler": poly_record(e.value), "degree": e.degree, "coefficients": e.coefficients}
    return rec, [f"e_{args.n} = {e.value}   (degree {e.degree}, over {e.coefficients})"], EXIT_OK


def cmd_polygon(args):
    params = torus.HirzebruchParams(args.n, args.lam)
    poly = torus.moment_polygon(params)
    weights = torus.fixed_point_weights(poly)
    rec = poly.to_record(args.n, args.lam)
    rec["weights"] = {lab: [list(w) for w in pair] for lab, pair in zip(weights.labels, weights.weights)}
    lines = [f"F_{args.n} at λ = {frac_text(args.lam)} (μ = {frac_text(params.mu)})"]
    mono = weights.as_monomials()
    for lab, v in zip(poly.labels, poly.vertices):
        w1, w2 = mono[lab]
        lines.append(f"  {lab} = ({frac_text(v[0])}, {frac_text(v[1])})   weights {w1}, {w2}")
    return rec, lines, EXIT_OK


def cmd_psi(args):
    psi = catalog.psi_star(args.n)
    gen = catalog.kernel_generator(args.n)
    rec = {
        "n": args.n,
        "group": catalog.isometry_group(args.n),
        "images": {g: poly_record(p) for g, p in psi.images.items()},
        "kernel_generator": poly_record(gen),
    }
    lines = [f"psi_{args.n}*: H*(BFDiff) -> H*(BK({args.n})),  K({args.n}) = {rec['group']}"]
    lines += [f"  {g} -> {p}" for g, p in psi.images.items()]
    lines.append(f"kernel = ({gen})")
    return rec, lines, EXIT_OK


def cmd_relation(args):
    r = catalog.relation_polynomial(args.l, args.family)
    factors = [catalog.relation_factor(i, args.family) for i in range(args.l + 1)]
    rec = {
        "l": args.l,
        "family": args.family,
        "relation": poly_record(r),
        "degree": catalog.relation_degree(args.l, args.family),
        "factors": [poly_record(f) for f in factors],
        "kernel_scalars": [frac_text(s) for _, _, s in catalog.factor_scalars(args.l, args.family)],
    }
    lines = [f"R_{args.l} ({args.family}, degree {rec['degree']}) = " + " * ".join(f"({f})" for f in factors),
             f"  expanded: {r}"]
    return rec, lines, EXIT_OK


def cmd_bg(args):
    bound = args.max_degree
    info = catalog.strata(args.lam, args.family)
    ell = info.ell
    groups = catalog.bg_groups_dims(ell, args.family, args.coeff, bound, by_level=True)
    rec = {
        "lambda": frac_text(args.lam),
        "family": args.family,
        "coefficients": args.coeff,
        "l": ell,
        "m": info.m,
        "codims": {str(k): v for k, v in info.codims.items()},
        "group_dims": list(groups),
    }
    lines = [f"{args.family} λ = {frac_text(args.lam)}: ℓ = {ell}, m = {info.m}, "
             f"strata codimensions {info.codims}"]
    status = EXIT_OK
    if args.coeff == "F2":
        mv = catalog.gysin_dims(ell, args.family, "F2", bound)
        rec["mayer_vietoris_dims"] = list(mv)
        rec["checks"] = {"Mayer–Vietoris dims match group table": mv == groups}
        lines.append("coefficients F2: additive structure only")
    else:
        res = catalog.bg_rational_presentation(ell, args.family, bound, by_level=True, strict=False)
        rec["presentation"] = {
            "generators": [[n, d] for n, d in res.ring.generators],
            "relations": [poly_record(r) for r in res.ring.relations],
        }
        rec["series"] = series_text(res.ring.relation_degrees, res.ring.degrees)
        rec["dims"] = list(res.dims)
        rec["checks"] = dict(res.checks)
        lines.append(f"H*(BG; Q) = {res.ring.describe()}")
        lines.append(f"Hilbert series = {rec['series']}")
        if args.coeff == "Z1/2" and args.family == "untwisted":
            names = ", ".join(catalog.main2_basis(ell))
            lines.append(f"over Z[1/2]: free Z[1/2][x,y]-module on {names} (x = X, y = Y, z = T)")
    lines.append(f"dims 0..{bound}: {' '.join(str(d) for d in groups)}")
    for name, ok in rec["checks"].items():
        lines.append(f"  [{'ok' if ok else 'FAIL'}] {name}")
    if not all(rec["checks"].values()):
        status = EXIT_FAIL
    return rec, lines, status


def cmd_verify(args):
    try:
        report = verify.run(args.suite, args.max_degree, args.seed)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    rec = report.to_record(timing=not args.no_timing)
    lines = []
    for s in report.suites:
        lines.append(f"[{'PASS' if s.ok else 'FAIL'}] criterion {s.criterion:2d} {s.suite:<13} "
                     f"{sum(c.ok for c in s.checks)}/{len(s.checks)} checks"
                     + ("" if args.no_timing else f"  ({s.seconds:.2f} s)"))
        if s.error:
            lines.append(f"    error: {s.error}")
        for c in s.checks:
            if args.verbose or not c.ok:
                lines.append(f"    [{'ok' if c.ok else 'FAIL'}] {c.name}: expected {c.expected}, got {c.actual}")
    lines.append(f"status: {report.status}")
    return rec, lines, EXIT_OK if report.ok else EXIT_FAIL


def catalog_records(max_n: int = 12, max_l: int = 5) -> list:
    out = []

    def add(obj, key, family, coeff, value):
        out.append({"object": obj, "key": key, "family": family, "coefficients": coeff, "value": value})

    for n in range(max_n + 1):
        chi = localization.atiyah_bott_index(n)
        add("index", {"n": n}, None, "Z", poly_record(chi.value))
        lam = Fraction(n // 2 + 1)
        add("polygon", {"n": n}, None, None, torus.moment_polygon(torus.HirzebruchParams(n, lam)).to_record(n, lam))
        psi = catalog.psi_star(n)
        add("psi_star", {"n": n}, None, "Q", {g: poly_record(p) for g, p in psi.images.items()})
        add("kernel_generator", {"n": n}, None, "Q", poly_record(catalog.kernel_generator(n)))
        if n >= 2:
            add("h01_standard", {"n": n}, None, "Z", poly_record(localization.h01_character_standard(n)))
            e = localization.euler_class(n)
            add("euler_class", {"n": n}, None, e.coefficients, poly_record(e.value))
    for fam in catalog.FAMILIES:
        for ell in range(max_l + 1):
            add("relation", {"l": ell}, fam, "Q", poly_record(catalog.relation_polynomial(ell, fam)))
            for fld in ("Q", "F2"):
                add("group_dims", {"l": ell}, fam, fld,
                    list(catalog.bg_groups_dims(ell, fam, fld, 30, by_level=True)))
    return out


def cmd_catalog_dump(args):
    records = catalog_records()
    return {"records": records}, [json.dumps({"records": records}, indent=1, ensure_ascii=False)], EXIT_OK


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit a JSON document instead of text")

    parser = argparse.ArgumentParser(prog="ruledsymp", parents=[common],
                                     description="Exact computations for symplectomorphism groups of ruled surfaces.")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", required=True)

    p = sub.add_parser("index", parents=[common], help="index character I(n) and its split")
    p.add_argument("n", type=nonnegative)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("euler", parents=[common], help="Euler class e_n of the isotropy representation")
    p.add_argument("n", type=nonnegative)
    p.set_defaults(func=cmd_euler)

    p = sub.add_parser("polygon", parents=[common], help="moment polygon and fixed-point weights of F_n")
    p.add_argument("n", type=nonnegative)
    p.add_argument("--lambda", dest="lam", type=parse_fraction, required=True)
    p.set_defaults(func=cmd_polygon)

    p = sub.add_parser("psi", parents=[common], help="the map psi_n* and its kernel")
    p.add_argument("n", type=nonnegative)
    p.set_defaults(func=cmd_psi)

    p = sub.add_parser("relation", parents=[common], help="the relation R_l")
    p.add_argument("--l", type=nonnegative, required=True)
    p.add_argument("--family", choices=catalog.FAMILIES, default="untwisted")
    p.set_defaults(func=cmd_relation)

    default_d = graded.configured_max_degree()
    p = sub.add_parser("bg", parents=[common], help="cohomology of BG_λ")
    p.add_argument("--lambda", dest="lam", type=parse_fraction, required=True)
    p.add_argument("--family", choices=catalog.FAMILIES, default="untwisted")
    p.add_argument("--coeff", choices=("Q", "F2", "Z1/2"), default="Q")
    p.add_argument("--max-degree", type=nonnegative, default=default_d)
    p.set_defaults(func=cmd_bg)

    p = sub.add_parser("verify", parents=[common], help="run acceptance suites")
    p.add_argument("--suite", default="all", help=f"one of: all, {', '.join(verify.SUITES)}")
    p.add_argument("--max-degree", type=nonnegative, default=default_d)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-timing", action="store_true", help="omit timings (byte-identical reports)")
    p.add_argument("-v", "--verbose", action="store_true", help="list every check")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog-dump", parents=[common], help="JSON catalog of all computed objects")
    p.set_defaults(func=cmd_catalog_dump)
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) if exc.code in (0, None) else EXIT_USAGE
    as_json = getattr(args, "json", False)
    try:
        rec, lines, code = args.func(args)
    except (UsageError, ValueError, AlgebraError) as exc:
        # domain errors (inadmissible λ, n out of range, ...) are usage errors
        print(f"ruledsymp {args.verb}: error: {exc}", file=err)
        return EXIT_USAGE
    if as_json:
        json.dump(rec, out, indent=1, sort_keys=True, ensure_ascii=False)
        out.write("\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main() -> None:
    sys.exit(run())
