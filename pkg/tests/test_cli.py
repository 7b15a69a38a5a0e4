import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from ruledsymp import catalog, localization
from ruledsymp.algebra import parse_poly
from ruledsymp.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def poly_records(obj):
    """Every ``{"text", "variables"}`` leaf of a JSON document."""
    if isinstance(obj, dict):
        if set(obj) == {"text", "variables"}:
            yield obj
        else:
            for v in obj.values():
                yield from poly_records(v)
    elif isinstance(obj, list):
        for v in obj:
            yield from poly_records(v)


def test_index_zero():
    code, out, _ = call("index", "0")
    assert code == 0
    first = out.splitlines()[0]
    assert first.startswith("I(0) = ")
    x, y = parse_poly("x", ("x", "y")), parse_poly("y", ("x", "y"))
    assert parse_poly(first[len("I(0) = "):], ("x", "y")) == 2 + y + y ** -1 + x + x ** -1


def test_euler_four():
    code, out, _ = call("euler", "4")
    assert code == 0 and out.startswith("e_4 = A^3 - A*X")


def test_psi_and_relation():
    code, out, _ = call("psi", "3")
    assert code == 0 and "T -> 3*A3" in out and "kernel = (-2*T^2 + 9*X)" in out
    code, out, _ = call("relation", "--l", "1", "--family", "untwisted")
    assert code == 0 and "(T) * (T^2 + X - Y)" in out


def test_polygon():
    code, out, _ = call("polygon", "2", "--lambda", "3/2")
    assert code == 0 and "μ = 5/2" in out


def test_bg_text_and_json():
    code, out, _ = call("bg", "--lambda", "3/2", "--family", "untwisted", "--max-degree", "12")
    assert code == 0 and "(1 - t^6)/((1 - t^2)(1 - t^4)^2)" in out
    code, out, _ = call("bg", "--lambda", "2", "--family", "twisted", "--coeff", "F2", "--max-degree", "10", "--json")
    rec = json.loads(out)
    assert code == 0 and rec["mayer_vietoris_dims"] == rec["group_dims"]


@pytest.mark.parametrize("argv", [
    ("bogus",),
    ("index",),
    ("index", "-1"),
    ("euler", "1"),
    ("polygon", "4", "--lambda", "1"),
    ("bg", "--lambda", "0"),
    ("bg", "--lambda", "1", "--coeff", "F7"),
    ("verify", "--suite", "nope"),
])
def test_usage_errors_exit_two(argv):
    assert call(*argv)[0] == 2


def test_verify_exit_codes(monkeypatch):
    assert call("verify", "--suite", "karshon")[0] == 0
    from ruledsymp import verify
    failing = verify.Check("forced", "1", "2", "test", False)
    monkeypatch.setitem(verify.SUITES, "karshon", (9, lambda bound, rng: [failing]))
    code, out, _ = call("verify", "--suite", "karshon")
    assert code == 1 and "FAIL" in out


def test_verify_is_deterministic():
    a = call("verify", "--suite", "connectivity", "--no-timing", "--json")[1]
    b = call("verify", "--suite", "connectivity", "--no-timing", "--json")[1]
    assert a == b
    assert json.loads(a)["status"] == "ok"


@pytest.mark.parametrize("argv", [
    ("index", "5"), ("euler", "7"), ("psi", "6"), ("relation", "--l", "3", "--family", "twisted"),
    ("bg", "--lambda", "5/2", "--max-degree", "10"),
])
def test_json_round_trip(argv):
    code, out, _ = call(*argv, "--json")
    assert code == 0
    doc = json.loads(out)
    records = list(poly_records(doc))
    assert records
    for rec in records:
        p = parse_poly(rec["text"], rec["variables"])
        assert str(p) == rec["text"]


def test_polygon_json_round_trip():
    from ruledsymp.torus import HirzebruchParams, MomentPolygon, moment_polygon
    doc = json.loads(call("polygon", "3", "--lambda", "5/2", "--json")[1])
    assert MomentPolygon.from_record(doc) == moment_polygon(HirzebruchParams(3, Fraction(5, 2)))
    assert doc["lambda"] == "5/2"


def test_json_values_match_library():
    doc = json.loads(call("euler", "9", "--json")[1])
    assert parse_poly(doc["euler"]["text"], doc["euler"]["variables"]) == localization.euler_class(9).value
    doc = json.loads(call("relation", "--l", "2", "--json")[1])
    assert parse_poly(doc["relation"]["text"], ("T", "X", "Y")) == catalog.relation_polynomial(2, "untwisted")


def test_catalog_dump_is_stable_and_parseable():
    code, out, _ = call("catalog-dump")
    assert code == 0
    doc = json.loads(out)
    assert doc == json.loads(call("catalog-dump")[1])
    keys = {(r["object"], json.dumps(r["key"]), r["family"], r["coefficients"]) for r in doc["records"]}
    assert len(keys) == len(doc["records"])
    for rec in poly_records(doc):
        assert str(parse_poly(rec["text"], rec["variables"])) == rec["text"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ruledsymp", "euler", "3"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("e_3 = X")
