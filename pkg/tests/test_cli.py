import json
import random
import xml.etree.ElementTree as ET
from pathlib import Path

import jsonschema
import pytest

from desargues.cli import run
from desargues.projective import PAIRS, TRIPLES, Plane, build_configuration, pair_label, triple_label
from desargues.serialize import configuration_from_dict

SCHEMA_DIR = Path(__file__).resolve().parents[1] / "schema"


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def schema(name):
    return json.loads((SCHEMA_DIR / f"{name}.schema.json").read_text())


def test_classify_kind1(capsys):
    code, out, _ = call(capsys, "classify", "--plane", "1,1,1,-3")
    assert code == 0
    assert out == "degenerate kind 1; divisor: 6-fold point (1:1:1:1); not semistable"


def test_iso_transposition(capsys):
    assert call(capsys, "iso", "--plane", "1,2,3,4", "--plane2", "2,1,3,4")[:2] == (0, "(1 2)")


def test_iso_none(capsys):
    assert call(capsys, "iso", "--plane", "1,2,3,4", "--plane2", "1,2,3,5")[:2] == (0, "none")


def test_canon(capsys):
    assert call(capsys, "canon", "--plane", "2,4,6,8")[:2] == (0, "1,-10,2,3")


def test_stable(capsys):
    code, out, _ = call(capsys, "stable", "--sextic", "0,0,0,1,0,0,0")
    assert code == 0 and out.startswith("unstable")


def test_phi_text(capsys):
    code, out, _ = call(capsys, "phi", "--plane", "1,-1,2,3")
    assert code == 0 and "stable: true" in out and "x2" in out


def test_fiber_text(capsys):
    code, out, _ = call(capsys, "fiber", "--sextic", "0,48,0,0,48,0,0")
    assert code == 0 and out.splitlines()[0] == "total multiplicity 5"


MALFORMED = [
    (["classify", "--plane", "1,2,3"], 2),
    (["classify", "--plane", "1,2,3,4,5"], 2),
    (["classify", "--plane", "1,x,3,4"], 2),
    (["classify", "--plane", "1,2,,4"], 2),
    (["classify", "--plane", "1//2,1,1,1"], 2),
    (["classify", "--plane", "0,0,0,0"], 2),
    (["classify"], 2),
    (["classify", "--plane"], 2),
    (["nosuchcommand"], 2),
    ([], 2),
    (["phi", "--plane", "1,sqrt(,2,3"], 2),
    (["phi", "--plane", "1,1,1,-3"], 1),
    (["phi", "--plane", "1,2,0,0"], 1),
    (["stable", "--sextic", "1,2,3"], 2),
    (["stable", "--sextic", "0,0,0,0,0,0,0"], 2),
    (["fiber", "--sextic", "a,0,0,0,0,0,1"], 2),
    (["iso", "--plane", "1,2,3,4"], 2),
    (["iso", "--plane", "1,2,3,4", "--plane2", "1,2,3"], 2),
    (["canon", "--plane", "1,2,3,4", "--bogus"], 2),
    (["plot", "--plane", "1,2,3,4", "--out", "/nonexistent-dir/x.svg"], 1),
]


@pytest.mark.parametrize("argv,code", MALFORMED, ids=[" ".join(a) or "empty" for a, _ in MALFORMED])
def test_malformed_corpus(capsys, argv, code):
    got, out, err = call(capsys, *argv)
    assert got == code
    assert err.strip()


def test_malformed_scalar_position(capsys):
    _, _, err = call(capsys, "classify", "--plane", "1,2,zz,4")
    assert "position 3" in err and "column 5" in err


def test_config_round_trip(capsys):
    rng = random.Random(99)
    done = 0
    while done < 100:
        a = [rng.randint(-20, 20) for _ in range(4)]
        if not any(a):
            continue
        code, out, _ = call(capsys, "config", "--plane", ",".join(map(str, a)))
        assert code == 0
        d = json.loads(out)
        jsonschema.validate(d, schema("config"))
        assert configuration_from_dict(d) == build_configuration(Plane(a))
        done += 1


@pytest.mark.parametrize("name,argv", [
    ("classify", ["classify", "--plane", "1,2,0,0", "--json"]),
    ("classify", ["classify", "--plane", "1,-1,-1,3", "--json"]),
    ("phi", ["phi", "--plane", "1,2,3,5", "--json"]),
    ("stable", ["stable", "--sextic", "1,0,0,0,0,-1,0", "--json"]),
    ("fiber", ["fiber", "--sextic", "0,1,0,0,-1,0,0", "--json"]),
    ("iso", ["iso", "--plane", "1,2,3,4", "--plane2", "2,1,3,4", "--json"]),
    ("canon", ["canon", "--plane", "1,2,3,4", "--json"]),
])
def test_json_outputs_match_schema(capsys, name, argv):
    code, out, _ = call(capsys, *argv)
    assert code == 0
    jsonschema.validate(json.loads(out), schema(name))


def _ids(path):
    root = ET.parse(path).getroot()
    assert root.tag.endswith("svg")
    return {el.get("id") for el in root.iter() if el.get("id")}


@pytest.mark.parametrize("alpha", ["1,2,3,4", "1,-1,2,3", "3,-1,5,7"])
def test_plot_svg_structure(capsys, tmp_path, alpha):
    out = tmp_path / "c.svg"
    code, _, _ = call(capsys, "plot", "--plane", alpha, "--out", str(out))
    assert code == 0
    ids = _ids(out)
    assert {pair_label(p) for p in PAIRS} <= ids
    assert {triple_label(t) for t in TRIPLES} <= ids


def test_verify_quick_report(capsys, tmp_path):
    code, out, _ = call(capsys, "verify-paper", "--quick", "--corrected", "--report", str(tmp_path))
    assert code == 0
    assert "criterion 11" in out
    rows = (tmp_path / "verify.tsv").read_text().splitlines()
    assert rows[0].split("\t")[:3] == ["criterion", "check", "role"]
    for name in ("timings.svg", "sextic_roots.svg", "config_1_2_3_4.svg"):
        ET.parse(tmp_path / name)


def test_leading_negative_value(capsys):
    assert call(capsys, "classify", "--plane", "-1,1,1,3")[:2] == (0, "special S12 S13")
