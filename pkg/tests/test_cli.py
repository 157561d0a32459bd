import json
import subprocess
import sys
from importlib.resources import files
from pathlib import Path

import jsonschema
import pytest

from conicbundle.cli import main, run
from conicbundle.parser import parse_poly

SCHEMA = json.loads(files("conicbundle").joinpath("schema/output.schema.json").read_text())
GOLDEN = Path(__file__).parent / "golden"


def valid(doc):
    jsonschema.validate(doc, SCHEMA)
    return doc


COMMANDS = [
    (["analyze", "--curve", "lemniscate"], 0),
    (["normalize", "--curve", "f1-sheared"], 0),
    (["construct", "--curve", "lemniscate"], 0),
    (["construct", "--curve", "isolated-node"], 0),
    (["construct", "--section", "w^2", "0", "1"], 0),
    (["verify", "--curve", "f2-split"], 0),
    (["classify", "--family", "eq2a", "--degree", "4", "--curve", "lemniscate.poly"], 0),
    (["classify", "--family", "eq2b", "--degree", "12"], 0),
    (["classify", "--family", "eq2a", "--degree", "8", "--conjectural-mode"], 0),
    (["classify", "--family", "eq1", "--degree", "4"], 0),
    (["residue", "--m", "2", "--e", "1"], 0),
    (["classify", "--family", "eq2b", "--degree", "12", "--r", "3"], 2),
    (["residue", "--m", "0", "--e", "0"], 2),
    (["analyze", "--curve", "v^"], 2),
    (["construct", "--curve", "(v^2+w^2)*(v^2+w^2+z^2)"], 2),
]


@pytest.mark.parametrize("argv,code", COMMANDS, ids=lambda a: " ".join(a) if isinstance(a, list) else str(a))
def test_documents_validate_with_exit_codes(argv, code):
    got, doc, _ = run(argv)
    assert got == code == doc["exit_code"]
    valid(doc)
    assert ("error" in doc) == (code != 0)


def test_rational_verdict_embeds_verified_map():
    _, doc, _ = run(["classify", "--family", "eq2a", "--degree", "4", "--curve", "lemniscate.poly", "--json"])
    v = doc["result"]["verdict"]
    assert v["status"] == "Rational"
    assert v["construction"]["map"]["verified"]["status"] == "Pass"
    assert "quartic-rationality" in v["citations"]


def test_residue_document():
    _, doc, _ = run(["residue", "--m", "1", "--e", "0", "--json"])
    c = doc["result"]["certificate"]
    assert c["valuation"] == 1 and c["residue"] == ["-1", "-1"]
    assert c["conclusion"] == "NotStablyRationalOverPuiseux"


def test_not_rational_document():
    _, doc, _ = run(["classify", "--family", "eq2b", "--degree", "12", "--json"])
    cert = doc["result"]["verdict"]["certificate"]
    assert cert["adjoint"]["text"] == "(0; 2x55)" and cert["effective"] is True


def test_asserted_hypotheses_are_recorded():
    _, doc, _ = run(["classify", "--family", "eq2b", "--degree", "4", "--curve", "isolated-node", "--assert-nonneg"])
    valid(doc)
    assert doc["inputs"]["assert_nonneg"] is True
    assert doc["result"]["verdict"]["hypotheses"]["nonnegative_f"] in ("verified", "asserted")


def test_curve_from_file(tmp_path):
    path = tmp_path / "quartic.poly"
    path.write_text("(v^2+w^2)^2 - (v^2-w^2)*z^2\n")
    code, doc, _ = run(["analyze", "--curve", str(path)])
    assert code == 0
    assert doc["result"]["profile"]["genus"] == 0


def test_affine_expression_is_homogenized():
    code, doc, _ = run(["analyze", "--curve", "(v^2+w^2)^2 - v^2 + w^2"])
    assert code == 0 and doc["result"]["profile"]["degree"] == 4


@pytest.mark.parametrize("path", sorted(GOLDEN.glob("*.json")), ids=lambda p: p.stem)
def test_golden_documents(path):
    golden = json.loads(path.read_text())
    _, doc, _ = run(golden["argv"])
    doc.pop("timing")
    assert json.loads(json.dumps(doc, sort_keys=True)) == golden["document"]


def test_golden_polynomials_are_canonical():
    doc = json.loads((GOLDEN / "normalize_lemniscate.json").read_text())["document"]
    t = doc["result"]["normal_form"]["template"]
    assert parse_poly(t, ("v", "w", "z")).to_str() == t


def test_demo_corpus_exits_zero():
    code, doc, _ = run(["demo-corpus", "--json"])
    valid(doc)
    assert code == 0 and doc["result"]["all_ok"]
    kinds = {r["kind"] for r in doc["result"]["rows"]}
    assert kinds == {"curve", "triple", "elem2", "certificate", "verdict"}


def test_main_prints_json(capsys):
    assert main(["residue", "--m", "1", "--e", "0", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["command"] == "residue"


def test_main_text_summary(capsys):
    assert main(["classify", "--family", "eq2a", "--degree", "8"]) == 0
    assert "Open" in capsys.readouterr().out


def test_module_entry_point_exit_code():
    out = subprocess.run([sys.executable, "-m", "conicbundle", "residue", "--m", "0", "--e", "1", "--json"],
                         capture_output=True, text=True)
    assert out.returncode == 2
    assert json.loads(out.stdout)["error"]["code"]
