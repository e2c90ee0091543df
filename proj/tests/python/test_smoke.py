import json
import math
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest
from referencing import Registry, Resource

import dsonc

ROOT = Path(os.environ.get("DSONC_SOURCE_DIR", Path(__file__).resolve().parents[2]))
DATA = ROOT / "data"
SCHEMAS = {p.name.removesuffix(".schema.json"): json.loads(p.read_text()) for p in (ROOT / "schemas").glob("*.schema.json")}
REGISTRY = Registry().with_resources((s["$id"], Resource.from_contents(s)) for s in SCHEMAS.values())
CLI = os.environ.get("DSONC_CLI")


def validate(name, payload):
    jsonschema.Draft202012Validator(SCHEMAS[name], registry=REGISTRY).validate(payload)


def cli(*args):
    if CLI is None:
        pytest.skip("DSONC_CLI is not set")
    proc = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, timeout=60)
    return proc.returncode, json.loads(proc.stdout)


CASES = [
    ("check", ["check", "--cone", "dsonc", DATA / "motzkin_3_27.json"], 0, "Boundary"),
    ("check", ["check", "--cone", "dsonc", DATA / "motzkin_3_1.json"], 1, "NotMember"),
    ("check", ["check", "--cone", "dual-sonc", DATA / "dual_sonc_divergence.json"], 0, "Member"),
    ("bound", ["bound", "--split", "uniform", DATA / "bound_triangle.json", "--boost"], 0, "Certified"),
    ("circuits", ["circuits", DATA / "motzkin_3_1.json"], 0, "Success"),
    ("equilibrium", ["equilibrium", DATA / "motzkin_3_27.json"], 0, "Success"),
    ("minimizer", ["minimizer", DATA / "motzkin_3_1.json"], 0, "Success"),
    ("extreme-ray", ["extreme-ray", DATA / "univariate_interior.json"], 1, "NotExtreme"),
    ("mms", ["mms", DATA / "mms_motzkin_triangle.json"], 0, "Success"),
    ("sos-check", ["sos-check", DATA / "motzkin_poly_3_27.json"], 1, "NotSOS"),
    ("generate", ["generate", "--circuit", DATA / "motzkin_circuit.json", "--w", "0.5,0.5", "--t", "2"], 0, "Success"),
    ("error", ["check", "--cone", "dsonc", DATA / "missing.json"], 2, "Error"),
    ("error", ["equilibrium", DATA / "dual_sonc_divergence.json"], 2, "Error"),
]


@pytest.mark.parametrize("schema,args,code,verdict", CASES)
def test_cli_output_matches_schema(schema, args, code, verdict):
    rc, out = cli(*args)
    assert rc == code
    assert out["verdict"] == verdict
    validate(schema, out)


def test_plot_csv(tmp_path):
    target = tmp_path / "f.csv"
    rc, out = cli("plot", DATA / "motzkin_3_1.json", "--grid", "-1:1:3,-1:1:2", "--out", target)
    assert rc == 0
    validate("plot", out)
    raw = target.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert lines[0] == "x,y,f"
    assert len(lines) == 7


def test_batch_envelope():
    rc, out = cli("check", "--cone", "dsonc", "--jobs", "2", DATA / "motzkin_3_1.json", DATA / "motzkin_1_1.json")
    assert rc == 1
    validate("batch", out)
    assert [r["exit_code"] for r in out["results"]] == [1, 0]


def test_data_documents_match_schema():
    for path in DATA.glob("*.json"):
        doc = json.loads(path.read_text())
        if "terms" in doc:
            validate("document", doc)


def test_module_functions():
    text = (DATA / "motzkin_3_27.json").read_text()
    theta, theta_check = dsonc.circuit_numbers(text)
    assert math.isclose(theta, 9.0, rel_tol=1e-9)
    assert math.isclose(theta_check, 3.0, rel_tol=1e-9)
    assert dsonc.check_circuit(text, "dsonc") == "Boundary"
    point, level = dsonc.equilibrium(text)
    assert all(math.isclose(x, 0.5 * math.log(3.0), rel_tol=1e-9) for x in point)
    assert math.isclose(math.exp(level), 3.0, rel_tol=1e-9)


def test_module_errors_carry_codes():
    with pytest.raises(dsonc.DsoncError) as info:
        dsonc.circuit_numbers((DATA / "dual_sonc_divergence.json").read_text())
    assert info.value.code == "NotACircuit"


def test_in_process_cli():
    code, out = dsonc.run("check", "--cone", "sonc", DATA / "motzkin_3_1.json")
    assert code == 0
    assert out["verdict"] == "Boundary"
    validate("check", out)
