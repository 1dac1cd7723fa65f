import io
import json

import pytest

from toricprequant.cli import BAD_INPUT, FAILED, OK, main


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--format", "json")
    return code, json.loads(text)


@pytest.fixture
def cp2_file(tmp_path):
    code, text = run("catalog", "--name", "CP2", "--export")
    assert code == OK
    path = tmp_path / "cp2.json"
    path.write_text(text)
    return str(path)


def test_check(cp2_file):
    code, doc = run_json("check", cp2_file, "--require", "smooth", "--require", "even")
    assert code == OK and doc["predicates"]["even"] and doc["schema_version"]
    code, doc = run_json("check", "catalog:hirzebruch_F1", "--require", "even")
    assert code == FAILED and doc["failed_requirements"] == ["even"]


def test_bad_inputs(tmp_path):
    assert run("check", str(tmp_path / "missing.json"))[0] == BAD_INPUT
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2, "facets": [')
    assert run("check", str(bad))[0] == BAD_INPUT
    assert run("check", "catalog:nope")[0] == BAD_INPUT
    assert run("check", "catalog:CP2", "--bogus")[0] == BAD_INPUT
    assert run("frobnicate")[0] == BAD_INPUT
    assert run("census", "--dim", "4", "--bound", "1")[0] == BAD_INPUT
    assert run("catalog", "--export")[0] == BAD_INPUT
    assert run("flow", "--hamiltonian", "sin", "--gamma", "1,1")[0] == BAD_INPUT
    assert run("flow", "--hamiltonian", "reeb")[0] == BAD_INPUT
    assert run("flow", "--hamiltonian", "1,2", "--gamma", "1,1,1")[0] == BAD_INPUT
    assert run("flow", "--hamiltonian", "reeb", "--gamma", "1,1", "--dt", "0")[0] == BAD_INPUT


def test_delzant():
    code, doc = run_json("delzant", "catalog:CP1xCP1")
    assert code == OK
    rep = doc["report"]
    assert rep["c_k"] == 2 and rep["delta"] == 1
    code, doc = run_json("delzant", "catalog:hirzebruch_F1")
    assert code == FAILED and doc["predicate"] == "even"


def test_json_is_deterministic():
    a = run("delzant", "catalog:bundle_ii", "--format", "json")
    b = run("delzant", "catalog:bundle_ii", "--format", "json")
    assert a == b
    a = run("census", "--dim", "2", "--bound", "1", "--format", "json")
    assert a == run("census", "--dim", "2", "--bound", "1", "--format", "json")


def test_census_dim2():
    code, doc = run_json("census", "--dim", "2", "--bound", "1", "--stabilize")
    assert code == OK
    assert doc["total"] == 5 and doc["even_total"] == 3 and doc["stabilization"]["stable"]
    assert sorted(c["name"] for c in doc["classes"] if c["name"]) == ["CP1xCP1", "CP2", "CP2#3"]


def test_census_unstable_exit():
    code, doc = run_json("census", "--dim", "2", "--bound", "0", "--stabilize")
    assert code == FAILED and doc["total"] == 0 and doc["stabilization"]["new_classes"]


def test_catalog():
    code, doc = run_json("catalog", "--name", "CP3")
    assert code == OK and doc["ok"] and doc["entries"][0]["name"] == "CP3"
    code, text = run("catalog", "--name", "bundle_i", "--export")
    assert code == OK and json.loads(text)["dim"] == 3


def test_flow():
    code, doc = run_json("flow", "--hamiltonian", "reeb", "--gamma", "1,1", "--T", "2", "--tol-endpoint", "1e-8")
    assert code == OK and doc["closed_form_error"] <= 1e-8 and doc["failures"] == []
    code, doc = run_json("flow", "--hamiltonian", "1,-2", "--T", "0.5")
    assert code == OK and doc["gamma"] == [1, 1]
    code, doc = run_json("flow", "--hamiltonian", "zero", "--gamma", "1,2", "--T", "0.1")
    assert code == OK and doc["closed_form_error"] == 0


def test_text_format():
    code, text = run("delzant", "catalog:CP2")
    assert code == OK and "c_k: 3" in text
