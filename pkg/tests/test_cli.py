import json
from pathlib import Path

import jsonschema
import pytest

from gdecomp.cli import canonical_json, emit_table1, main

SCHEMA = json.loads(
    (Path(__file__).resolve().parents[1]
     / "src/gdecomp/schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out


def test_bounds_command(capsys):
    code, out = run(capsys, "bounds", "--B", "6", "--n", "2", "--kmax", "6",
                    "--orders", "4", "6")
    assert code == 0
    data = json.loads(out)
    assert data["index_lower_bound"] == 1
    assert data["index_upper_bound"] == 518400
    assert data["vertex_order_product_bound"] == 24


def test_canonical_json_shape():
    text = canonical_json({"b": 1, "a": [2, 1]})
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"')


def test_ball_command_json(capsys):
    code, out = run(capsys, "ball", "--group", "z5", "--radius", "3")
    assert code == 0
    data = json.loads(out)
    assert data["vertex_count"] == 5


def test_ball_command_dot(capsys):
    code, out = run(capsys, "ball", "--group", "z5", "--radius", "2",
                    "--format", "dot")
    assert code == 0
    assert out.startswith("graph") and "--" in out


def test_decompose_dot(capsys):
    code, out = run(capsys, "decompose", "--group", "c2*c3", "--radius", "7",
                    "--r", "3", "--format", "dot")
    assert code == 0
    assert 'label="2"' in out and 'label="3"' in out


def test_discover_command(capsys):
    code, out = run(capsys, "discover", "--group", "c2*c3")
    assert code == 0
    data = json.loads(out)
    assert data["euler_characteristic"] == "-1/6"
    assert data["trace"]["stabilized"]


def test_classify_command(capsys):
    code, out = run(capsys, "classify", "--group", "c2*c3", "--element",
                    "a*b", "--radius", "5")
    assert code == 0
    data = json.loads(out)
    assert data["kind"] == "hyperbolic"
    assert data["translation_length"] == 2


def test_classify_rejects_matrix_backend(capsys):
    code, _ = run(capsys, "classify", "--group", "sl2z", "--element", "S")
    assert code == 3


def test_subgroup_command(capsys):
    code, out = run(capsys, "subgroup", "--group", "c2*c3")
    assert code == 0
    data = json.loads(out)
    assert data["index"] == 6 and data["rank"] == 2
    assert data["torsion_free"] and data["rank_chi_consistent"]


def test_subgroup_mod2_exits_3(capsys):
    code, out = run(capsys, "subgroup", "--group", "sl2z", "--modulus", "2")
    assert code == 3
    data = json.loads(out)
    assert data["torsion_free"] is False
    assert "S*S" in data["evidence"]["witnesses"]


def test_nerve_command(capsys):
    code, out = run(capsys, "nerve", "--group", "f2", "--radius", "4",
                    "--r", "3")
    assert code == 0
    data = json.loads(out)
    assert data["dimension"] == 0 and not data["connected"]


def test_unknown_group_exits_3(capsys):
    code, _ = run(capsys, "ball", "--group", "nosuch", "--radius", "2")
    assert code == 3


def test_cap_exits_2(capsys):
    code, _ = run(capsys, "ball", "--group", "f2", "--radius", "9",
                  "--cap", "50")
    assert code == 2


def test_report_validates_schema(capsys):
    code, out = run(capsys, "report", "--group", "c2*c3")
    assert code == 0
    bundle = json.loads(out)
    jsonschema.validate(bundle, SCHEMA)
    assert bundle["summary"] == {"group": "c2_c3", "model_graph": "single edge",
                                 "bag_sizes": "2 and 3", "source": "discovery"}


def test_report_byte_identical_rerun(capsys):
    _, out1 = run(capsys, "report", "--group", "f2")
    _, out2 = run(capsys, "report", "--group", "f2")
    assert out1 == out2
    assert json.loads(out1)["summary"]["model_graph"] == "rose with 2 loops"


def test_report_artifact_dir(tmp_path, capsys):
    code, _ = run(capsys, "report", "--group", "f2", "--out",
                  str(tmp_path / "artifacts"))
    assert code == 0
    names = {p.name for p in (tmp_path / "artifacts").iterdir()}
    assert {"ball.json", "cover.json", "decomposition.json", "discovery.json",
            "tree.json", "certificate.json", "report.json"} <= names
    bundle = json.loads((tmp_path / "artifacts" / "report.json").read_text())
    jsonschema.validate(bundle, SCHEMA)


def test_emit_table1_rows():
    table = emit_table1(["f2", "c2*c3"])
    lines = table.strip().splitlines()
    assert lines[0].split() == ["Group", "Model", "graph", "Bag", "sizes"]
    assert "rose with 2 loops" in table and "1" in table
    assert "single edge" in table and "2 and 3" in table


def test_emit_table1_empty_and_out_of_scope():
    assert emit_table1([]).startswith("Group")
    table = emit_table1(["sl3z"])
    assert "out of scope: not virtually free pipeline" in table


def test_cache_env(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("GDECOMP_CACHE", str(tmp_path))
    _, out1 = run(capsys, "ball", "--group", "z5", "--radius", "2")
    assert list(tmp_path.iterdir())  # artifact cached
    _, out2 = run(capsys, "ball", "--group", "z5", "--radius", "2")
    assert out1 == out2


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "bounds.json"
    code, out = run(capsys, "bounds", "--B", "3", "--n", "1", "--kmax", "3",
                    "--out", str(target))
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["index_upper_bound"] == 6
