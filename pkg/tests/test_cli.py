import json

import pytest

from ncdef.cli import main
from ncdef.problems import parse_problem, problem_json


def run(argv):
    return main(argv)


def test_tower_command_output(capsys):
    assert run(["tower", "--input", "fx_aba", "--max-steps", "10"]) == 0
    out = capsys.readouterr().out
    assert "Terminated(2)" in out
    assert "(2, 2, 2)" in out


def test_cutoff_output(capsys):
    assert run(["tower", "--input", "fx_st", "--max-steps", "2"]) == 0
    assert "CutoffReached(2)" in capsys.readouterr().out


def test_end_algebra_output(capsys):
    assert run(["end-algebra", "--input", "fx_cyc2"]) == 0
    out = capsys.readouterr().out
    assert "algebra dim 4" in out
    assert "grid" in out


def test_exit_code_1_on_failed_property(capsys):
    assert run(["check-collection", "--input", "fx_a2",
                "--collection", "bad"]) == 1
    assert run(["gorenstein", "--input", "fx_fat3"]) == 1
    assert run(["check-collection", "--input", "fx_a2",
                "--collection", "simples"]) == 0


def test_exit_code_2_on_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({
        "field": "Q",
        "quiver": {"vertices": ["1"],
                   "arrows": [{"name": "a", "from": "1", "to": "9"}]},
        "modules": {}, "collections": {},
    }))
    assert run(["tower", "--input", str(bad)]) == 2
    assert "parse error" in capsys.readouterr().err
    assert run(["tower", "--input", str(tmp_path / "missing.json")]) == 2
    notjson = tmp_path / "x.json"
    notjson.write_text("{nope")
    assert run(["tower", "--input", str(notjson)]) == 2


def test_exit_code_3_on_relation_violation(tmp_path, capsys):
    bad = tmp_path / "viol.json"
    bad.write_text(json.dumps({
        "field": "Q",
        "quiver": {"vertices": ["v"],
                   "arrows": [{"name": "t", "from": "v", "to": "v"}]},
        "relations": [[{"coeff": "1", "path": ["t", "t"]}]],
        "modules": {"M": {"dims": {"v": 2},
                          "arrows": {"t": [["0", "1"], ["1", "0"]]}}},
        "collections": {"simples": ["M"]},
    }))
    assert run(["tower", "--input", str(bad)]) == 3
    err = capsys.readouterr().err
    assert "validation error" in err and "'M'" in err


def test_exit_code_4_on_precondition(capsys):
    # regular module is rigid: nothing to extend by
    assert run(["extend", "--input", "fx_loop2", "--modules", "P,S"]) == 4
    assert "precondition" in capsys.readouterr().err
    assert run(["tower", "--input", "fx_a2", "--collection", "bad"]) == 4


def test_hom_ext_and_iso_commands(capsys):
    assert run(["hom", "--input", "fx_a2", "--modules", "P1,S1"]) == 0
    assert "= 1" in capsys.readouterr().out
    assert run(["ext1", "--input", "fx_st", "--modules", "S,S"]) == 0
    assert "= 2" in capsys.readouterr().out
    assert run(["iso", "--input", "fx_a2", "--modules", "S1,S2"]) == 1
    assert "LikelyNot" in capsys.readouterr().out


def test_common_ext_command(capsys):
    assert run(["common-ext", "--input", "fx_st", "--modules", "S,S,S"]) == 0
    assert "'v': 3" in capsys.readouterr().out


def test_remaining_verdict_commands():
    assert run(["gorenstein", "--input", "fx_aba"]) == 0
    assert run(["duality", "--input", "fx_aba"]) == 0
    assert run(["spherical", "--input", "fx_cyc2"]) == 0
    assert run(["spherical", "--input", "fx_fat3"]) == 1
    assert run(["flat-check", "--input", "fx_loop2"]) == 0
    assert run(["custom-sequence", "--input", "fx_cyc2", "--seed", "1"]) == 0


def test_json_reports_are_byte_identical(tmp_path):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["tower", "--input", "fx_aba", "--max-steps", "10", "--seed", "7"]
    assert run(args + ["--json", str(p1)]) == 0
    assert run(args + ["--json", str(p2)]) == 0
    b1, b2 = p1.read_bytes(), p2.read_bytes()
    assert b1 == b2
    assert b"elapsed" not in b1    # timing stays out of the canonical report


def test_json_report_round_trips(tmp_path):
    out = tmp_path / "r.json"
    assert run(["end-algebra", "--input", "fx_cyc2", "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    reparsed = parse_problem(report["problem"])
    assert problem_json(reparsed) == report["problem"]
    assert report["result"]["dim"] == 4
    assert report["exit_code"] == 0


def test_seed_recorded_in_iso_report(tmp_path):
    out = tmp_path / "iso.json"
    assert run(["iso", "--input", "fx_loop2", "--modules", "P,P",
                "--seed", "5", "--json", str(out)]) == 0
    report = json.loads(out.read_text())
    assert report["result"]["seed"] == 5
    assert report["flags"]["seed"] == 5


def test_fp_problem_files(tmp_path):
    doc = {
        "field": {"Fp": 5},
        "quiver": {"vertices": ["v"],
                   "arrows": [{"name": "t", "from": "v", "to": "v"}]},
        "relations": [[{"coeff": "1", "path": ["t", "t"]}]],
        "modules": {"S": {"dims": {"v": 1}, "arrows": {}}},
        "collections": {"simples": ["S"]},
    }
    f = tmp_path / "fp.json"
    f.write_text(json.dumps(doc))
    assert run(["tower", "--input", str(f)]) == 0
    assert run(["end-algebra", "--input", str(f)]) == 0
