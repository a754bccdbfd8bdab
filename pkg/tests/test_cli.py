import json

import pytest

from dmm.cli import main
from dmm.constructions import make_named
from dmm.enumeration import Catalog


def run(capsys, *argv):
    code = main(list(argv))
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_validate_named_pass(capsys):
    code, out, _ = run(capsys, "validate", "--algebra", "C4")
    assert code == 0
    assert json.loads(out)["ok"] is True


def test_validate_broken_algebra_exits_1(capsys, tmp_path):
    A = make_named("2")
    d = A.to_dict()
    d["fusion"][0][0] = 1    # break bottom-absorption / monotonicity
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(d))
    code, out, _ = run(capsys, "validate", "--algebra", str(p))
    assert code == 1
    payload = json.loads(out)
    assert not payload["ok"] and payload["violations"]


def test_usage_errors_exit_2(capsys):
    assert run(capsys, "validate")[0] == 2
    assert run(capsys, "validate", "--algebra", "Q99")[0] == 2
    assert run(capsys, "satisfies", "--algebra", "2")[0] == 2
    code, _, err = run(capsys, "satisfies", "--algebra", "2",
                       "--statement", "x * y")
    assert code == 2 and "error:" in err


def test_satisfies_pass_and_fail(capsys):
    code, out, _ = run(capsys, "satisfies", "--algebra", "2",
                       "--statement", "x <= e")
    assert code == 0 and json.loads(out)["ok"]
    code, out, _ = run(capsys, "satisfies", "--algebra", "D4",
                       "--statement", "e <= (x -> y) \\/ (y -> x)")
    assert code == 1
    r = json.loads(out)["results"][0]
    assert r["counterexample"] == {"x": 1, "y": 2}


def test_satisfies_statement_file(capsys, tmp_path):
    p = tmp_path / "laws.txt"
    p.write_text("x <= x * x\ne <= x \\/ ~x\n")
    code, out, _ = run(capsys, "satisfies", "--algebra", "C4",
                       "--statement", f"@{p}")
    assert code == 0
    assert len(json.loads(out)["results"]) == 2


def test_classify_text_format(capsys):
    code, out, _ = run(capsys, "classify", "--algebra", "S5",
                       "--format", "text")
    assert code == 0
    assert "si: True" in out and "simple: False" in out


def test_analyze_with_hasse(capsys):
    code, out, _ = run(capsys, "analyze", "--algebra", "C4ext_1",
                       "--format", "text", "--hasse")
    assert code == 0
    assert "[e]" in out and "interval" in out


def test_construct_roundtrip(capsys):
    code, out, _ = run(capsys, "construct", "--algebra", "S4")
    assert code == 0
    d = json.loads(out)
    assert d["size"] == 4 and d["e"] == 2


def test_enumerate_to_file(capsys, tmp_path):
    p = tmp_path / "cat.json"
    code, out, _ = run(capsys, "enumerate", "--size", "4", "--out", str(p))
    assert code == 0 and "4 algebra(s)" in out
    assert len(Catalog.load(p).algebras) == 4


def test_homs_and_iso(capsys):
    code, out, _ = run(capsys, "homs", "--algebra", "S4", "--algebra2", "S3")
    assert code == 0
    maps = json.loads(out)
    assert sum(1 for m in maps if m["surjective"]) == 1
    assert run(capsys, "iso", "--algebra", "C4", "--algebra2", "D4")[0] == 1
    assert run(capsys, "iso", "--algebra", "C4", "--algebra2", "C4")[0] == 0


def test_quotient_and_dfg(capsys):
    code, out, _ = run(capsys, "quotient", "--algebra", "S5",
                       "--generators", "1")
    assert code == 0
    d = json.loads(out)
    assert d["projection"] == [0, 1, 1, 1, 2]
    assert d["quotient"]["size"] == 3
    code, out, _ = run(capsys, "dfg", "--algebra", "C4", "--generators", "")
    assert json.loads(out)["filter"] == [1, 2, 3]


def test_reduct_signature(capsys):
    code, out, _ = run(capsys, "reduct", "--algebra", "C4")
    assert code == 0
    assert json.loads(out)["signature"] == "RA"


def test_named_beats_file_with_warning(capsys, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    (tmp_path / "C4").write_text("not json")
    code, _, err = run(capsys, "classify", "--algebra", "C4")
    assert code == 0 and "warning:" in err


def test_suite_small(capsys):
    code, out, _ = run(capsys, "suite", "--size", "4")
    assert code == 0
    assert "[FAIL]" not in out and "[PASS]" in out
