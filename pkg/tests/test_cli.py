import json

import pytest

from electrical_lie import cli
from electrical_lie.cartan import write_gcm_file, builtin_gcm


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr()


def test_vertex_a3(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _ = run(capsys, "verify", "vertex", "--family", "A", "--rank", "3", "--symbolic", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    (rep,) = doc["reports"]
    assert len(rep["checks"]) == 6 and all(c["status"] == "pass" for c in rep["checks"])
    assert doc["config"]["seed"] == 0 and doc["config"]["resolved_backend"] == "matrix"


def test_form_embeds_gram_matrix(capsys, tmp_path):
    out = tmp_path / "f.json"
    code, _ = run(capsys, "form", "--n", "6", "--symbolic", "--out", str(out))
    assert code == 0
    doc = json.loads(out.read_text())
    omega = doc["reports"][0]["budgets"]["omega"]
    assert omega[0][1] == "b1*b2*b3*b4" and omega[4][5] == "1" and omega[1][2] == "-b2*b3*b4"


def test_flatness_at_zero(capsys):
    code, _ = run(capsys, "flatness", "--family", "A", "--rank", "2", "--params", '{"a1":0,"a2":0}')
    assert code == 0


def test_params_file_and_rationals(capsys, tmp_path):
    p = tmp_path / "b.json"
    p.write_text('{"b1": "1/3", "b2": "-7/2"}')
    code, _ = run(capsys, "verify", "edge", "--family", "C", "--rank", "3", "--kind", "C_CHAIN", "--params", str(p))
    assert code == 0
    with pytest.raises(cli.UsageError):
        cli.parse_params('{"b1": 0.5}')


def test_genuine_failure_exits_one(capsys):
    code, cap = run(capsys, "verify", "edge", "--family", "A", "--rank", "4", "--kind", "TYPE_A_ROOT", "--k", "2", "--root-sign", "1")
    assert code == 1
    assert "serre(2,1)" in cap.out


def test_corrupted_relation_exits_one(capsys, monkeypatch):
    real = cli.vertex_generators

    def corrupted(*a, **kw):
        fam = real(*a, **kw)
        fam.relation_params = {k: v * 3 for k, v in fam.relation_params.items()}
        return fam

    monkeypatch.setattr(cli, "vertex_generators", corrupted)
    code, _ = run(capsys, "verify", "vertex", "--family", "A", "--rank", "2")
    assert code == 1


def test_errors_exit_two(capsys, tmp_path):
    assert run(capsys, "verify", "vertex", "--gcm-file", str(tmp_path / "missing.txt"))[0] == 2
    bad = tmp_path / "bad.txt"
    bad.write_text("2\n2 1\n1 2\n")
    assert run(capsys, "verify", "vertex", "--gcm-file", str(bad))[0] == 2
    assert run(capsys, "decomposition", "--n", "3", "--params", '{"b1": 1, "b2": 0}')[0] == 2
    assert run(capsys, "flatness", "--family", "A", "--rank", "2", "--params", '{"zz": 1}')[0] == 2


def test_budget_exhaustion_exits_two(capsys):
    code, _ = run(capsys, "conjugation", "--scheme", "CONICAL", "--family", "AFFINE_D4", "--root", "2", "--backend", "km", "--height", "3")
    assert code == 2


def test_gcm_file_runs_on_km(capsys, tmp_path):
    p = tmp_path / "g2.txt"
    write_gcm_file(builtin_gcm("G", 2), p)
    assert run(capsys, "verify", "vertex", "--gcm-file", str(p))[0] == 0


def test_list_suites(capsys):
    code, cap = run(capsys, "list-suites")
    assert code == 0 and "thm1_8c" in json.loads(cap.out)


def test_report_round_trip_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, "run-suite", "thm1_9", "--out", str(a))[0] == 0
    assert run(capsys, "run-suite", "thm1_9", "--out", str(b))[0] == 0
    da, db = json.loads(a.read_text()), json.loads(b.read_text())
    assert cli.document_body(da) == cli.document_body(db)
    assert json.loads(json.dumps(da)) == da
    statuses = {c["status"] for r in da["reports"] for c in r["checks"]}
    assert statuses <= {"pass", "fail", "generic-pass", "error"}
    assert "timing" in da and "timing" not in json.loads(cli.document_body(da))
