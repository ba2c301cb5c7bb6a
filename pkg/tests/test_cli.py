import json
import os
import subprocess
import sys

import pytest

from bipencil.cli import main

REPO = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def run_cli(args, capsys):
    code = main(args)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def so3_file(tmp_path, capsys):
    code, out, err = run_cli(["catalog", "--emit", "so3_shift", str(tmp_path)], capsys)
    assert code == 0, err
    return out.strip()


def test_catalog_list(capsys):
    code, out, err = run_cli(["catalog", "--list"], capsys)
    assert code == 0
    assert len(out.strip().splitlines()) >= 11


def test_catalog_emit_round_trip(so3_file, tmp_path, capsys):
    with open(so3_file) as fh:
        text = fh.read()
    doc = json.loads(text)
    assert doc["dim"] == 3 and doc["declared_rank"] == 2
    # emit -> parse -> emit is byte-identical
    from bipencil.io import dump_canonical, pencil_from_json_dict, pencil_to_json_dict
    f0, finf, declared, meta = pencil_from_json_dict(doc)
    assert dump_canonical(pencil_to_json_dict(f0, finf, declared, meta)) == text


def test_catalog_emit_unknown_name(tmp_path, capsys):
    code, out, err = run_cli(["catalog", "--emit", "nope", str(tmp_path)], capsys)
    assert code == 1
    assert json.loads(err)["error"] == "input"


def test_analyze_so3(so3_file, capsys):
    code, out, err = run_cli(["analyze", "--pencil", so3_file, "--point", "0,0,0"], capsys)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["report"]["verdict"]["kind"] == "NonDegenerate"
    assert doc["report"]["total_type"] == {"ke": 1, "kh": 0, "kf": 0}


def test_analyze_regular_point(so3_file, capsys):
    code, out, _ = run_cli(["analyze", "--pencil", so3_file, "--point", "1,1/2,-2"], capsys)
    assert code == 0
    assert json.loads(out)["report"]["verdict"]["kind"] == "Regular"


def test_analyze_wrong_arity(so3_file, capsys):
    code, out, err = run_cli(["analyze", "--pencil", so3_file, "--point", "0,0"], capsys)
    assert code == 1
    assert json.loads(err)["position"] == "--point"


def test_analyze_malformed_pencil(tmp_path, capsys):
    bad = tmp_path / "bad.pencil.json"
    bad.write_text(json.dumps({
        "dim": 2, "P0": [{"i": 2, "j": 1, "poly": []}], "Pinf": []}))
    code, out, err = run_cli(["analyze", "--pencil", str(bad), "--point", "0,0"], capsys)
    assert code == 1
    doc = json.loads(err)
    assert doc["error"] == "input" and "P0[0]" in doc["position"]


def test_analyze_determinism(so3_file, tmp_path, capsys):
    outs = []
    for k in range(2):
        path = tmp_path / f"r{k}.json"
        code, _, _ = run_cli(["analyze", "--pencil", so3_file, "--point", "0,0,0",
                              "--seed", "5", "--out", str(path)], capsys)
        assert code == 0
        outs.append(path.read_bytes())
    assert outs[0] == outs[1]


def test_toda_explicit_singular(capsys):
    code, out, err = run_cli(["toda", "--n", "2", "--a", "1,1", "--b", "0,0"], capsys)
    assert code == 0, err
    doc = json.loads(out)
    point = doc["points"][0]
    assert point["report"]["verdict"]["kind"] == "NonDegenerate"
    assert point["report"]["total_type"] == {"ke": 1, "kh": 0, "kf": 0}
    assert point["oracle_agrees"] and doc["summary"]["all_oracle_agree"]
    assert point["lax_oracle"][0]["which"] == "antiperiodic"


def test_toda_random_regular(capsys):
    code, out, _ = run_cli(["toda", "--n", "3", "--random", "--seed", "7"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["verdicts"] == ["Regular"]
    assert doc["points"][0]["lax_oracle"] == []


def test_toda_scan(capsys):
    code, out, _ = run_cli(["toda", "--n", "2", "--scan", "3", "--seed", "1"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["summary"]["count"] == 3 and doc["summary"]["all_oracle_agree"]


def test_toda_rejects_nonpositive_a(capsys):
    code, out, err = run_cli(["toda", "--n", "2", "--a", "1,-1", "--b", "0,0"], capsys)
    assert code == 2
    assert json.loads(err)["error"] == "refused"


def test_jk_command(so3_file, tmp_path, capsys):
    code, out, err = run_cli(["jk", "--pencil", so3_file, "--point", "0,0,0"], capsys)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["invariants"] == {"corank": 1, "kronecker": [0], "jordan": {"0": [1]}}


def test_linear_command(tmp_path, capsys):
    from bipencil import algebras
    from bipencil.liealg import argument_shift_cocycle
    from fractions import Fraction
    D = algebras.diamond()
    alg_path = tmp_path / "alg.json"
    coc_path = tmp_path / "coc.json"
    alg_path.write_text(json.dumps(D.to_json_dict()))
    A = argument_shift_cocycle(D, [Fraction(0), Fraction(0), Fraction(1), Fraction(0)])
    coc_path.write_text(json.dumps(A.to_json_dict()))
    code, out, err = run_cli(["linear", "--algebra", str(alg_path),
                              "--cocycle", str(coc_path)], capsys)
    assert code == 0, err
    doc = json.loads(out)
    assert doc["nondegenerate"] is True
    assert doc["type"] == {"ke": 1, "kh": 0, "kf": 0}
    assert doc["blocks"]["counts"]["diamond"] == 1
    assert doc["regular"] is True
    assert doc["kernel"]["abelian"] and doc["kernel"]["ad_semisimple"]


def test_linear_command_rejects_bad_jacobi(tmp_path, capsys):
    alg_path = tmp_path / "alg.json"
    coc_path = tmp_path / "coc.json"
    # [e1,e2] = e3 with [e2,e3] = e2 violates Jacobi on (e1, e2, e3)
    alg_path.write_text(json.dumps({
        "dim": 3,
        "structure": [{"i": 1, "j": 2, "k": 3, "c": "1"},
                      {"i": 2, "j": 3, "k": 2, "c": "1"}]}))
    coc_path.write_text(json.dumps({"dim": 3, "cocycle": []}))
    code, out, err = run_cli(["linear", "--algebra", str(alg_path),
                              "--cocycle", str(coc_path)], capsys)
    assert code == 1
    doc = json.loads(err)
    assert "Jacobi" in doc["message"]


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bipencil.cli", "--version"],
                          capture_output=True, text=True, cwd=REPO)
    assert proc.returncode == 0
    assert "bipencil" in proc.stdout
