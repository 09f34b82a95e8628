import json
import subprocess
import sys

from lcsynth.cli import main, read_matrix, write_matrix
from lcsynth.code import builtin
from lcsynth.pauli import GateSequence
from lcsynth.verify import implements_target


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_gauge_count(capsys):
    assert run(capsys, "gauge-count", "4", "2") == (0, "12288\n")
    assert run(capsys, "gauge-count", "2", "1") == (0, "8\n")
    code, out = run(capsys, "gauge-count", "4", "2", "--factored")
    doc = json.loads(out)
    assert doc["count"] == "12288" and int(doc["factors"][0]) * int(doc["factors"][1]) * int(doc["factors"][2]) == 12288
    assert run(capsys, "gauge-count", "2", "3")[0] == 1


def test_list_codes(capsys):
    code, out = run(capsys, "list-codes")
    assert code == 0
    assert out.split() == ["color-8-3-2", "iceberg-4-2-2", "twisted-toric-12-2-3"]


def test_bad_code_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"stabilizers": ["XX", "XZ"], "logical_x": [], "logical_z": []}))
    code = main(["compile", "--code", str(bad), "--target", "H@1", "--con", "line", "--l", "1"])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_compile_round_trip(tmp_path, capsys):
    out = tmp_path / "c.txt"
    gauge = tmp_path / "g.txt"
    summary = tmp_path / "s.json"
    code, text = run(capsys, "compile", "--code", "iceberg-4-2-2", "--target", "CX@1,2", "--con", "ring",
                     "--l", "3", "--out", str(out), "--gauge-out", str(gauge), "--summary-out", str(summary))
    assert code == 0
    doc = json.loads(text)
    assert doc["cz_count"] <= 4 and doc["verified_from_file"]
    seq = GateSequence.from_text(out.read_text(), 4)
    assert seq.to_text() == out.read_text()
    assert seq.count("CZ") == doc["cz_count"]
    assert implements_target(seq, builtin("iceberg-4-2-2"), "CX@1,2", strict_signs=True).ok
    m = read_matrix(gauge.read_text())
    assert write_matrix(m) == gauge.read_text()
    assert json.loads(summary.read_text())["cz_count"] == doc["cz_count"]

    assert run(capsys, "verify", "--code", "iceberg-4-2-2", "--circuit", str(out),
               "--target", "CX@1,2", "--strict-signs")[0] == 0
    code, text = run(capsys, "verify", "--code", "iceberg-4-2-2", "--circuit", str(out), "--target", "H@1")
    assert code == 1 and json.loads(text)["failures"]


def test_compile_s_on_color_code(capsys):
    code, text = run(capsys, "compile", "--code", "color-8-3-2", "--target", "S@1", "--con", "cube8", "--l", "1")
    assert code == 0 and json.loads(text)["cz_count"] == 1


def test_compile_statuses(capsys):
    code, text = run(capsys, "compile", "--code", "iceberg-4-2-2", "--target", "H@1", "--con", "ring", "--l", "0")
    assert code == 2 and json.loads(text)["status"] == "unsat-at-this-length"
    code, text = run(capsys, "compile", "--code", "color-8-3-2", "--target", "H@1", "--con", "cube8",
                     "--l", "3", "--budget", "0.3", "--backend", "builtin")
    assert code == 3 and json.loads(text)["status"] == "budget-exhausted"


def test_several_targets(tmp_path, capsys):
    code, text = run(capsys, "compile", "--code", "iceberg-4-2-2", "--target", "S@1", "--target", "S@2",
                     "--con", "ring", "--l", "2", "--out-dir", str(tmp_path))
    assert code == 0
    assert [r["target"] for r in json.loads(text)["results"]] == ["S@1", "S@2"]
    assert (tmp_path / "circuit_2.txt").exists()


def test_ft_flag_and_check(tmp_path, capsys):
    bare = tmp_path / "bare.txt"
    main(["compile", "--code", "color-8-3-2", "--target", "H@1", "--con", "cube8", "--l", "3",
          "--out", str(bare)])
    capsys.readouterr()
    assert run(capsys, "ft-check", "--code", "color-8-3-2", "--circuit", str(bare))[0] == 1
    gad = tmp_path / "gad.txt"
    code, text = run(capsys, "ft-flag", "--code", "color-8-3-2", "--circuit", str(bare), "--single-flag",
                     "--out", str(gad))
    doc = json.loads(text)
    assert code == 0 and doc["verdict"] and doc["sound"] and doc["flag_qubits"] == 1
    code, text = run(capsys, "ft-check", "--code", "color-8-3-2", "--circuit", str(gad))
    assert code == 0 and json.loads(text)["undetectable"] == []


def test_baseline(tmp_path, capsys):
    src = tmp_path / "in.txt"
    src.write_text("H 1\nCX 1 3\nCX 2 4\nS 3\n")
    out = tmp_path / "out.txt"
    code, text = run(capsys, "baseline", "--circuit", str(src), "--con", "line", "--out", str(out))
    assert code == 0
    routed = GateSequence.from_text(out.read_text(), 4)
    assert routed.tableau() == GateSequence.from_text(src.read_text(), 4).tableau()
    for g in routed.ops():
        if len(g.qubits) == 2:
            assert abs(g.qubits[0] - g.qubits[1]) == 1


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "lcsynth", "gauge-count", "4", "2"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "12288"
