import json
import subprocess
import sys
from pathlib import Path

import pytest

from omegarep.cli import run
from omegarep.loday import TruncatedMorphism, induced_morphism

ROOT = Path(__file__).resolve().parents[1]
FIX = ROOT / "fixtures"


def call(capsys, *argv):
    code = run(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_validate(capsys, tmp_path):
    code, out, _ = call(capsys, "algebra", "validate", str(FIX / "ax.json"))
    assert code == 0 and "PASS commutativity" in out
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"name": "bad", "dim": 2,
                               "constants": [[["0", "0"], ["1", "0"]], [["0", "0"], ["0", "0"]]]}))
    code, out, _ = call(capsys, "algebra", "validate", str(bad))
    assert code == 1 and "FAIL commutativity: e1·e2" in out


def test_loday_map(capsys):
    code, out, _ = call(capsys, "loday", "map", "-A", str(FIX / "ax.json"), "-h", "1,1")
    assert code == 0
    lines = out.splitlines()
    assert "2x4" in lines[0]
    assert lines[2:] == ["(1): 1 0 0 1", "(2): 0 1 1 0"]


def test_loday_check(capsys):
    code, out, _ = call(capsys, "loday", "check", "-A", "by", "--max-domain", "3")
    assert code == 0 and out.startswith("PASS")


def test_counterexample_writes_file(capsys, tmp_path):
    path = tmp_path / "s.json"
    code, out, _ = call(capsys, "nat", "counterexample", "-N", "4", "-o", str(path))
    assert code == 0 and out.startswith("PASS: natural at all 92 surjection squares")
    s = TruncatedMorphism.load(path)
    code, out, _ = call(capsys, "nat", "verify", "-A", "ax", "-B", "by", "-s", str(path))
    assert code == 0 and "FAIL" not in out
    code, out, _ = call(capsys, "det", "identity", "-A", "ax", "-B", "by", "-s", str(path), "-r", "2")
    assert code == 0 and out.strip().endswith("PASS")
    assert s.N == 4


def test_verify_failure(capsys, tmp_path):
    path = tmp_path / "t.json"
    induced_morphism([[2]], 3).save(path)
    code, out, _ = call(capsys, "nat", "verify", "-A", "idem1", "-B", "idem1", "-s", str(path))
    assert code == 1 and "FAIL: r_0" in out


def test_solve(capsys, tmp_path):
    out_path = tmp_path / "basis.json"
    code, out, _ = call(capsys, "nat", "solve", "-A", "idem1", "-B", "nil1", "-N", "3", "-o", str(out_path))
    assert code == 0 and "dimension 2" in out
    assert len(json.loads(out_path.read_text())) == 2


def test_groebner_and_points(capsys):
    code, out, _ = call(capsys, "ideal", "groebner", "-A", "nil1", "-B", "idem1")
    assert code == 0 and out.strip() == "1 * l[1][1]^2"
    code, out, _ = call(capsys, "ideal", "points", "-A", "idem1", "-B", "idem1", "-p", "5")
    assert code == 0 and out.splitlines()[:3] == ["2 zeros of M over F_5", "[[0]]", "[[1]]"]


def test_theorem(capsys):
    code, out, _ = call(capsys, "theorem", "-A", str(FIX / "nil1.json"), "-B", str(FIX / "idem1.json"))
    assert code == 0
    assert "verdict: no invertible homomorphism over Q̄" in out
    assert "min power r with det^r in M: 2" in out
    code, out, _ = call(capsys, "theorem", "-A", "ax", "-B", "ax", "-N", "2", "--json")
    rep = json.loads(out)
    assert rep["radical_member"] is False


def test_usage_errors(capsys, tmp_path):
    assert call(capsys, "bogus")[0] == 2
    assert call(capsys, "algebra", "validate", str(tmp_path / "missing.json"))[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    assert call(capsys, "algebra", "validate", str(bad))[0] == 2
    assert call(capsys, "loday", "map", "-A", "ax", "-h", "1,3")[0] == 2
    assert call(capsys, "theorem", "-A", "ax", "-B", "ax", "--primes", "4")[0] == 2
    assert call(capsys, "ideal", "points", "-A", "ax", "-B", "by", "-p", "37")[0] == 2


def test_byte_identical_output():
    cmd = [sys.executable, "-m", "omegarep", "theorem", "-A", "ax", "-B", "by", "-N", "2", "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b
