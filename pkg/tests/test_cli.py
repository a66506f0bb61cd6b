import json
import subprocess
import sys
from pathlib import Path

import pytest

from ffcenter.cli import run

GOLDEN = Path(__file__).parent / "golden"


def call(argv, capsys):
    code = run(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_main_theorem_golden(capsys):
    code, out, _ = call(["verify", "main-theorem", "--family", "B", "--n", "1", "--m", "2"], capsys)
    assert code == 0
    data = json.loads(out)
    data.pop("timings")
    assert data == json.loads((GOLDEN / "main_theorem_B1_m2.json").read_text())
    assert data["schema"] == "1" and data["match"] is True


def test_character_count(capsys):
    code, out, _ = call(["characters", "count", "--family", "C", "--n", "2", "--m", "2"], capsys)
    assert code == 0 and json.loads(out) == {"schema": "1", "count": 5}


def test_phi_text(capsys):
    code, out, _ = call(["sugawara", "phi", "--family", "D", "--n", "2", "--m", "1", "--format", "text"], capsys)
    assert code == 0 and out.splitlines() == ["phi[1,0] = 3", "phi[1,1] = 0"]


@pytest.mark.parametrize("argv", [
    ["symmetrizer", "--family", "B", "--n", "1", "--m", "2"],
    ["hc", "--family", "C", "--n", "2", "--m", "2"],
    ["pfaffian", "--n", "2"],
    ["walg-screen", "--family", "C", "--n", "2", "--m", "4"],
    ["miura", "--family", "D", "--n", "2", "--m", "4"],
    ["characters", "kappa", "--n", "2"],
    ["characters", "series", "--family", "D", "--n", "2", "--depth", "3"],
    ["harmonic", "--family", "C", "--n", "2", "--m", "2", "--list"],
    ["casimir", "--family", "C", "--n", "2", "--k", "1"],
    ["sugawara", "commutator", "--family", "B", "--n", "1", "--m", "1", "--m2", "2"],
    ["verify", "casimir"],
])
def test_subcommands_succeed(argv, capsys):
    code, out, _ = call(argv, capsys)
    assert code == 0
    assert json.loads(out)["schema"] == "1"


def test_usage_errors(capsys):
    assert call(["verify", "nonsense"], capsys)[0] == 2
    assert call(["symmetrizer", "--family", "C", "--n", "1", "--m", "5"], capsys)[0] == 2
    assert call(["casimir", "--family", "B", "--n", "1"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        run(["no-such-command"])
    assert exc.value.code == 2


def test_mismatch_exit_code(capsys, monkeypatch):
    from ffcenter import suites
    monkeypatch.setattr(suites, "casimir", lambda *a: {"ok": False})
    code, out, _ = call(["verify", "casimir", "--family", "B", "--n", "1", "--k", "1"], capsys)
    assert code == 1 and json.loads(out)["ok"] is False


def test_deterministic_with_seed(capsys):
    argv = ["characters", "kappa", "--n", "2", "--seed", "7", "--trials", "5"]
    assert call(argv, capsys)[1] == call(argv, capsys)[1]


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ffcenter", "characters", "count", "--family", "B",
                          "--n", "1", "--m", "2"], capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["count"] == 5
