import json
import subprocess
import sys

import pytest

from multbound.cli import Report, main, run


def test_fourier_s2():
    rep, code = run(["fourier", "--gamma", "S2"])
    assert code == 0
    assert rep.outputs["entries"] == [
        ["1/2", "1/2", "1/2", "1/2"],
        ["1/2", "1/2", "-1/2", "-1/2"],
        ["1/2", "-1/2", "1/2", "-1/2"],
        ["1/2", "-1/2", "-1/2", "1/2"],
    ]


def test_bound_a1():
    rep, code = run(["bound", "--type", "A1", "--c", "2"])
    assert code == 0 and rep.outputs["C"] == "4"
    rep, code = run(["bound", "--type", "B2", "--c", "4", "--global", "--format", "json"])
    assert code == 0 and rep.outputs["C"] == "64"
    rep, _ = run(["bound", "--type", "G2", "--subsystem", "A2", "--c", "1", "--c-estimated"])
    assert rep.outputs["C"] == "12" and rep.outputs["c_is_estimate"]
    assert any("estimate" in p for p in rep.provenance)


def test_bound_overrides():
    rep, code = run(["bound", "--type", "F4", "--coeffs", "F4=1/24,1", "--n-phi", "F4=5"])
    assert code == 0 and rep.outputs["C"] == str(24 * 1152) and rep.outputs["N"] == 5


def test_verify_fail_exit_1():
    rep, code = run(["verify-gl2", "--q", "2,3", "--space", "flag", "--c", "1"])
    assert code == 1 and rep.status == "fail"
    assert rep.outputs["witness"]["value"] == 2


def test_verify_pass_and_theorem_a():
    _, code = run(["verify-gl2", "--q", "2,3", "--space", "flag", "--c", "2"])
    assert code == 0
    rep, code = run(["verify-gl2", "--theorem-a", "--C", "2", "--q", "2,3"])
    assert code == 0 and len(rep.outputs["reports"]) == 3
    _, code = run(["verify-gl2", "--theorem-a", "--C", "0", "--q", "2"])
    assert code == 1


@pytest.mark.parametrize(
    "argv",
    [
        ["nonsense"],
        ["fourier"],
        ["fourier", "--gamma", "S2", "--bogus"],
        ["fourier", "--gamma", "S9"],
        ["bound", "--type", "F4"],
        ["bound", "--type", "Q7"],
        ["families", "--type", "3D4"],
        ["verify-gl2", "--q", "6", "--c", "2"],
        ["verify-gl2", "--q", "2"],
        ["verify-gl2", "--theorem-a"],
        ["estimate-c", "--space", "flag", "--q", "2,x"],
        [],
    ],
)
def test_usage_and_data_errors_exit_2(argv):
    rep, code = run(argv)
    assert code == 2 and rep.status == "error"


def test_other_commands():
    rep, code = run(["families", "--type", "B2"])
    assert code == 0 and rep.outputs["unipotent_count"] == 6
    rep, code = run(["subsystems", "--type", "G2"])
    assert code == 0 and rep.outputs["count"] == 6
    rep, code = run(["subsystems", "--type", "B3", "--method", "bds"])
    assert code == 0 and rep.outputs["count"] == 10
    rep, code = run(["estimate-c", "--space", "flag", "--q", "2,3,4,5"])
    assert code == 0 and rep.outputs["estimate"]["c"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ["fourier", "--gamma", "S3"],
        ["bound", "--type", "G2", "--global", "--c", "3"],
        ["families", "--type", "G2"],
        ["subsystems", "--type", "B2"],
        ["verify-gl2", "--q", "2", "--c", "1"],
        ["estimate-c", "--space", "split-torus", "--q", "2,3,4"],
        ["bogus"],
    ],
)
def test_json_round_trip(argv):
    rep, _ = run(argv)
    assert Report.from_json(json.loads(rep.emit("json"))) == rep


def test_deterministic_output():
    a, _ = run(["subsystems", "--type", "C3"])
    b, _ = run(["subsystems", "--type", "C3"])
    assert a.emit("json") == b.emit("json")


def test_main_prints(capsys):
    assert main(["--format", "json", "bound", "--type", "A2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["outputs"]["C"] == "6"
    assert main(["bound", "--type", "A2", "--format", "text"]) == 0
    assert "C: 6" in capsys.readouterr().out
    assert main(["bound", "--type", "F4"]) == 2
    assert "FamilyDataUnavailable" in capsys.readouterr().err


def test_cache_env(tmp_path, monkeypatch):
    monkeypatch.setenv("MULTBOUND_CACHE", str(tmp_path))
    proc = subprocess.run(
        [sys.executable, "-m", "multbound.cli", "verify-gl2", "--theorem-a", "--C", "2", "--q", "2"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert list(tmp_path.glob("chartable-*.json"))
    proc = subprocess.run(
        [sys.executable, "-m", "multbound.cli", "--no-cache", "verify-gl2", "--theorem-a", "--C", "2", "--q", "3"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert len(list(tmp_path.glob("chartable-*.json"))) == 1
