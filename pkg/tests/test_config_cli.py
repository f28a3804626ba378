import json
from pathlib import Path

import numpy as np
import pytest

from hoverauv import config as cfgmod
from hoverauv.cli import main
from hoverauv.errors import ConfigError

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def write(path, data):
    path.write_text(json.dumps(data), encoding="utf-8")
    return path


def test_default_roundtrip():
    cfg = cfgmod.Config()
    d = cfgmod.to_dict(cfg)
    again = cfgmod.from_dict(json.loads(json.dumps(d)))
    assert cfgmod.to_dict(again) == d
    assert again == cfg


def test_file_roundtrip(tmp_path):
    cfg = cfgmod.load(CONFIGS / "vehicle.json", CONFIGS / "survey.json")
    cfgmod.dump(cfg, tmp_path / "full.json")
    again = cfgmod.load(tmp_path / "full.json")
    assert cfgmod.to_dict(again) == cfgmod.to_dict(cfg)
    assert again.environment.current == (0.0, 0.1, 0.0)


def test_later_files_override(tmp_path):
    a = write(tmp_path / "a.json", {"mission": {"speed": 0.3, "spacing": 2.0}})
    b = write(tmp_path / "b.json", {"mission": {"speed": 0.25}})
    cfg = cfgmod.load(a, b)
    assert cfg.mission.speed == 0.25 and cfg.mission.spacing == 2.0


@pytest.mark.parametrize("data, fragment", [
    ({"vehicle": {"geometry": {"l_hull": 1.0}}}, "vehicle.geometry: unknown key(s) l_hull"),
    ({"gains": {"heading": {"kp": -1.0}}}, "gains.heading"),
    ({"simulation": {"dt": 0.03, "control_period": 0.1}}, "simulation.control_period"),
    ({"vehicle": {"coefficients": {"source": "cfd"}}}, "vehicle.coefficients.source"),
    ({"telemetry": {}}, "unknown key(s) telemetry"),
])
def test_invalid_configs_name_the_field(tmp_path, data, fragment):
    with pytest.raises(ConfigError) as info:
        cfgmod.load(write(tmp_path / "bad.json", data))
    assert fragment in str(info.value)


def test_json_syntax_error_reports_line(tmp_path):
    p = tmp_path / "broken.json"
    p.write_text('{\n  "mission": {\n    "speed": 0.2,\n  }\n}\n', encoding="utf-8")
    with pytest.raises(ConfigError) as info:
        cfgmod.load(p)
    assert "line 4" in str(info.value)


def test_cli_usage_and_config_errors(tmp_path, capsys):
    with pytest.raises(SystemExit) as info:
        main(["simulate"])
    assert info.value.code == 1
    with pytest.raises(SystemExit) as info:
        main(["allocate", str(CONFIGS / "vehicle.json"), "--tau", "1,2"])
    assert info.value.code == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{\n  \"vehicle\": [\n", encoding="utf-8")
    assert main(["plan", str(bad)]) == 2
    assert "line" in capsys.readouterr().err
    assert main(["plan", str(tmp_path / "missing.json")]) == 2


def test_cli_runtime_error(tmp_path, capsys):
    rpm = tmp_path / "rpm.csv"
    rpm.write_text("t,n1,n2,n3,n4,n5\n0,0,0,0,0,0\n0,1,1,1,1,1\n", encoding="utf-8")
    assert main(["replay", str(CONFIGS / "vehicle.json"), str(rpm), "--out", str(tmp_path)]) == 3
    assert "line 3" in capsys.readouterr().err


def test_cli_plan(tmp_path, capsys):
    assert main(["plan", str(CONFIGS / "survey.json"), "--out", str(tmp_path / "plan.json")]) == 0
    out = json.loads(capsys.readouterr().out)
    assert len(out["plan"]["waypoints"]) == 32
    assert out["plan"]["camera"]["frame_rate"] == pytest.approx(0.25)
    assert out["overlap"]["claimed_cross_track_pct"] == 45.0
    assert json.loads((tmp_path / "plan.json").read_text()) == out


def test_cli_estimate_coeffs(tmp_path, capsys):
    assert main(["estimate-coeffs", str(CONFIGS / "vehicle.json"), "--json"]) == 0
    plain = json.loads(capsys.readouterr().out)["values"]
    assert main(["estimate-coeffs", str(CONFIGS / "vehicle.json"), "--json",
                 "--calibrate", str(CONFIGS / "factors.json"), "--out", str(tmp_path / "c.json")]) == 0
    cal = json.loads(capsys.readouterr().out)
    assert cal["values"]["X_udot"] == pytest.approx(10.0 * plain["X_udot"])
    assert cal["provenance"]["X_udot"] == "calibrated"
    assert main(["estimate-coeffs", str(CONFIGS / "vehicle.json")]) == 0
    assert "Y_vdot" in capsys.readouterr().out


def test_cli_allocate_trace(capsys):
    assert main(["allocate", str(CONFIGS / "vehicle.json"), "--tau", "0,0,0,55"]) == 0
    out = capsys.readouterr().out
    assert "-- pass 0" in out and "-- pass 1" in out
    assert "infeasible = False" in out
    assert main(["allocate", str(CONFIGS / "vehicle.json"), "--tau", "0,0,0,5", "--controller", "original"]) == 0
    assert "iterations" in capsys.readouterr().out


@pytest.mark.slow
def test_cli_simulate_is_deterministic_and_replays(tmp_path, capsys):
    runs = []
    for name in ("a", "b"):
        out = tmp_path / name
        args = ["simulate", str(CONFIGS / "vehicle.json"), str(CONFIGS / "line.json"), "--seed", "7",
                "--out", str(out)]
        assert main(args) == 0
        runs.append(out)
    for f in ("trajectory.csv", "commands.csv", "metrics.json", "run.json"):
        assert (runs[0] / f).read_bytes() == (runs[1] / f).read_bytes()
    metrics = json.loads((runs[0] / "metrics.json").read_text())
    assert set(metrics) == {"rms_cross_track_m", "max_roll_deg", "duration_s", "distance_m"}
    assert main(["replay", str(CONFIGS / "vehicle.json"), str(runs[0] / "commands.csv"),
                 "--compare", str(runs[0] / "trajectory.csv"), "--out", str(tmp_path / "r")]) == 0
    report = json.loads((tmp_path / "r" / "compare.json").read_text())
    assert max(c["max"] for c in report["channels"].values()) < 1e-9
    capsys.readouterr()


@pytest.mark.slow
def test_cli_controller_ab(tmp_path, capsys):
    rms = {}
    for ctrl in ("original", "modified"):
        out = tmp_path / ctrl
        assert main(["simulate", str(CONFIGS / "vehicle.json"), str(CONFIGS / "line.json"),
                     "--controller", ctrl, "--current", "0,0.2,0", "--out", str(out)]) == 0
        rms[ctrl] = json.loads((out / "metrics.json").read_text())["rms_cross_track_m"]
    assert rms["modified"] < rms["original"]
    run = json.loads((tmp_path / "modified" / "run.json").read_text())
    assert run["current"] == [0.0, 0.2, 0.0]
    capsys.readouterr()
