import csv
import io
import json
import math
import subprocess
import sys

import pytest

from discordgame.cli import main

OPT_FLAGS = ["--theta-a", "1.5707963", "--theta-ap", "0", "--theta-b", "1.5707963", "--theta-bp", "0"]


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def test_payoff_json(capsys):
    code, out, _ = run(["payoff", *OPT_FLAGS, "--x", "2.7488936"], capsys)
    assert code == 0
    report = json.loads(out)
    assert list(report) == ["total", "classical", "quantum", "kappa"]
    assert report["total"] == pytest.approx(0.3017767, abs=1e-7)


def test_payoff_classical_and_infinite_kappa(capsys):
    report = json.loads(run(["payoff", *OPT_FLAGS, "--x", "0"], capsys)[1])
    assert report["total"] == pytest.approx(0.25, abs=1e-7)
    assert report["quantum"] == 0
    argv = ["payoff", "--theta-a", "1.5707963", "--theta-ap", "0.7853982", "--theta-b", "0", "--theta-bp", "0", "--x", "2.0"]
    assert json.loads(run(argv, capsys)[1])["kappa"] == "inf"
    # at the exact library tolerance the rounded inputs leave f_Cl slightly negative
    assert json.loads(run(argv + ["--zero-tol", "1e-12"], capsys)[1])["kappa"] == "undefined"


def test_payoff_degrees(capsys):
    report = json.loads(run(["payoff", "--degrees", "--theta-a", "90", "--theta-ap", "0", "--theta-b", "90",
                             "--theta-bp", "0", "--x", "157.5"], capsys)[1])
    assert report["total"] == pytest.approx((1 + math.sqrt(2)) / 8, abs=1e-12)


def test_payoff_missing_coordinate(capsys):
    code, _, err = run(["payoff", "--theta-a", "1"], capsys)
    assert code == 2 and "--x" in err


def test_optimize_reports(capsys):
    code, out, _ = run(["optimize", "--scenario", "chsh-classical"], capsys)
    assert code == 0
    report = json.loads(out)
    assert report["scenario"] == "chsh-classical" and report["value"] == 0.75
    assert set(report["argmax"]) == {"theta_a", "theta_a_prime", "theta_b", "theta_b_prime", "x"}
    code, out, _ = run(["optimize", "--scenario", "chsh-classical", "--format", "csv"], capsys)
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0][:2] == ["scenario", "value"] and rows[1][:2] == ["chsh-classical", "0.75"]


def test_optimize_usage_errors(capsys):
    assert run(["optimize", "--scenario", "nope"], capsys)[0] == 2
    assert run(["optimize"], capsys)[0] == 2
    assert run(["optimize", "--scenario", "chsh-bell", "--angle-points", "1"], capsys)[0] == 2
    assert run(["optimize", "--scenario", "chsh-bell", "--xtol", "-1"], capsys)[0] == 2


def test_discord_curve(capsys):
    code, out, _ = run(["discord-curve", "--samples", "2"], capsys)
    assert code == 0
    assert out.splitlines()[0] == "x,discord_nats"
    rows = [list(map(float, r)) for r in list(csv.reader(io.StringIO(out)))[1:]]
    assert [r[0] for r in rows] == [0.0, pytest.approx(math.pi)]
    assert all(r[1] < 1e-6 for r in rows)
    assert run(["discord-curve", "--samples", "1"], capsys)[0] == 2
    data = json.loads(run(["discord-curve", "--samples", "3", "--format", "json"], capsys)[1])
    assert list(data[0]) == ["x", "discord_nats"] and len(data) == 3


def test_advantage_curve(capsys):
    out = run(["advantage-curve", "--samples", "16"], capsys)[1]
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["x", "f", "advantage"]
    by_x = {round(float(r[0]) / math.pi * 8): r for r in rows[1:]}
    assert by_x[7][2] == "1" and float(by_x[7][1]) == pytest.approx(0.30178, abs=5e-5)
    assert by_x[15][2] == "1"
    assert by_x[0][2] == "0" and by_x[8][2] == "0"


def test_hessian_command(capsys):
    zeros = ["--theta-a", "0", "--theta-ap", "0", "--theta-b", "0", "--theta-bp", "0", "--x", "0"]
    report = json.loads(run(["hessian", *zeros], capsys)[1])
    assert set(report) >= {"matrix", "trace", "eigenvalue_sum", "f_value", "residual"}
    assert report["trace"] == pytest.approx(1.0, abs=1e-6) and report["f_value"] == -0.5
    report = json.loads(run(["hessian", *zeros, "--include-x"], capsys)[1])
    assert len(report["matrix"]) == 5
    assert run(["hessian", *zeros, "--step", "0"], capsys)[0] == 2


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"samples": 4, "format": "json"}))
    data = json.loads(run(["advantage-curve", "--config", str(cfg)], capsys)[1])
    assert len(data) == 4
    # explicit flags win over the file
    data = json.loads(run(["advantage-curve", "--config", str(cfg), "--samples", "8"], capsys)[1])
    assert len(data) == 8
    cfg.write_text(json.dumps({"theta-a": 1.5707963, "theta_ap": 0, "theta_b": 1.5707963, "theta_bp": 0, "x": 0}))
    assert json.loads(run(["payoff", "--config", str(cfg)], capsys)[1])["total"] == pytest.approx(0.25, abs=1e-7)


@pytest.mark.parametrize("content", ['{"bogus": 1}', '{"samples": "many"}', '[1, 2]', "not json", '{"degrees": 1}'])
def test_config_rejects_bad_input(tmp_path, capsys, content):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(content)
    assert run(["advantage-curve", "--config", str(cfg)], capsys)[0] == 2


def test_out_file_and_formatting(tmp_path, capsys):
    out = tmp_path / "curve.csv"
    assert run(["advantage-curve", "--samples", "8", "--out", str(out)], capsys)[0] == 0
    raw = out.read_bytes()
    assert b"\r" not in raw and raw.endswith(b"\n")
    x_field = raw.decode().splitlines()[2].split(",")[0]
    assert x_field == format(2 * math.pi / 8, ".17g")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "discordgame", "optimize", "--scenario", "chsh-classical"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["value"] == 0.75
    proc = subprocess.run([sys.executable, "-m", "discordgame", "frobnicate"], capture_output=True, text=True)
    assert proc.returncode == 2


def test_numerical_failure_exit_code(monkeypatch, capsys):
    from discordgame import optimize, qmath

    def broken(*args, **kwargs):
        raise qmath.NotAStateError("negative eigenvalue")

    monkeypatch.setattr(optimize, "run_scenario", broken)
    code, _, err = run(["optimize", "--scenario", "chsh-bell"], capsys)
    assert code == 1 and "numerical failure" in err
