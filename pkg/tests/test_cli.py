"""The command-line front end: exit codes, run directories, plot data."""

import json
import os

import pytest

from extomo.cli import run


@pytest.fixture(autouse=True)
def in_tmp(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    yield tmp_path


class TestUsage:
    def test_no_args_is_usage_error(self, capsys):
        assert run([]) == 2
        assert "usage" in capsys.readouterr().out

    def test_help(self, capsys):
        assert run(["--help"]) == 0
        assert "subcommands" in capsys.readouterr().out

    def test_list(self, capsys):
        assert run(["list"]) == 0
        out = capsys.readouterr().out
        for name in ("t-delta", "radon-identity", "randomized", "dump"):
            assert name in out

    def test_unknown_subcommand(self, capsys):
        assert run(["frobnicate"]) == 2
        assert "unknown-subcommand" in capsys.readouterr().err

    def test_unknown_experiment(self, capsys):
        assert run(["verify", "no-such-thing"]) == 2
        assert "unknown-experiment" in capsys.readouterr().err

    def test_experiment_group_mismatch(self, capsys):
        # t-delta is a sweep, not a verify
        assert run(["verify", "t-delta"]) == 2

    def test_unknown_parameter(self, capsys):
        assert run(["sweep", "t-delta", "--bogus", "1"]) == 2
        err = capsys.readouterr().err
        assert "unknown-parameter" in err and "allowed" in err

    def test_missing_value(self, capsys):
        assert run(["sweep", "t-delta", "--delta_list"]) == 2

    def test_bad_tolerance_shape(self, capsys):
        assert run(["sweep", "t-delta", "--tol.slope", "1,2,3"]) == 2

    def test_bad_thread_cap(self, capsys, monkeypatch):
        monkeypatch.setenv("EXTOMO_THREADS", "lots")
        assert run(["list"]) == 2

    def test_funk_needs_n3(self, capsys):
        assert run(["transform", "dump", "--transform", "funk",
                    "--n", "2"]) == 2


class TestRunDirectory:
    def test_sweep_writes_artifacts(self, in_tmp, capsys):
        out = in_tmp / "rundir"
        assert run(["sweep", "t-delta", "--out", str(out)]) == 0
        for name in ("config.txt", "version.txt", "report.json",
                     "summary.txt", "sweep.csv"):
            assert (out / name).exists(), name
        summary = (out / "summary.txt").read_text()
        assert summary.startswith("[PASS]")
        config = (out / "config.txt").read_text()
        assert "experiment = t-delta" in config
        assert "seed = 0" in config

    def test_tolerance_override_forces_failure(self, in_tmp, capsys):
        out = in_tmp / "fail"
        code = run(["sweep", "t-delta", "--out", str(out),
                    "--tol.slope", "0,0.1"])
        assert code == 1
        report = json.loads((out / "report.json").read_text())
        assert report["pass"] is False
        assert report["tolerances"]["slope"] == [0.0, 0.1]

    def test_default_run_directory(self, in_tmp, capsys):
        assert run(["sweep", "t-delta"]) == 0
        assert os.path.isdir("runs/t-delta")

    def test_config_file_merged_below_flags(self, in_tmp, capsys):
        cfg = in_tmp / "exp.cfg"
        cfg.write_text("R = 16            # comment survives parsing\n"
                       "n_trials = 30\n")
        out = in_tmp / "tubes"
        code = run(["tubes", "randomized", "--config", str(cfg),
                    "--n_trials", "40", "--out", str(out)])
        assert code == 0
        report = json.loads((out / "report.json").read_text())
        assert report["params"]["R"] == 16
        assert report["params"]["n_trials"] == 40  # flag wins over file

    def test_config_syntax_error(self, in_tmp, capsys):
        cfg = in_tmp / "bad.cfg"
        cfg.write_text("this line has no equals sign\n")
        assert run(["sweep", "t-delta", "--config", str(cfg)]) == 2
        assert "config-syntax" in capsys.readouterr().err

    def test_missing_config_file(self, in_tmp, capsys):
        assert run(["sweep", "t-delta", "--config", "nope.cfg"]) == 2


class TestDeterminism:
    def test_same_config_same_seed_identical_metrics(self, in_tmp, capsys):
        args = ["tubes", "randomized", "--R", "16", "--n_trials", "50",
                "--seed", "3"]
        assert run(args + ["--out", str(in_tmp / "a")]) == 0
        assert run(args + ["--out", str(in_tmp / "b")]) == 0
        rep_a = (in_tmp / "a" / "report.json").read_text()
        rep_b = (in_tmp / "b" / "report.json").read_text()
        assert rep_a == rep_b

    def test_seed_changes_randomized_metrics(self, in_tmp, capsys):
        args = ["tubes", "randomized", "--R", "16", "--n_trials", "50"]
        run(args + ["--seed", "1", "--out", str(in_tmp / "a")])
        run(args + ["--seed", "2", "--out", str(in_tmp / "b")])
        a = json.loads((in_tmp / "a" / "report.json").read_text())
        b = json.loads((in_tmp / "b" / "report.json").read_text())
        assert a["metrics"]["khintchine_ratio"] != b["metrics"]["khintchine_ratio"]


class TestPlotData:
    def test_round_trip_is_bit_exact(self, in_tmp, capsys):
        out = in_tmp / "rundir"
        assert run(["sweep", "t-delta", "--out", str(out)]) == 0
        csv = in_tmp / "plot.csv"
        assert run(["plot-data", str(out / "report.json"),
                    "--out", str(csv)]) == 0
        report = json.loads((out / "report.json").read_text())
        lines = csv.read_text().splitlines()
        assert lines[0] == "abscissa,ordinate,fit_value"
        for line, x, y in zip(lines[1:], report["raw_data"]["abscissa"],
                              report["raw_data"]["ordinate"]):
            cx, cy, _ = line.split(",")
            assert float(cx) == x and float(cy) == y

    def test_plot_data_without_sweep(self, in_tmp, capsys):
        # a report with no sweep-shaped raw data is a usage error
        path = in_tmp / "r.json"
        path.write_text(json.dumps({"name": "x", "params": {}, "metrics": {},
                                    "seed": 0, "tolerances": {},
                                    "raw_data": {}, "notes": []}))
        assert run(["plot-data", str(path)]) == 2

    def test_missing_path(self, capsys):
        assert run(["plot-data"]) == 2
