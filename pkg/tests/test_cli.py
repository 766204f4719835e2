"""Tests for the command line front end."""

import csv
import json

import numpy as np
import pytest

from monoboot.cli import main, read_xy_file


def run_cli(args):
    return main([str(a) for a in args])


class TestCoverageCommand:
    def test_schema_and_manifest(self, tmp_path):
        code = run_cli([
            "coverage", "--method", "percentile-pairs", "--n", "80", "--reps", "5",
            "--B", "20", "--seed", "9", "--t-grid", "0.3,0.7", "--out", tmp_path,
        ])
        assert code == 0
        with open(tmp_path / "coverage.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["method", "n", "t", "reps", "coverage", "mean_length", "mc_se"]
        assert len(rows) == 3
        assert rows[1][0] == "percentile-pairs"
        # 17 significant digits round-trip
        assert float(rows[1][2]) == 0.3
        manifest = json.loads((tmp_path / "coverage_manifest.json").read_text())
        assert manifest["tool"] == "monoboot"
        assert manifest["config"]["seed"] == 9
        assert manifest["outputs"] == ["coverage.csv", "coverage_manifest.json"]
        assert "wall_time_s" in manifest

    def test_reruns_are_byte_identical(self, tmp_path):
        args = ["coverage", "--method", "credible", "--n", "70", "--reps", "4",
                "--B", "20", "--seed", "1", "--t0", "0.5"]
        assert run_cli(args + ["--out", tmp_path / "a"]) == 0
        assert run_cli(args + ["--out", tmp_path / "b", "--workers", "2"]) == 0
        a = (tmp_path / "a" / "coverage.csv").read_bytes()
        b = (tmp_path / "b" / "coverage.csv").read_bytes()
        assert a == b

    def test_alpha_flag_changes_level(self, tmp_path):
        base = ["coverage", "--method", "smoothed", "--n", "80", "--reps", "3",
                "--B", "40", "--seed", "2", "--t0", "0.5"]
        run_cli(base + ["--out", tmp_path / "w"])
        run_cli(base + ["--alpha", "0.5", "--out", tmp_path / "n"])
        wide = list(csv.reader(open(tmp_path / "w" / "coverage.csv")))[1]
        narrow = list(csv.reader(open(tmp_path / "n" / "coverage.csv")))[1]
        assert float(narrow[5]) <= float(wide[5])  # mean_length shrinks


class TestHistCommand:
    def test_schema(self, tmp_path):
        code = run_cli([
            "hist", "--method", "smoothed", "--n", "80", "--reps", "4",
            "--B", "20", "--seed", "3", "--t0", "0.5", "--out", tmp_path,
        ])
        assert code == 0
        with open(tmp_path / "hist.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["rep", "prob"]
        assert len(rows) == 5
        probs = [float(r[1]) for r in rows[1:]]
        assert all(0.0 <= p <= 1.0 for p in probs)

    def test_center_flag(self, tmp_path):
        for center in ("f0", "lse"):
            code = run_cli([
                "hist", "--method", "percentile-regression", "--n", "80", "--reps", "3",
                "--B", "20", "--seed", "3", "--t0", "0.5", "--center", center,
                "--out", tmp_path / center,
            ])
            assert code == 0
        manifest = json.loads((tmp_path / "lse" / "hist_manifest.json").read_text())
        assert manifest["config"]["center"] == "lse"


class TestIntervalsCommand:
    def test_simulated_grid(self, tmp_path):
        code = run_cli([
            "intervals", "--n", "90", "--B", "30", "--seed", "4", "--out", tmp_path,
        ])
        assert code == 0
        with open(tmp_path / "intervals.csv") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["t", "lo", "hi", "lse", "slse"]
        assert len(rows) == 20  # 19 default grid points

    def test_data_file_round_trip(self, tmp_path):
        rng = np.random.default_rng(8)
        xs = np.sort(rng.uniform(0, 1, 40))
        ys = xs + rng.normal(0, 0.05, 40)
        path = tmp_path / "data.csv"
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["x", "y"])
            writer.writerows([[f"{x:.17g}", f"{y:.17g}"] for x, y in zip(xs, ys)])
        sample = read_xy_file(path)
        assert np.array_equal(sample.xs, xs)
        assert np.array_equal(sample.ys, ys)
        code = run_cli([
            "intervals", "--data", path, "--B", "30", "--seed", "4",
            "--t-grid", "0.5", "--out", tmp_path,
        ])
        assert code == 0

    def test_malformed_row_reports_line(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("x,y\n0.1,1.0\n0.2,oops\n")
        code = run_cli(["intervals", "--data", path, "--out", tmp_path])
        assert code == 1
        err = capsys.readouterr().err
        assert "line 3" in err

    def test_wrong_column_count_reports_line(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text("0.1,1.0\n0.2,1.0,9\n")
        code = run_cli(["intervals", "--data", path, "--out", tmp_path])
        assert code == 1
        assert "line 2" in capsys.readouterr().err

    def test_no_partial_files_after_error(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("0.5,notanumber\n")
        out = tmp_path / "out"
        assert run_cli(["intervals", "--data", path, "--out", out]) == 1
        assert not (out / "intervals.csv").exists()


class TestExitCodes:
    def test_usage_error_is_one(self):
        with pytest.raises(SystemExit) as exc:
            run_cli(["coverage", "--method", "nonsense"])
        assert exc.value.code == 1

    def test_bad_config_is_one(self, tmp_path, capsys):
        code = run_cli([
            "coverage", "--method", "credible", "--alpha", "1.5", "--out", tmp_path,
        ])
        assert code == 1
        assert "error" in capsys.readouterr().err

    def test_selfcheck_passes(self, capsys):
        assert run_cli(["selfcheck"]) == 0
        out = capsys.readouterr().out
        assert "pass" in out
        for token in ("0.111111111111", "0.815850815851"):
            assert token in out  # 1/9 and 350/429 printed


class TestReadXyFile:
    def test_header_optional(self, tmp_path):
        p1 = tmp_path / "h.csv"
        p1.write_text("x,y\n0.5,1.0\n")
        p2 = tmp_path / "nh.csv"
        p2.write_text("0.5,1.0\n")
        assert read_xy_file(p1).ys == pytest.approx(read_xy_file(p2).ys)

    def test_sorting_applied(self, tmp_path):
        p = tmp_path / "u.csv"
        p.write_text("0.9,2.0\n0.1,1.0\n")
        s = read_xy_file(p)
        assert np.array_equal(s.xs, [0.1, 0.9])

    def test_empty_rejected(self, tmp_path):
        p = tmp_path / "e.csv"
        p.write_text("x,y\n")
        with pytest.raises(ValueError):
            read_xy_file(p)
