from __future__ import annotations

import csv
import json

import pytest

from fuzzpa.cli import main
from fuzzpa.learner import DELTA_RATE_GRID


def read_json(path):
    with open(path) as handle:
        return json.load(handle)


def bench_args(data, out, *extra):
    return ["bench", "--data", str(data), "--folds", "2", "--out", str(out), *extra]


class TestBench:
    def test_happy_path_writes_report_and_csv(self, toy_csv, tmp_path, capsys):
        assert main(bench_args(toy_csv, tmp_path)) == 0
        report = read_json(tmp_path / "report.json")
        assert report["schema_version"] == 1
        assert report["command"] == "bench"
        assert report["config"]["model"] == "fuzzy"
        assert report["config"]["folds"] == 2
        results = report["results"]
        assert 0.0 <= results["mean_accuracy"] <= 1.0
        assert len(results["fold_accuracies"]) == 2
        assert set(report["meta"]) >= {"timestamp", "wall_time_s", "jobs", "version"}
        with open(tmp_path / "results.csv", newline="") as handle:
            rows = list(csv.reader(handle))
        assert rows[0] == ["model", "dataset", "mean_accuracy", "std", "mean_time_s"]
        assert len(rows) == 2
        out = capsys.readouterr().out
        assert "fuzzy(ovr) on toy:" in out
        assert "report.json" in out

    def test_missing_dataset_is_a_usage_error(self, tmp_path, capsys):
        assert main(bench_args(tmp_path / "nope.csv", tmp_path)) == 2
        assert "dataset file not found" in capsys.readouterr().err

    def test_unparseable_cell_is_a_data_error(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b,label\n0.1,0.2,x\n0.3,oops,y\n0.5,0.6,x\n0.7,0.8,y\n")
        assert main(bench_args(bad, tmp_path)) == 3
        assert "data error" in capsys.readouterr().err

    def test_too_many_folds_is_a_usage_error(self, toy_csv, tmp_path, capsys):
        args = ["bench", "--data", str(toy_csv), "--folds", "5", "--out", str(tmp_path)]
        assert main(args) == 2
        assert "error:" in capsys.readouterr().err

    def test_delta_reports_per_fold_rates(self, toy_csv, tmp_path):
        assert main(bench_args(toy_csv, tmp_path, "--model", "delta")) == 0
        rates = read_json(tmp_path / "report.json")["results"]["learning_rates"]
        assert len(rates) == 2
        assert all(rate in DELTA_RATE_GRID for rate in rates)

    def test_reports_are_identical_apart_from_meta(self, toy_csv, tmp_path):
        for out, jobs in (("a", "1"), ("b", "1"), ("c", "2")):
            assert main(bench_args(toy_csv, tmp_path / out, "--jobs", jobs)) == 0
        reports = [read_json(tmp_path / out / "report.json") for out in ("a", "b", "c")]
        for report in reports:
            report.pop("meta")
        assert reports[0] == reports[1] == reports[2]

    def test_data_dir_env_resolves_relative_paths(self, toy_csv, tmp_path, monkeypatch):
        monkeypatch.setenv("FUZZPA_DATA_DIR", str(toy_csv.parent))
        monkeypatch.chdir(tmp_path)
        assert main(bench_args(toy_csv.name, tmp_path)) == 0


class TestSaveModelAndInspect:
    def test_fuzzy_round_trip(self, toy_csv, tmp_path, capsys):
        model_path = tmp_path / "model.json"
        args = bench_args(toy_csv, tmp_path, "--save-model", str(model_path))
        assert main(args) == 0
        payload = read_json(model_path)
        assert payload["schema_version"] == 1
        capsys.readouterr()

        assert main(["inspect", str(model_path), "-k", "2"]) == 0
        out = capsys.readouterr().out
        assert "== f_" in out
        assert "largest consequents:" in out
        assert "smallest consequents:" in out
        assert "If " in out

    def test_saved_delta_model_records_the_selected_rate(self, toy_csv, tmp_path):
        model_path = tmp_path / "model.json"
        args = bench_args(
            toy_csv, tmp_path, "--model", "delta", "--save-model", str(model_path)
        )
        assert main(args) == 0
        assert read_json(model_path)["selected_learning_rate"] in DELTA_RATE_GRID

    def test_inspect_linear_model_is_a_usage_error(self, toy_csv, tmp_path, capsys):
        model_path = tmp_path / "linear.json"
        args = bench_args(
            toy_csv, tmp_path, "--model", "pa-linear", "--save-model", str(model_path)
        )
        assert main(args) == 0
        assert main(["inspect", str(model_path)]) == 2
        assert "linear representation" in capsys.readouterr().err

    def test_inspect_missing_file_is_a_usage_error(self, tmp_path, capsys):
        assert main(["inspect", str(tmp_path / "ghost.json")]) == 2
        assert "model file not found" in capsys.readouterr().err

    def test_inspect_nonpositive_k_is_a_usage_error(self, toy_csv, tmp_path, capsys):
        model_path = tmp_path / "model.json"
        assert main(bench_args(toy_csv, tmp_path, "--save-model", str(model_path))) == 0
        assert main(["inspect", str(model_path), "-k", "0"]) == 2


def drift_args(out, *extra):
    return ["drift", "--steps", "5", "--out", str(out), *extra]


class TestDrift:
    def test_single_scheme_run(self, tmp_path, capsys):
        assert main(drift_args(tmp_path, "--scheme", "ovr")) == 0
        report = read_json(tmp_path / "report.json")
        assert report["command"] == "drift"
        assert report["config"]["schemes"] == ["ovr"]
        assert report["config"]["drift"]["total_steps"] == 5
        run = report["results"]["ovr"]
        assert 0.0 <= run["prequential_accuracy"] <= 1.0
        assert run["num_patterns"] == 50
        assert set(run["traces"]) == {"f_1", "f_2", "f_3"}
        out = capsys.readouterr().out
        assert "ovr: prequential accuracy" in out

    def test_trace_files_one_row_per_step(self, tmp_path):
        assert main(drift_args(tmp_path, "--scheme", "ovo")) == 0
        for pair in ("1_2", "1_3", "2_3"):
            with open(tmp_path / f"trace_f_{pair}.csv", newline="") as handle:
                rows = list(csv.reader(handle))
            assert rows[0] == ["t", "argmax_label", "argmin_label", "max_c", "min_c"]
            assert len(rows) == 6

    def test_both_schemes_write_six_traces(self, tmp_path):
        assert main(drift_args(tmp_path)) == 0
        report = read_json(tmp_path / "report.json")
        assert report["config"]["schemes"] == ["ovr", "ovo"]
        assert len(list(tmp_path.glob("trace_*.csv"))) == 6

    def test_sigma_flag_is_a_standard_deviation_by_default(self, tmp_path):
        assert main(drift_args(tmp_path, "--scheme", "ovr", "--sigma", "0.2")) == 0
        report = read_json(tmp_path / "report.json")
        assert report["config"]["drift"]["sigma"] == 0.2

    def test_sigma_is_variance_takes_the_square_root(self, tmp_path):
        args = drift_args(tmp_path, "--scheme", "ovr", "--sigma", "0.01")
        assert main([*args, "--sigma-is-variance"]) == 0
        report = read_json(tmp_path / "report.json")
        assert report["config"]["drift"]["sigma"] == pytest.approx(0.1)

    def test_bad_decay_is_a_usage_error(self, tmp_path, capsys):
        assert main(drift_args(tmp_path, "--decay", "0")) == 2
        assert "decay" in capsys.readouterr().err

    def test_reports_are_identical_apart_from_meta(self, tmp_path):
        for out in ("a", "b"):
            assert main(drift_args(tmp_path / out, "--seed", "3")) == 0
        reports = [read_json(tmp_path / out / "report.json") for out in ("a", "b")]
        for report in reports:
            report.pop("meta")
        assert reports[0] == reports[1]


class TestPartitionInfo:
    def test_reference_problem_size(self, capsys):
        assert main(["partition-info", "--n", "10", "--m", "3"]) == 0
        out = capsys.readouterr().out
        assert "full grid: 59049 rules" in out
        assert "dc-limited (<= 2 active axes): 436 rules" in out

    def test_two_feature_grid(self, capsys):
        assert main(["partition-info", "--n", "2", "--m", "3"]) == 0
        out = capsys.readouterr().out
        assert "full grid: 9 rules" in out
        assert "dc-limited (<= 2 active axes): 16 rules" in out

    def test_single_feature(self, capsys):
        assert main(["partition-info", "--n", "1", "--m", "2"]) == 0
        out = capsys.readouterr().out
        assert "full grid: 2 rules" in out
        assert "dc-limited (<= 2 active axes): 3 rules" in out

    @pytest.mark.parametrize("argv", [["--n", "0", "--m", "3"], ["--n", "2", "--m", "1"]])
    def test_degenerate_sizes_are_usage_errors(self, argv, capsys):
        assert main(["partition-info", *argv]) == 2
        assert "error:" in capsys.readouterr().err


class TestParser:
    def test_unknown_command_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["bogus"])
        assert excinfo.value.code == 2

    def test_missing_required_flag_exits_2(self):
        with pytest.raises(SystemExit) as excinfo:
            main(["bench"])
        assert excinfo.value.code == 2

    def test_version_flag(self, capsys):
        with pytest.raises(SystemExit) as excinfo:
            main(["--version"])
        assert excinfo.value.code == 0
        assert "fuzzpa" in capsys.readouterr().out
