import xml.etree.ElementTree as ET

import pytest

from defectcost import parse_records
from defectcost.cli import cli_dispatch

MATRIX_E = "file,loc,d1,d2\ns1,100,1,1\ns2,50,0,1\ns3,10,0,0\n"
PREDICTION_E = "file,label\ns1,1\ns2,0\ns3,0\n"


@pytest.fixture
def matrix_path(tmp_path):
    path = tmp_path / "matrix.csv"
    path.write_text(MATRIX_E)
    return str(path)


@pytest.fixture
def prediction_path(tmp_path):
    path = tmp_path / "prediction.csv"
    path.write_text(PREDICTION_E)
    return str(path)


class TestExitCodes:
    def test_unknown_subcommand_is_usage_error(self, capsys):
        assert cli_dispatch(["frobnicate"]) == 2

    def test_unknown_flag_is_usage_error(self, matrix_path, capsys):
        assert cli_dispatch(["validate", matrix_path, "--bogus"]) == 2

    def test_missing_required_flag_is_usage_error(self, capsys):
        assert cli_dispatch(["simulate"]) == 2

    def test_data_error_is_exit_one(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("file,loc,d1,d2\ns1,10,1,0\n")
        assert cli_dispatch(["validate", str(bad)]) == 1
        assert "d2" in capsys.readouterr().err

    def test_missing_file_is_exit_one(self, capsys):
        assert cli_dispatch(["validate", "/nonexistent/matrix.csv"]) == 1

    def test_success_is_exit_zero(self, matrix_path, capsys):
        assert cli_dispatch(["validate", matrix_path]) == 0


class TestCommands:
    def test_validate_reports_counts(self, matrix_path, capsys):
        assert cli_dispatch(["validate", matrix_path]) == 0
        out = capsys.readouterr().out
        assert "artifacts=3" in out and "defects=2" in out

    def test_summarize_row(self, matrix_path, capsys):
        assert cli_dispatch(["summarize", matrix_path]) == 0
        out = capsys.readouterr().out
        assert "mean_members=1.5" in out
        assert "mean_size=53.3333" in out

    def test_boundaries_worked_example(self, matrix_path, prediction_path, capsys):
        code = cli_dispatch(
            [
                "boundaries",
                "--matrix", matrix_path,
                "--predictions", prediction_path,
                "--kind", "const-n-m",
                "--p-qf", "0",
            ]
        )
        assert code == 0
        assert capsys.readouterr().out.strip() == "lower=1 upper=2 cost_saving=true"

    def test_cost_with_profit_against_baselines(self, matrix_path, prediction_path, capsys):
        code = cli_dispatch(
            [
                "cost",
                "--matrix", matrix_path,
                "--predictions", prediction_path,
                "--kind", "const-n-m",
                "--c-ratio", "10",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "cost=11" in out
        assert "baseline_no_qa=20" in out and "profit_vs_no_qa=9" in out
        assert "baseline_full_qa=3" in out and "profit_vs_full_qa=-8" in out

    def test_simulate_then_plot_pipeline(self, matrix_path, tmp_path, capsys):
        records_path = tmp_path / "records.csv"
        svg_path = tmp_path / "plot.svg"
        code = cli_dispatch(
            [
                "simulate",
                "--matrix", matrix_path,
                "--seed", "7",
                "--acc-min", "0.1",
                "--acc-max", "0.9",
                "--acc-step", "0.2",
                "--reps", "4",
                "--out", str(records_path),
            ]
        )
        assert code == 0
        text = records_path.read_text()
        records = parse_records(text)
        assert len(records) == 5 * 4 * 2 * 6
        code = cli_dispatch(
            [
                "plot",
                "--in", str(records_path),
                "--metric", "precision",
                "--kind", "const-n-m",
                "--out", str(svg_path),
            ]
        )
        assert code == 0
        root = ET.fromstring(svg_path.read_text())
        assert root.tag.endswith("svg")

    def test_simulate_to_stdout(self, matrix_path, capsys):
        code = cli_dispatch(
            [
                "simulate",
                "--matrix", matrix_path,
                "--seed", "1",
                "--acc-min", "0.5",
                "--acc-max", "0.5",
                "--reps", "1",
            ]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("project,accuracy")
        assert len(out.strip().split("\n")) == 1 + 12
