"""Unit tests for report files and the comparison table."""

import pytest

from src.errors import ParseError
from src.models.report import ExperimentReport
from src.utils.aggregation import (
    dumps_report,
    format_table,
    load_report,
    loads_report,
    merge_reports,
    save_report,
    write_csv,
)


@pytest.fixture
def report():
    return (
        ExperimentReport()
        .add("no_defense", "e_gen", 0.25)
        .add("no_defense", "a_test", 0.7)
        .add("no_defense", "a_bl", 0.62)
        .add("dmp", "a_test", 0.68)
    )


class TestExperimentReport:
    """Test cases for ExperimentReport."""

    def test_accuracy_range(self):
        """Test accuracies outside [0, 1] are refused."""
        with pytest.raises(ValueError):
            ExperimentReport().add("x", "a_bl", 1.5)

    def test_e_gen_range(self):
        """Test E_gen may be negative but stays within [-1, 1]."""
        ExperimentReport().add("x", "e_gen", -0.2)
        with pytest.raises(ValueError):
            ExperimentReport().add("x", "e_gen", -1.5)

    def test_comma_in_id(self):
        """Test identifiers cannot break the CSV layout."""
        with pytest.raises(ValueError):
            ExperimentReport().add("a,b", "a_bl", 0.5)

    def test_get_last_value(self, report):
        """Test the latest value wins."""
        report.add("dmp", "a_test", 0.69)
        assert report.get("dmp", "a_test") == 0.69
        assert report.get("dmp", "a_wb") is None
        assert report.experiments() == ["no_defense", "dmp"]


class TestReportFiles:
    """Test cases for report serialization."""

    def test_dumps(self, report):
        """Test the header and full-precision values."""
        lines = dumps_report(report).splitlines()
        assert lines[0] == "experiment_id,metric,value"
        assert lines[1] == "no_defense,e_gen,0.25"
        assert lines[2] == "no_defense,a_test,0.69999999999999996"

    def test_save_and_load(self, report, tmp_path):
        """Test a saved report loads back with the same rows."""
        path = save_report(report, tmp_path / "reports" / "train.csv")
        assert path.read_text() == dumps_report(report)
        assert load_report(path).rows == report.rows

    def test_bad_header(self):
        """Test a wrong header is a parse error on line 1."""
        with pytest.raises(ParseError) as exc_info:
            loads_report("id,metric,value\nx,a_bl,0.5\n")
        assert exc_info.value.line == 1

    def test_bad_value(self):
        """Test a non-numeric value reports its line."""
        with pytest.raises(ParseError) as exc_info:
            loads_report("experiment_id,metric,value\nx,a_bl,0.5\nx,a_bb,high\n")
        assert exc_info.value.line == 3

    def test_merge(self, report, tmp_path):
        """Test files are concatenated in order."""
        first = save_report(report, tmp_path / "a.csv")
        second = save_report(ExperimentReport().add("dmp", "a_bl", 0.51), tmp_path / "b.csv")
        merged = merge_reports([first, second])
        assert len(merged) == len(report) + 1
        assert merged.rows[-1].metric == "a_bl"

    def test_write_csv_empty_cells(self, tmp_path):
        """Test None cells are written empty."""
        path = write_csv(tmp_path / "t.csv", ["a", "b"], [(1, None), (0.5, "x")])
        assert path.read_text() == "a,b\n1,\n0.5,x\n"


class TestFormatTable:
    """Test cases for format_table."""

    def test_table(self, report):
        """Test the fixed header, rounded cells and empty missing cells."""
        lines = format_table(report).splitlines()
        assert lines[0] == "model,e_gen,a_test,a_wb,a_bb,a_bl,a_nn"
        assert lines[1] == "no_defense,0.2500,0.7000,,,0.6200,"
        assert lines[2] == "dmp,,0.6800,,,,"

    def test_skips_rows_without_columns(self):
        """Test experiments with only other metrics are left out."""
        table = format_table(ExperimentReport().add("dmp", "mean_ref_entropy", 0.3))
        assert table == "model,e_gen,a_test,a_wb,a_bb,a_bl,a_nn\n"
