"""
Report Writer Tests
===================
Tests for CSV, JSON and SVG report output.
"""

import json
import math
from pathlib import Path

import pytest

from magsteklov.errors import InvalidArgumentError
from magsteklov.jobs.reports import ReportWriter, format_float, read_spectrum_csv
from magsteklov.schemas.reports import ViolationReport, ViolationRow
from magsteklov.schemas.spectrum import Spectrum


class TestFormatting:
    """Tests for float formatting."""

    def test_round_trip_representation(self):
        """Floats print with the shortest exact representation."""
        value = 1 / (math.e - 2)
        assert float(format_float(value)) == value

    def test_nan_is_empty(self):
        """NaN leaves the cell empty."""
        assert format_float(math.nan) == ""


class TestSpectrumReport:
    """Tests for spectrum tables."""

    def test_csv_round_trip(self, tmp_path: Path, disk_spectrum: Spectrum):
        """Values, labels and multiplicities survive a CSV round trip."""
        out = tmp_path / "spectrum.csv"
        ReportWriter(str(out)).write_spectrum(disk_spectrum, "csv")
        records = read_spectrum_csv(out.read_text())
        assert records == list(disk_spectrum.records)

    def test_csv_header(self, tmp_path: Path, disk_spectrum: Spectrum):
        """The header is fixed."""
        out = tmp_path / "spectrum.csv"
        ReportWriter(str(out)).write_spectrum(disk_spectrum)
        assert out.read_text().splitlines()[0] == "value,family,k,p,multiplicity"

    def test_unspecified_fields_are_empty(self, tmp_path: Path, b4_partial_spectrum: Spectrum):
        """Missing multiplicities leave empty cells."""
        out = tmp_path / "b4.csv"
        ReportWriter(str(out)).write_spectrum(b4_partial_spectrum)
        first_row = out.read_text().splitlines()[1]
        assert first_row == "1.5,B4Exact,1,0,"

    def test_json_lists_excluded_points(self, tmp_path: Path, b4_partial_spectrum: Spectrum):
        """Excluded pole points appear in the JSON document."""
        out = tmp_path / "b4.json"
        ReportWriter(str(out)).write_spectrum(b4_partial_spectrum, "json")
        document = json.loads(out.read_text())
        assert len(document["records"]) == 2
        assert document["excluded"][0]["mode"] == "B4CoexactMinus k=1 p=0"

    def test_svg_rejected(self, disk_spectrum: Spectrum):
        """Spectrum tables are not plotted."""
        with pytest.raises(InvalidArgumentError):
            ReportWriter().write_spectrum(disk_spectrum, "svg")

    def test_stdout(self, capsys: pytest.CaptureFixture[str], disk_spectrum: Spectrum):
        """Without a path the table goes to standard output."""
        ReportWriter().write_spectrum(disk_spectrum)
        assert capsys.readouterr().out.startswith("value,family,k,p,multiplicity")

    def test_rejects_wrong_header(self):
        """Foreign CSV files are refused."""
        with pytest.raises(InvalidArgumentError):
            read_spectrum_csv("a,b\n1,2\n")


class TestColumnReport:
    """Tests for curve tables."""

    def test_csv_breaks_at_nan(self, tmp_path: Path):
        """NaN cells are empty."""
        out = tmp_path / "curves.csv"
        ReportWriter(str(out)).write_columns({"t": [0.0, 1.0], "branch": [2.0, math.nan]})
        assert out.read_text().splitlines() == ["t,branch", "0.0,2.0", "1.0,"]

    def test_json_uses_null(self, tmp_path: Path):
        """NaN becomes null in JSON."""
        out = tmp_path / "curves.json"
        ReportWriter(str(out)).write_columns({"t": [0.0, 1.0], "branch": [2.0, math.nan]}, "json")
        assert json.loads(out.read_text()) == {"t": [0.0, 1.0], "branch": [2.0, None]}

    def test_svg(self, tmp_path: Path):
        """SVG output is a standalone document."""
        out = tmp_path / "curves.svg"
        ReportWriter(str(out)).write_columns(
            {"t": [0.0, 0.5, 1.0], "a": [1.0, 2.0, 3.0], "b": [3.0, math.nan, 1.0]},
            "svg",
            title="fig2",
        )
        assert "<svg" in out.read_text()

    def test_rejects_ragged_columns(self):
        """Columns must share a length."""
        with pytest.raises(InvalidArgumentError):
            ReportWriter().write_columns({"t": [0.0, 1.0], "a": [1.0]})

    def test_rejects_no_columns(self):
        """At least one column is needed."""
        with pytest.raises(InvalidArgumentError):
            ReportWriter().write_columns({})

    def test_rows(self, tmp_path: Path):
        """Generic rows mix floats with labels."""
        out = tmp_path / "first.csv"
        ReportWriter(str(out)).write_rows(["t", "value", "family"], [(1.0, 0.5, "B2Plus")])
        assert out.read_text().splitlines() == ["t,value,family", "1.0,0.5,B2Plus"]


class TestViolationReport:
    """Tests for diamagnetic reports."""

    @pytest.fixture
    def report(self) -> ViolationReport:
        row = ViolationRow(
            t=0.5, bound=1.3, actual=1.2, sigma0=1.5, violated=True, dominated=True
        )
        return ViolationReport(domain="b4", rows=[row], last_violated_t=0.5, crossing_t=2.997)

    def test_csv_crossing_line(self, tmp_path: Path, report: ViolationReport):
        """The CSV ends with the crossing location."""
        out = tmp_path / "violation.csv"
        ReportWriter(str(out)).write_violation(report)
        lines = out.read_text().splitlines()
        assert lines[0] == "t,bound,actual,sigma0,violated,dominated"
        assert lines[1] == "0.5,1.3,1.2,1.5,true,true"
        assert lines[-1] == "crossing_t,2.997"

    def test_json(self, tmp_path: Path, report: ViolationReport):
        """JSON carries the full model."""
        out = tmp_path / "violation.json"
        ReportWriter(str(out)).write_violation(report, "json")
        assert json.loads(out.read_text())["crossing_t"] == 2.997

    def test_document(self, capsys: pytest.CaptureFixture[str]):
        """Documents are written as indented JSON."""
        ReportWriter().write_document({"checks": [], "pass": True})
        assert json.loads(capsys.readouterr().out) == {"checks": [], "pass": True}
