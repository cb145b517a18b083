"""
Report Writers
==============
Write spectra, curve tables and verification documents as CSV, JSON or SVG.
"""

import csv
import io
import json
import math
import sys
from collections.abc import Iterator, Sequence
from contextlib import contextmanager
from pathlib import Path
from typing import Any, TextIO

import structlog

from magsteklov.errors import InvalidArgumentError
from magsteklov.schemas.reports import OutputFormat, ViolationReport
from magsteklov.schemas.spectrum import EigenvalueRecord, Family, ModeIndex, Spectrum

logger = structlog.get_logger()

SPECTRUM_HEADER = ["value", "family", "k", "p", "multiplicity"]
VIOLATION_HEADER = ["t", "bound", "actual", "sigma0", "violated", "dominated"]


def format_float(value: float) -> str:
    """Shortest round-trip representation; empty for NaN."""
    if math.isnan(value):
        return ""
    return repr(float(value))


def _blank(value: int | None) -> str:
    return "" if value is None else str(value)


class ReportWriter:
    """
    Write reports to a file or, without a path, to standard output.
    """

    def __init__(self, out: str | None = None):
        self.out = Path(out) if out else None
        if self.out is not None:
            self.out.parent.mkdir(parents=True, exist_ok=True)

    @contextmanager
    def _stream(self) -> Iterator[TextIO]:
        if self.out is None:
            yield sys.stdout
            return
        with open(self.out, "w", newline="", encoding="utf-8") as f:
            yield f

    def _done(self, kind: str, rows: int) -> None:
        logger.info("Report written", kind=kind, rows=rows, path=str(self.out or "<stdout>"))

    def write_spectrum(self, spectrum: Spectrum, fmt: OutputFormat = "csv") -> None:
        """
        Spectrum table sorted ascending.

        Columns: value, family, k, p, multiplicity; p and multiplicity stay
        empty when unspecified.
        """
        if fmt == "svg":
            raise InvalidArgumentError("a spectrum table has no SVG rendering")

        with self._stream() as f:
            if fmt == "json":
                document = {
                    "t": spectrum.t,
                    "cutoff": spectrum.cutoff,
                    "records": [
                        {
                            "value": r.value,
                            "family": r.mode.family.value,
                            "k": r.mode.k,
                            "p": r.mode.p,
                            "sign": r.mode.sign,
                            "multiplicity": r.multiplicity,
                        }
                        for r in spectrum.records
                    ],
                    "excluded": [
                        {"mode": e.mode.label(), "t": e.t, "reason": e.reason}
                        for e in spectrum.excluded
                    ],
                }
                json.dump(document, f, indent=2)
                f.write("\n")
            else:
                writer = csv.writer(f)
                writer.writerow(SPECTRUM_HEADER)
                for r in spectrum.records:
                    writer.writerow(
                        [
                            format_float(r.value),
                            r.mode.family.value,
                            r.mode.k,
                            _blank(r.mode.p),
                            _blank(r.multiplicity),
                        ]
                    )
        self._done("spectrum", len(spectrum.records))

    def write_columns(
        self,
        columns: dict[str, Sequence[float]],
        fmt: OutputFormat = "csv",
        x_label: str = "t",
        y_label: str = "value",
        title: str | None = None,
    ) -> None:
        """
        Column table keyed by header; the first column is the abscissa.

        SVG draws one polyline per remaining column; NaN entries break the
        line.
        """
        names = list(columns)
        if not names:
            raise InvalidArgumentError("no columns to write")
        length = len(columns[names[0]])
        if any(len(columns[name]) != length for name in names):
            raise InvalidArgumentError("columns differ in length")

        if fmt == "svg":
            self._write_svg(columns, x_label, y_label, title)
        else:
            with self._stream() as f:
                if fmt == "json":
                    document = {
                        name: [None if math.isnan(v) else v for v in columns[name]]
                        for name in names
                    }
                    json.dump(document, f, indent=2)
                    f.write("\n")
                else:
                    writer = csv.writer(f)
                    writer.writerow(names)
                    for i in range(length):
                        writer.writerow([format_float(columns[name][i]) for name in names])
        self._done("columns", length)

    def write_rows(
        self,
        header: Sequence[str],
        rows: Sequence[Sequence[Any]],
        fmt: OutputFormat = "csv",
    ) -> None:
        """Generic row table; floats use the round-trip representation."""
        if fmt == "svg":
            raise InvalidArgumentError("row tables have no SVG rendering")
        with self._stream() as f:
            if fmt == "json":
                json.dump([dict(zip(header, row, strict=True)) for row in rows], f, indent=2)
                f.write("\n")
            else:
                writer = csv.writer(f)
                writer.writerow(header)
                for row in rows:
                    writer.writerow([format_float(v) if isinstance(v, float) else v for v in row])
        self._done("rows", len(rows))

    def write_violation(self, report: ViolationReport, fmt: OutputFormat = "csv") -> None:
        """Diamagnetic rows; the CSV closes with a crossing line for B4."""
        if fmt == "svg":
            columns = {
                "t": [r.t for r in report.rows],
                "bound": [r.bound for r in report.rows],
                "actual": [r.actual for r in report.rows],
                "sigma0": [r.sigma0 for r in report.rows],
            }
            self.write_columns(columns, "svg", "t", "first eigenvalue", report.domain)
            return

        with self._stream() as f:
            if fmt == "json":
                json.dump(report.model_dump(), f, indent=2)
                f.write("\n")
            else:
                writer = csv.writer(f)
                writer.writerow(VIOLATION_HEADER)
                for r in report.rows:
                    writer.writerow(
                        [
                            format_float(r.t),
                            format_float(r.bound),
                            format_float(r.actual),
                            format_float(r.sigma0),
                            str(r.violated).lower(),
                            str(r.dominated).lower(),
                        ]
                    )
                if report.crossing_t is not None:
                    writer.writerow([])
                    writer.writerow(["crossing_t", format_float(report.crossing_t)])
        self._done("violation", len(report.rows))

    def write_document(self, document: dict[str, Any]) -> None:
        """JSON document, e.g. the verification report."""
        with self._stream() as f:
            json.dump(document, f, indent=2, default=str)
            f.write("\n")
        self._done("document", len(document))

    def _write_svg(
        self,
        columns: dict[str, Sequence[float]],
        x_label: str,
        y_label: str,
        title: str | None,
    ) -> None:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        names = list(columns)
        x = columns[names[0]]
        fig, ax = plt.subplots(figsize=(8, 5))
        for name in names[1:]:
            ax.plot(x, columns[name], label=name, linewidth=1.2)
        ax.set_xlabel(x_label)
        ax.set_ylabel(y_label)
        if title:
            ax.set_title(title)
        if len(names) <= 13:
            ax.legend(fontsize="small")
        ax.grid(True, alpha=0.3)

        buffer = io.BytesIO()
        fig.savefig(buffer, format="svg", bbox_inches="tight")
        plt.close(fig)
        with self._stream() as f:
            f.write(buffer.getvalue().decode("utf-8"))


def read_spectrum_csv(text: str) -> list[EigenvalueRecord]:
    """Parse a spectrum table written by ``ReportWriter.write_spectrum``."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != SPECTRUM_HEADER:
        raise InvalidArgumentError(f"unexpected header {reader.fieldnames}")
    records = []
    for row in reader:
        records.append(
            EigenvalueRecord(
                value=float(row["value"]),
                mode=ModeIndex(
                    k=int(row["k"]),
                    p=int(row["p"]) if row["p"] else None,
                    family=Family(row["family"]),
                ),
                multiplicity=int(row["multiplicity"]) if row["multiplicity"] else None,
            )
        )
    return records
