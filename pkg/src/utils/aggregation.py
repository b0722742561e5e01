"""Report aggregation and CSV utilities."""

import csv
import io
import logging
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union

from ..errors import ParseError
from ..models.report import TABLE_COLUMNS, ExperimentReport


logger = logging.getLogger(__name__)

REPORT_HEADER = ["experiment_id", "metric", "value"]


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    """Write a CSV file with a one-line header.

    Floats use 17 significant digits so reruns produce byte-identical files.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(v) for v in row])
    logger.debug(f"Wrote {path}")
    return path


def dumps_report(report: ExperimentReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(REPORT_HEADER)
    for row in report.rows:
        writer.writerow([row.experiment_id, row.metric, format_cell(row.value)])
    return buffer.getvalue()


def save_report(report: ExperimentReport, path: Union[str, Path]) -> Path:
    return write_csv(
        path, REPORT_HEADER, ((row.experiment_id, row.metric, row.value) for row in report.rows)
    )


def loads_report(text: str) -> ExperimentReport:
    """Parse an experiment_id,metric,value CSV.

    Raises:
        ParseError: On a wrong header or malformed row
    """
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != REPORT_HEADER:
        raise ParseError(f"expected header {','.join(REPORT_HEADER)}", 1)
    report = ExperimentReport()
    for number, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != 3:
            raise ParseError(f"expected 3 columns, found {len(row)}", number)
        try:
            report.add(row[0], row[1], float(row[2]))
        except ValueError as e:
            raise ParseError(str(e), number)
    return report


def load_report(path: Union[str, Path]) -> ExperimentReport:
    return loads_report(Path(path).read_text(encoding="utf-8"))


def merge_reports(paths: Sequence[Union[str, Path]]) -> ExperimentReport:
    """Concatenate report files in the given order."""
    merged = ExperimentReport()
    for path in paths:
        merged.extend(load_report(path))
    logger.info(f"Merged {len(paths)} report files into {len(merged)} rows")
    return merged


def format_table(report: ExperimentReport, columns: List[str] = TABLE_COLUMNS) -> str:
    """Render the model,e_gen,a_test,... comparison table as CSV text.

    Experiments missing every column are skipped; missing cells stay empty.
    """
    lines = [",".join(["model"] + columns)]
    for experiment, values in report.as_table(columns).items():
        if all(v is None for v in values.values()):
            continue
        lines.append(",".join([experiment] + [_table_cell(values[c]) for c in columns]))
    return "\n".join(lines) + "\n"


def _table_cell(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.4f}"
