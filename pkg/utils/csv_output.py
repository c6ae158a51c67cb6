"""
CSV emission for the commands.

Numbers are written with CSV_SIGNIFICANT_DIGITS significant digits in
general format, ``nan`` marks excluded points and lines end in ``\\n`` on
every platform, so identical runs give byte-identical files.
"""

import csv
import math
import sys
from collections.abc import Iterable, Sequence
from pathlib import Path

from config import settings
from utils.logging import get_logger

logger = get_logger(__name__)


def format_number(value: float) -> str:
    """Format a float, writing ``nan`` for missing values."""
    if value is None or math.isnan(value):
        return "nan"
    return f"{value:.{settings.CSV_SIGNIFICANT_DIGITS}g}"


def write_rows(
    header: Sequence[str],
    rows: Iterable[Sequence[float]],
    output_path: Path | None = None,
) -> int:
    """
    Write a header and numeric rows as CSV.

    Args:
        header: Column names
        rows: Rows of floats, None or NaN for excluded values
        output_path: Destination file, standard output when None

    Returns:
        Number of data rows written
    """
    if output_path is None:
        return _write(sys.stdout, header, rows)
    output_path.parent.mkdir(parents=True, exist_ok=True)
    with output_path.open("w", encoding="utf-8", newline="") as handle:
        count = _write(handle, header, rows)
    logger.info(f"Wrote {count} rows to {output_path}", extra={"path": str(output_path)})
    return count


def _write(handle, header: Sequence[str], rows: Iterable[Sequence[float]]) -> int:
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([format_number(value) for value in row])
        count += 1
    return count
