"""
Row rendering and file export.

Renders rows of a tree as text, JSON or CSV, and writes rows and
verification reports to files.
"""

import csv
import io
import json
from typing import List

from loguru import logger

from cwforest.core.rational import Rational
from cwforest.core.verify import VerificationReport

ROW_FORMATS = ("text", "json", "csv")
CSV_HEADER = ["row", "index", "numerator", "denominator"]


def render_row(entries: List[Rational], n: int, fmt: str = "text") -> str:
    """
    Render one row of a tree.

    Text mode prints fractions space-separated with integers bare ("5", not
    "5/1"); JSON mode always spells out {"n": ..., "d": ...}.
    """
    if fmt == "text":
        return " ".join(str(q) for q in entries)
    if fmt == "json":
        return json.dumps([q.to_dict() for q in entries], separators=(",", ":"))
    if fmt == "csv":
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for i, q in enumerate(entries, start=1):
            writer.writerow([n, i, q.numer, q.denom])
        return buffer.getvalue().rstrip("\n")
    raise ValueError(f"unknown row format {fmt!r}; expected one of {ROW_FORMATS}")


class ExportManager:
    """
    Handles exporting rows and reports to files.
    """

    @staticmethod
    def export_row(entries: List[Rational], n: int, filepath: str) -> bool:
        """
        Export one row to a file; ``.json`` paths get JSON, anything else CSV.

        Args:
            entries: The row, left to right
            n: Row number
            filepath: Path to save the file

        Returns:
            bool: True if export successful, False otherwise
        """
        fmt = "json" if filepath.endswith(".json") else "csv"
        try:
            with open(filepath, "w", newline="", encoding="utf-8") as f:
                f.write(render_row(entries, n, fmt) + "\n")
            logger.info(f"Row {n} ({len(entries)} entries) exported to {filepath}")
            return True
        except OSError as e:
            logger.error(f"Error exporting row {n}: {e}")
            return False

    @staticmethod
    def export_report(report: VerificationReport, filepath: str) -> bool:
        try:
            with open(filepath, "w", encoding="utf-8") as f:
                f.write(report.to_json() + "\n")
            logger.info(f"{report.claim} report exported to {filepath}")
            return True
        except OSError as e:
            logger.error(f"Error exporting {report.claim} report: {e}")
            return False
