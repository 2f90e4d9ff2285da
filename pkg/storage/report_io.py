"""
Report and per-image result files.

JSON is written with sorted keys and no timestamps, so identical runs give
byte-identical files.
"""
import csv
import json
from pathlib import Path

from models.report import EvalReport, scaled

CSV_COLUMNS = ("id", "cdd_before", "cdd_after", "status")


def save_json(path, document):
    """Write a JSON document with sorted keys, creating parent directories."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, indent=2, sort_keys=True)
        f.write("\n")


def save_report(path, report: EvalReport):
    """
    Save an evaluation report.

    ``.csv`` writes one row per entry (id, cdd_before, cdd_after, status, CDD x1000);
    any other extension writes the full JSON report.
    """
    path = Path(path)
    if path.suffix.lower() != ".csv":
        save_json(path, report.to_dict())
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f)
        writer.writerow(CSV_COLUMNS)
        for entry in report.entries:
            writer.writerow([
                entry.id,
                "" if entry.cdd_before is None else repr(scaled(entry.cdd_before)),
                "" if entry.cdd_after is None else repr(scaled(entry.cdd_after)),
                entry.status,
            ])

