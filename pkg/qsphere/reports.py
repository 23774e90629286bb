"""Deterministic JSON, CSV and triplet writers for suite reports, spectra and scans."""
from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path
from typing import Any, Iterable, Optional, Sequence, TextIO

from qsphere.axioms import CheckReport, ScanRow, SpectrumRow
from qsphere.config import RunConfig
from qsphere.errors import ConfigError
from qsphere.operators import Operator, export_triplets

SCAN_FIELDS = {
    "bound": ("shells", "q", "alpha", "norm"),
    "limit": ("q", "shells", "quantity", "deviation"),
}
SPECTRUM_FIELDS = ("l", "eigenvalue", "multiplicity", "numeric", "deviation")


def dumps_json(document: Any) -> str:
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def suite_document(config: RunConfig, reports: Sequence[CheckReport]) -> dict:
    failed = [r.name for r in reports if not r.passed]
    return {
        "config": config.to_dict(),
        "summary": {"total": len(reports), "passed": len(reports) - len(failed), "failed": failed},
        "checks": [r.to_dict() for r in reports],
    }


def report_rows(reports: Iterable[CheckReport]) -> list[dict]:
    rows = []
    for report in reports:
        row = report.to_dict()
        z_re, z_im = row.pop("z")
        row["z_re"], row["z_im"] = z_re, z_im
        row["variants"] = "/".join(row["variants"])
        rows.append(row)
    return rows


def spectrum_rows(rows: Iterable[SpectrumRow]) -> list[dict]:
    return [
        {
            "l": str(row.l),
            "eigenvalue": row.analytic,
            "multiplicity": row.multiplicity,
            "numeric": row.numeric,
            "deviation": row.deviation,
        }
        for row in rows
    ]


def scan_rows(kind: str, rows: Iterable[ScanRow]) -> list[dict]:
    first, second, label, value = SCAN_FIELDS[kind]
    return [
        {
            first: getattr(row, first),
            second: getattr(row, second),
            label: row.label,
            value: row.value,
        }
        for row in rows
    ]


def rows_to_csv(rows: Sequence[dict], fieldnames: Optional[Sequence[str]] = None) -> str:
    """CSV with a header row and CRLF line endings; column order follows ``fieldnames``."""
    output = io.StringIO(newline="")
    if fieldnames is None:
        fieldnames = list(rows[0]) if rows else ["no_data"]
    writer = csv.DictWriter(output, fieldnames=list(fieldnames), lineterminator="\r\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({key: row.get(key, "") for key in fieldnames})
    return output.getvalue()


def triplets_text(op: Operator) -> tuple[str, int]:
    buffer = io.StringIO()
    count = export_triplets(op, buffer)
    return buffer.getvalue(), count


def sha256_hex(payload: bytes) -> str:
    return hashlib.sha256(payload).hexdigest()


def write_output(text: str, out: Optional[str], stream: TextIO) -> None:
    """Write to ``out`` when given, otherwise to ``stream``; no newline translation either way."""
    if out:
        try:
            with Path(out).open("w", encoding="utf-8", newline="") as handle:
                handle.write(text)
        except OSError as e:
            raise ConfigError(f"cannot write {out}: {e.strerror or e}") from e
    else:
        stream.write(text)
