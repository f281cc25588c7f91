"""Report records and their JSON / CSV / table renderings.

Reals are always written with 17 significant digits, which is enough for
every double to survive a print/parse round trip unchanged.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import Optional

COLUMNS = ("family", "alpha", "beta", "n", "i", "formula", "oracle", "bound", "rel_disc", "ns")
LEDGER_COLUMNS = ("ledger", "ledger_middle")


def fmt(x: float) -> str:
    return format(float(x), ".17g")


@dataclass
class Report:
    family: str
    n: int
    i: int
    alpha: Optional[float] = None
    beta: Optional[float] = None
    formula: Optional[float] = None
    oracle: Optional[float] = None
    bound: Optional[float] = None
    rel_disc: Optional[float] = None
    ns: int = 0
    ledger: Optional[list] = None
    ledger_middle: Optional[float] = None

    def fields(self, with_ledger=False) -> dict:
        """Present fields in column order; absent optionals are left out."""
        out = {}
        for key in COLUMNS + (LEDGER_COLUMNS if with_ledger else ()):
            val = getattr(self, key)
            if val is not None:
                out[key] = val
        return out


def relative_discrepancy(formula: float, reference: float) -> float:
    diff = abs(formula - reference)
    return diff / abs(reference) if reference != 0 else diff


def _json_value(v):
    if isinstance(v, bool) or v is None:
        return json.dumps(v)
    if isinstance(v, int):
        return str(v)
    if isinstance(v, float):
        if not math.isfinite(v):
            return json.dumps(v)
        return fmt(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return json.dumps(v)


def to_json_line(record: dict) -> str:
    """One flat JSON object; floats carry 17 significant digits."""
    body = ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in record.items())
    return "{" + body + "}"


def _csv_cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return fmt(v)
    if isinstance(v, (list, tuple)):
        return " ".join(fmt(x) for x in v)
    return str(v)


def render(reports, fmt_name: str, with_ledger=False, columns=None) -> str:
    """Render a list of reports (or plain dict rows) as json lines, csv or a table."""
    rows = [r.fields(with_ledger) if isinstance(r, Report) else r for r in reports]
    if columns is None:
        columns = list(COLUMNS + (LEDGER_COLUMNS if with_ledger else ()))
    if fmt_name == "json":
        return "".join(to_json_line(r) + "\n" for r in rows)
    if fmt_name == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(columns)
        for r in rows:
            writer.writerow([_csv_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    if fmt_name == "table":
        return _table(rows, columns)
    raise ValueError(f"unknown format {fmt_name!r}")


def _table(rows, columns):
    # drop columns that are empty everywhere
    cols = [c for c in columns if any(r.get(c) is not None for r in rows)]
    cells = [[_csv_cell(r.get(c)) for c in cols] for r in rows]
    widths = [max([len(c)] + [len(row[k]) for row in cells]) for k, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list:
    """Read back a csv rendering; numeric cells become int or float, empty cells are dropped."""
    out = []
    for row in csv.DictReader(io.StringIO(text)):
        rec = {}
        for k, v in row.items():
            if v == "":
                continue
            rec[k] = _parse_scalar(k, v)
        out.append(rec)
    return out


def _parse_scalar(key, v):
    if key in ("n", "i", "ns"):
        return int(v)
    if key == "ledger":
        return [float(x) for x in v.split()]
    try:
        return float(v)
    except ValueError:
        return v
