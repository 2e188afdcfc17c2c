"""Run reports and their JSON, CSV and text-table renderings.

Reports carry no timestamps or timings, so identical inputs give identical
bytes.  Machine formats keep 15 significant digits, tables 6.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction

SCHEMA = "dunklsolve.report/1"
FORMATS = ("table", "json", "csv")


def _machine(v):
    if isinstance(v, bool) or v is None or isinstance(v, str):
        return v
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else float(v)
    if isinstance(v, int):
        return v
    if isinstance(v, float):
        return float(f"{v:.15g}")
    if isinstance(v, (list, tuple)):
        return [_machine(x) for x in v]
    if isinstance(v, dict):
        return {k: _machine(x) for k, x in v.items()}
    return float(f"{float(v):.15g}")


def _human(v) -> str:
    if isinstance(v, bool):
        return "PASS" if v else "FAIL"
    if v is None:
        return "-"
    if isinstance(v, (str, Fraction, int)):
        return str(v)
    return f"{float(v):.6g}"


@dataclass
class RunReport:
    command: str
    params: dict
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    passed: bool | None = None
    notes: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "command": self.command,
            "params": _machine(self.params),
            "columns": list(self.columns),
            "rows": [dict(zip(self.columns, _machine(list(r)))) for r in self.rows],
            "passed": self.passed,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(self.columns)
        for row in self.rows:
            w.writerow([_csv_cell(v) for v in _machine(list(row))])
        return buf.getvalue()

    def to_table(self) -> str:
        lines = [f"# {self.command}  ({SCHEMA})"]
        lines += [f"# {k} = {_human_param(v)}" for k, v in self.params.items()]
        cells = [list(self.columns)] + [[_human(v) for v in row] for row in self.rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(self.columns))]
        for k, r in enumerate(cells):
            lines.append("  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip())
            if k == 0:
                lines.append("  ".join("-" * w for w in widths))
        if not self.rows:
            lines.append("(no rows)")
        lines += [f"# note: {n}" for n in self.notes]
        if self.passed is not None:
            lines.append(f"# result: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        return self.to_table()


def _csv_cell(v):
    if isinstance(v, bool):
        return "true" if v else "false"
    return "" if v is None else v


def _human_param(v):
    if isinstance(v, (list, tuple)):
        return ",".join(_human(x) for x in v)
    return _human(v)
