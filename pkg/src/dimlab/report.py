"""Report records and their JSON-lines / table encodings.

Every record is a flat JSON object. Wall-clock data (elapsed seconds, start
timestamps) lives only under the ``"timing"`` key so that two runs with the
same configuration differ in nothing else.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

HOLDS = "holds"
VIOLATED = "violated"
SKIPPED = "skipped"


def encode_value(v: Any) -> Any:
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return v.numerator
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, (list, tuple)):
        return [encode_value(x) for x in v]
    if hasattr(v, "item"):  # numpy scalar
        return v.item()
    return v


def decode_value(v: Any) -> Any:
    if isinstance(v, dict) and set(v) == {"num", "den"}:
        return Fraction(v["num"], v["den"])
    if isinstance(v, list):
        return [decode_value(x) for x in v]
    return v


def format_value(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, Fraction):
        return str(v) if v.denominator == 1 else f"{v} (~{float(v):.3f})"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    return str(v)


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


def without_timing(record: dict) -> dict:
    return {k: v for k, v in record.items() if k != "timing"}


@dataclass
class MeasureEntry:
    name: str
    value: Any
    scope: str
    method: str
    elapsed: float = 0.0


@dataclass
class MeasureReport:
    subject: str
    fingerprint: str
    entries: list[MeasureEntry] = field(default_factory=list)

    def add(self, name, value, scope, method, elapsed=0.0):
        self.entries.append(MeasureEntry(name, value, scope, method, elapsed))

    def get(self, name: str):
        for e in self.entries:
            if e.name == name:
                return e.value
        raise KeyError(name)

    def to_record(self) -> dict:
        return {
            "kind": "measures",
            "subject": self.subject,
            "fingerprint": self.fingerprint,
            "measures": [
                {"name": e.name, "value": encode_value(e.value), "scope": e.scope, "method": e.method}
                for e in self.entries
            ],
            "timing": {e.name: round(e.elapsed, 6) for e in self.entries},
        }

    def to_tsv(self) -> str:
        lines = ["name\tvalue\tscope\tmethod"]
        for e in self.entries:
            value = e.value
            if isinstance(value, Fraction) and value.denominator != 1:
                value = f"{value.numerator}/{value.denominator}"
            lines.append(f"{e.name}\t{value}\t{e.scope}\t{e.method}")
        return "\n".join(lines) + "\n"


@dataclass
class CheckResult:
    check_id: str
    subject: str
    relation: str
    lhs: Any
    rhs: Any
    status: str
    reason: str | None = None
    witness: dict | None = None
    detail: dict = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def holds(self) -> bool:
        return self.status == HOLDS

    @property
    def violated(self) -> bool:
        return self.status == VIOLATED

    def to_record(self) -> dict:
        return {
            "kind": "check",
            "check": self.check_id,
            "subject": self.subject,
            "relation": self.relation,
            "lhs": encode_value(self.lhs),
            "rhs": encode_value(self.rhs),
            "status": self.status,
            "reason": self.reason,
            "witness": self.witness,
            "detail": {k: encode_value(v) for k, v in self.detail.items()},
            "timing": {"elapsed": round(self.elapsed, 6)},
        }


def render_table(rows: list[dict], columns: list[str]) -> str:
    """Plain fixed-width table of already formatted rows."""
    cells = [[format_value(r.get(c)) if not isinstance(r.get(c), str) else r[c] for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) if cells else len(c) for i, c in enumerate(columns)]
    out = ["  ".join(c.ljust(w) for c, w in zip(columns, widths))]
    out.append("  ".join("-" * w for w in widths))
    for row in cells:
        out.append("  ".join(v.ljust(w) for v, w in zip(row, widths)))
    return "\n".join(out) + "\n"


def render_checks(results: list[CheckResult]) -> str:
    rows = [
        {
            "check": r.check_id,
            "status": r.status if r.status != SKIPPED else f"skipped ({r.reason})",
            "lhs": r.lhs,
            "rhs": r.rhs,
            "relation": r.relation,
        }
        for r in results
    ]
    return render_table(rows, ["check", "status", "lhs", "rhs", "relation"])
