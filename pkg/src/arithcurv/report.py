"""Check records and their json/csv/text renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass
from typing import Optional

FIELDS = ("suite", "name", "p", "p2", "status", "lhs", "rhs", "note")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    p: Optional[int]
    p2: Optional[int]
    status: str
    lhs: str = ""
    rhs: str = ""
    note: str = ""

    @classmethod
    def of(cls, suite: str, name: str, ok: bool, p=None, p2=None, lhs="", rhs="", note="") -> "Check":
        return cls(suite, name, p, p2, "pass" if ok else "fail", str(lhs), str(rhs), note)

    @property
    def passed(self) -> bool:
        return self.status == "pass"


def sort_checks(checks: list[Check]) -> list[Check]:
    """Stable sort on (suite, p, p2); order within a group is kept."""
    def key(c: Check):
        return (c.suite, -1 if c.p is None else c.p, -1 if c.p2 is None else c.p2)
    return sorted(checks, key=key)


def render(session: dict, checks: list[Check], fmt: str) -> str:
    checks = sort_checks(checks)
    if fmt == "json":
        doc = {"session": session, "checks": [asdict(c) for c in checks]}
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
        writer.writeheader()
        for c in checks:
            writer.writerow(asdict(c))
        return buf.getvalue()
    if fmt == "text":
        lines = [f"# {k}: {v}" for k, v in session.items()]
        for c in checks:
            pair = "" if c.p is None else (f" p={c.p}" if c.p2 is None else f" p={c.p} p2={c.p2}")
            lines.append(f"[{c.status.upper()}] {c.suite}{pair} {c.name}" + (f"  ({c.note})" if c.note else ""))
            if c.lhs:
                lines.append(f"    lhs = {c.lhs}")
            if c.rhs:
                lines.append(f"    rhs = {c.rhs}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
