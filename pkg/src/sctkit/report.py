"""Check reports shared by the verification suites and the command line."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any


@dataclass(frozen=True)
class Entry:
    check: str
    anchor: str
    status: str
    subject: str
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "status": self.status,
            "subject": self.subject,
            "witness": self.witness,
        }


@dataclass
class Report:
    suite: str = ""
    entries: list[Entry] = field(default_factory=list)

    def add(self, check: str, anchor: str, ok: bool, subject: str, witness: Any = None) -> bool:
        self.entries.append(Entry(check, anchor, "pass" if ok else "fail", subject, _plain(witness)))
        return ok

    def extend(self, other: "Report") -> None:
        self.entries.extend(other.entries)

    @property
    def failures(self) -> int:
        return sum(not e.passed for e in self.entries)

    @property
    def passes(self) -> int:
        return sum(e.passed for e in self.entries)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def failed(self) -> list[Entry]:
        return [e for e in self.entries if not e.passed]

    def counts_by_check(self) -> dict[str, tuple[int, int]]:
        out: dict[str, list[int]] = {}
        for e in self.entries:
            c = out.setdefault(e.check, [0, 0])
            c[0 if e.passed else 1] += 1
        return {k: (v[0], v[1]) for k, v in sorted(out.items())}

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "entries": [e.to_json() for e in self.entries],
            "passed": self.passes,
            "failures": self.failures,
        }


def _plain(x: Any) -> Any:
    """Make witnesses JSON-friendly and deterministic."""
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    if isinstance(x, (list, tuple)):
        return [_plain(y) for y in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_plain(y) for y in x)
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    return str(x)


def emit_report(report: Report, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2, sort_keys=False) + "\n"
    if fmt != "table":
        raise ValueError(f"unknown report format {fmt!r}")
    rows = [("check", "status", "subject", "anchor", "witness")]
    for e in sorted(report.entries, key=lambda e: e.check):
        w = "" if e.witness is None else json.dumps(e.witness, sort_keys=True)
        rows.append((e.check, e.status, e.subject, e.anchor, w))
    widths = [max(len(r[i]) for r in rows) for i in range(4)]
    lines = []
    for r in rows:
        cells = [r[i].ljust(widths[i]) for i in range(4)] + [r[4]]
        lines.append("  ".join(cells).rstrip())
    lines.append(f"{report.passes} passed, {report.failures} failed")
    return "\n".join(lines) + "\n"
