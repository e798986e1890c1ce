"""Machine- and human-readable verification reports.

A report is a plain dict-backed structure with a stable JSON encoding:
parse(emit(report)) == report, and identical runs produce byte-identical
JSON except for the timing field, which is excluded from the determinism
guarantee.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .complexes import QisoResult

SCHEMA_VERSION = 1


@dataclass
class VerificationReport:
    name: str
    verdict: str                 # 'pass' | 'fail' | 'error'
    field_used: str              # 'q' or 'fp:P'
    conditions: list = field(default_factory=list)
    messages: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    window: Optional[list] = None
    timing_seconds: Optional[float] = None
    error: Optional[str] = None
    subreports: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def first_failure(self) -> Optional[dict]:
        for c in self.conditions:
            if not c["passed"]:
                return c
        for sub in self.subreports:
            if sub.verdict != "pass":
                f = sub.first_failure()
                return f if f is not None else {"condition": "subreport",
                                                "degree": None, "passed": False,
                                                "detail": sub.name}
        return None

    def to_dict(self) -> dict:
        d = {
            "schema": SCHEMA_VERSION,
            "name": self.name,
            "verdict": self.verdict,
            "field": self.field_used,
            "conditions": self.conditions,
            "messages": self.messages,
            "notes": self.notes,
        }
        if self.window is not None:
            d["window"] = list(self.window)
        if self.error is not None:
            d["error"] = self.error
        if self.subreports:
            d["subreports"] = [s.to_dict() for s in self.subreports]
        if self.timing_seconds is not None:
            d["timing_seconds"] = self.timing_seconds
        return d

    def to_json(self, with_timing: bool = True) -> str:
        d = self.to_dict()
        if not with_timing:
            def strip(node):
                node.pop("timing_seconds", None)
                for sub in node.get("subreports", ()):
                    strip(sub)
            strip(d)
        return json.dumps(d, indent=2, sort_keys=True)

    @staticmethod
    def from_dict(d: dict) -> "VerificationReport":
        return VerificationReport(
            name=d["name"],
            verdict=d["verdict"],
            field_used=d["field"],
            conditions=d.get("conditions", []),
            messages=d.get("messages", []),
            notes=d.get("notes", []),
            window=tuple(d["window"]) if "window" in d else None,
            timing_seconds=d.get("timing_seconds"),
            error=d.get("error"),
            subreports=[VerificationReport.from_dict(s)
                        for s in d.get("subreports", [])],
        )

    @staticmethod
    def from_json(text: str) -> "VerificationReport":
        return VerificationReport.from_dict(json.loads(text))

    def render_text(self, indent: str = "") -> str:
        lines = [f"{indent}{self.name}: {self.verdict.upper()}"
                 + (f"  [{self.field_used}]" if not indent else "")]
        for c in self.conditions:
            mark = "ok" if c["passed"] else "FAIL"
            where = f" @ degree {c['degree']}" if c.get("degree") is not None else ""
            detail = f"  ({c['detail']})" if c.get("detail") else ""
            lines.append(f"{indent}  {c['condition']}{where}: {mark}{detail}")
        for m in self.messages:
            lines.append(f"{indent}  {m}")
        for nline in self.notes:
            lines.append(f"{indent}  note: {nline}")
        if self.error:
            lines.append(f"{indent}  error: {self.error}")
        for sub in self.subreports:
            lines.append(sub.render_text(indent + "  "))
        if self.timing_seconds is not None and not indent:
            lines.append(f"{indent}  time: {self.timing_seconds:.2f}s")
        return "\n".join(lines)


def conditions_from_qiso(result: QisoResult) -> list:
    return [{"condition": c.condition, "degree": c.degree,
             "passed": c.passed, "detail": c.detail}
            for c in result.conditions]


def report_from_qiso(name: str, field_used: str, result: QisoResult,
                     notes: Optional[list] = None,
                     timing: Optional[float] = None) -> VerificationReport:
    return VerificationReport(
        name=name,
        verdict="pass" if result.passed else "fail",
        field_used=field_used,
        conditions=conditions_from_qiso(result),
        notes=list(notes or []),
        window=list(result.window),
        timing_seconds=timing,
    )
