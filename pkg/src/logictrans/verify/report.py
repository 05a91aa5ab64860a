"""Check entries and their JSON form."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Sequence

from ..formula import Formula, render
from ..semantics import REFUTED, SKIPPED, VALID_BOUNDED, VALID_EXACT, Verdict

REPORT_SCHEMA = "logictrans-report/1"


class VerificationError(ValueError):
    """A checker was called outside its preconditions."""


@dataclass(eq=False)
class CheckEntry:
    property: str
    subject: str
    verdict: Verdict
    bounds: dict = field(default_factory=dict)
    witnesses: list = field(default_factory=list)
    provenance: str = "direct"
    details: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        return self.verdict.status

    @property
    def passed(self) -> bool:
        return self.verdict.holds

    @property
    def refuted(self) -> bool:
        return self.verdict.refuted

    @property
    def reason(self):
        return self.verdict.reason

    @property
    def skipped(self) -> bool:
        return self.verdict.status == SKIPPED

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "property": self.property,
            "subject": self.subject,
            "verdict": self.verdict.status,
            "bounds": _plain(self.bounds),
            "witnesses": _plain(self.witnesses),
            "provenance": self.provenance,
        }
        if self.verdict.reason:
            out["reason"] = self.verdict.reason
        if self.details:
            out["details"] = _plain(self.details)
        if timing:
            out["elapsed_ms"] = round(self.verdict.elapsed_ms, 3)
        return out


def _plain(x: Any):
    """JSON-ready copy: formulas rendered, models serialized, tuples listed."""
    if isinstance(x, Formula):
        return render(x)
    if hasattr(x, "to_json"):
        return x.to_json()
    if isinstance(x, dict):
        return {str(k) if not isinstance(k, Formula) else render(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted((_plain(v) for v in x), key=str)
    if isinstance(x, (str, int, float, bool)) or x is None:
        return x
    return str(x)


def model_witness(model, role: str = "countermodel") -> dict:
    return {"role": role, "model": _plain(model)}


def formula_witness(**parts) -> dict:
    return {k: _plain(v) for k, v in parts.items()}


def make_entry(prop: str, subject: str, status: str, start: float, *, bounds=None, witnesses=(), reason=None,
               details=None, provenance="direct") -> CheckEntry:
    v = Verdict(status, dict(bounds or {}), reason=reason, elapsed_ms=(time.perf_counter() - start) * 1000)
    return CheckEntry(prop, subject, v, dict(bounds or {}), list(witnesses), provenance, dict(details or {}))


def exactness(*logics) -> str:
    return VALID_EXACT if all(lg.exact for lg in logics) else VALID_BOUNDED


def report_json(entries: Sequence[CheckEntry], timing: bool = True, extra: dict | None = None) -> dict:
    out = {"schema": REPORT_SCHEMA, "entries": [e.to_json(timing) for e in entries]}
    if extra:
        out.update(_plain(extra))
    return out


def dumps(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def strip_timing(report):
    """Copy of a report without ``elapsed_ms`` fields."""
    if isinstance(report, dict):
        return {k: strip_timing(v) for k, v in report.items() if k != "elapsed_ms"}
    if isinstance(report, list):
        return [strip_timing(v) for v in report]
    return report


__all__ = ["CheckEntry", "VerificationError", "REFUTED", "SKIPPED", "VALID_BOUNDED", "VALID_EXACT", "dumps",
           "exactness", "formula_witness", "make_entry", "model_witness", "report_json", "strip_timing"]
