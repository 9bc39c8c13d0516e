"""Uniform inequality records and suite aggregation."""
from __future__ import annotations

import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterable

# relative width of the band below zero that is flagged instead of failed
FLOAT_SLACK = 1e-9


@dataclass(frozen=True)
class InequalityReport:
    """One checked inequality, always normalised to ``lhs <= rhs`` (or ``<``).

    Lower-bound statements are stored with the bound on the left.
    """

    name: str
    params: dict[str, Any]
    lhs: float
    rhs: float
    strict: bool = False
    slack: float | None = None

    @property
    def margin(self) -> float:
        return float(self.rhs) - float(self.lhs)

    @property
    def tolerance(self) -> float:
        if self.slack is not None:
            return self.slack
        return FLOAT_SLACK * max(1.0, abs(float(self.lhs)), abs(float(self.rhs)))

    @property
    def holds(self) -> bool:
        if self.strict:
            return self.margin > 0
        return self.margin >= 0

    @property
    def ambiguous(self) -> bool:
        return not self.holds and self.margin > -self.tolerance

    @property
    def status(self) -> str:
        if self.holds:
            return "pass"
        return "float-ambiguous" if self.ambiguous else "fail"

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "params": dict(self.params),
            "lhs": float(self.lhs),
            "rhs": float(self.rhs),
            "margin": self.margin,
            "holds": self.holds,
            "status": self.status,
        }


@dataclass
class SuiteReport:
    checks: list[InequalityReport] = field(default_factory=list)
    sections: dict[str, float] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def extend(self, reports: Iterable[InequalityReport]) -> None:
        self.checks.extend(reports)

    @contextmanager
    def section(self, name: str):
        t0 = time.perf_counter()
        try:
            yield self
        finally:
            self.sections[name] = self.sections.get(name, 0.0) + time.perf_counter() - t0

    def counts(self) -> dict[str, int]:
        out = {"passed": 0, "failed": 0, "float-ambiguous": 0}
        for c in self.checks:
            key = {"pass": "passed", "fail": "failed"}.get(c.status, c.status)
            out[key] += 1
        return out

    @property
    def ok(self) -> bool:
        return self.counts()["failed"] == 0

    def failures(self) -> list[InequalityReport]:
        return [c for c in self.checks if c.status == "fail"]

    def as_dict(self, include_checks: bool = True) -> dict[str, Any]:
        d: dict[str, Any] = {
            "status": "pass" if self.ok else "fail",
            "counts": self.counts(),
            "sections": dict(self.sections),
        }
        if self.notes:
            d["notes"] = list(self.notes)
        if include_checks:
            d["checks"] = [c.as_dict() for c in self.checks]
        return d
