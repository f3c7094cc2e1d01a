"""Pass/fail reports with one deterministic witness per failed check."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckResult:
    label: str
    passed: bool
    checked: int = 0
    violations: int = 0
    witness: str | None = None
    detail: dict[str, Any] | None = None

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"[{status}] ({self.label})"
        if self.checked:
            text += f" {self.checked - self.violations}/{self.checked} basis tuples"
        if not self.passed and self.witness:
            text += f" -- {self.witness}"
        return text

    def to_dict(self) -> dict[str, Any]:
        out = {"label": self.label, "passed": self.passed, "checked": self.checked,
               "violations": self.violations}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail is not None:
            out["detail"] = self.detail
        return out


@dataclass
class Report:
    subject: str
    results: list[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.results)

    def __bool__(self) -> bool:
        return self.ok

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def record(self, label: str, passed: bool, witness: str | None = None, **kw) -> CheckResult:
        return self.add(CheckResult(label, bool(passed), witness=None if passed else witness, **kw))

    def extend(self, other: "Report", prefix: str | None = None) -> "Report":
        for r in other.results:
            label = f"{prefix}:{r.label}" if prefix else r.label
            self.results.append(CheckResult(label, r.passed, r.checked, r.violations,
                                            r.witness, r.detail))
        return self

    def get(self, label: str) -> CheckResult:
        for r in self.results:
            if r.label == label:
                return r
        raise KeyError(label)

    def __contains__(self, label: str) -> bool:
        return any(r.label == label for r in self.results)

    @property
    def failed(self) -> list[str]:
        return [r.label for r in self.results if not r.passed]

    def first_failure(self) -> CheckResult | None:
        return next((r for r in self.results if not r.passed), None)

    def __str__(self) -> str:
        head = f"{self.subject}: {'PASS' if self.ok else 'FAIL'}"
        return "\n".join([head] + ["  " + r.line() for r in self.results])

    def to_dict(self) -> dict[str, Any]:
        return {"subject": self.subject, "ok": self.ok,
                "checks": [r.to_dict() for r in self.results]}


class PreconditionError(ValueError):
    """A construction was asked for on data that fails its hypotheses."""

    def __init__(self, report: Report, what: str = ""):
        fail = report.first_failure()
        msg = f"{what or report.subject}: precondition failed"
        if fail is not None:
            msg += f" at ({fail.label})"
            if fail.witness:
                msg += f": {fail.witness}"
        super().__init__(msg)
        self.report = report
