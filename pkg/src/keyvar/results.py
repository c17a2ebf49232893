"""Check results shared by the suites and the command-line driver."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

STATUSES = ("pass", "fail", "inconclusive", "discrepancy")


@dataclass
class CheckResult:
    id: str
    status: str
    witness: Optional[str] = None
    notes: str = ""
    elapsed: Optional[float] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status == "pass"


class CheckLog:
    """Collects named sub-check outcomes and turns them into one CheckResult."""

    def __init__(self, check_id: str):
        self.id = check_id
        self.failures = []
        self.inconclusive = []
        self.lines = []
        self.witness = None
        self.details = {}

    def expect(self, cond: bool, label: str, witness=None) -> bool:
        if cond:
            self.lines.append(f"{label}: ok")
        else:
            self.failures.append(label)
            self.lines.append(f"{label}: FAILED")
            if witness is not None and self.witness is None:
                self.witness = str(witness)
        return bool(cond)

    def unknown(self, label: str):
        self.inconclusive.append(label)
        self.lines.append(f"{label}: no certificate within the bound")

    def note(self, text: str):
        self.lines.append(text)

    def result(self) -> CheckResult:
        if self.failures:
            status = "fail"
        elif self.inconclusive:
            status = "inconclusive"
        else:
            status = "pass"
        return CheckResult(self.id, status, self.witness, "; ".join(self.lines), None, self.details)
