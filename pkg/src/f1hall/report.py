"""Pass/fail reports shared by the verification suites."""
from __future__ import annotations

from dataclasses import dataclass, field

MAX_WITNESSES = 10


@dataclass
class Check:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    failed: int = 0

    @property
    def passed(self) -> bool:
        return self.failed == 0

    def record(self, ok: bool, witness=None):
        self.checked += 1
        if not ok:
            self.failed += 1
            if len(self.failures) < MAX_WITNESSES:
                self.failures.append(witness)


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        c = Check(name)
        self.checks.append(c)
        return c

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "passed": self.passed,
            "notes": list(self.notes),
            "checks": [
                {
                    "name": c.name,
                    "passed": c.passed,
                    "checked": c.checked,
                    "failed": c.failed,
                    "witnesses": [str(w) for w in c.failures],
                }
                for c in self.checks
            ],
            "data": self.data,
        }
