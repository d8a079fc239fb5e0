"""Check records and run reports shared by the analyses and the CLI."""

from __future__ import annotations

import json
from dataclasses import dataclass, field


@dataclass(frozen=True)
class CheckRecord:
    name: str
    passed: bool
    witness: str = ""

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        suffix = f"  [{self.witness}]" if self.witness else ""
        return f"{tag} {self.name}{suffix}"


@dataclass
class Report:
    command: str
    inputs: tuple[str, ...] = ()
    checks: list[CheckRecord] = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def add(self, name: str, passed: bool, witness: str = "") -> bool:
        self.checks.append(CheckRecord(name, passed, witness))
        return passed

    def extend(self, records) -> None:
        self.checks.extend(records)

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def exit_status(self) -> int:
        return 0 if self.all_passed else 1

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for path in self.inputs:
            lines.append(f"input: {path}")
        for key in sorted(self.data):
            value = self.data[key]
            lines.append(f"{key}: {value}")
        lines.extend(c.line() for c in self.checks)
        lines.append(f"result: {'ok' if self.all_passed else 'FAILED'}")
        return "\n".join(lines) + "\n"

    def to_structured(self) -> str:
        doc = {
            "command": self.command,
            "inputs": list(self.inputs),
            "data": self.data,
            "checks": [
                {"name": c.name, "passed": c.passed, "witness": c.witness}
                for c in self.checks
            ],
            "result": "ok" if self.all_passed else "failed",
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
