"""Pass/fail bookkeeping shared by the verification suites."""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import GroupElement


def _show(v):
    if isinstance(v, GroupElement):
        return v.to_strings()
    if isinstance(v, (list, tuple)):
        return [_show(x) for x in v]
    return str(v)


@dataclass
class Report:
    subject: str
    ok: bool = True
    checks: dict = field(default_factory=dict)
    counterexample: dict | None = None

    def tick(self, name: str):
        self.checks[name] = self.checks.get(name, 0) + 1

    def fail(self, name: str, **data):
        self.ok = False
        self.counterexample = {"check": name, **{k: _show(v) for k, v in data.items()}}

    def to_json(self) -> dict:
        return {"subject": self.subject, "ok": self.ok, "checks": dict(sorted(self.checks.items())),
                "counterexample": self.counterexample}


