"""Machine-readable pass/fail records."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from . import __version__


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    measured: Union[float, str]
    tolerance: Optional[float] = None
    detail: str = ""

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "status": "pass" if self.passed else "fail",
            "measured": self.measured,
            "tolerance": self.tolerance,
            "detail": self.detail,
        }


@dataclass
class VerificationReport:
    checks: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, passed, measured, tolerance=None, detail="") -> Check:
        if isinstance(measured, float):
            measured = float(measured)
        check = Check(name, bool(passed), measured, tolerance, detail)
        self.checks.append(check)
        return check

    def __getitem__(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def failed(self) -> list:
        return [c.name for c in self.checks if not c.passed]

    def to_json_dict(self) -> dict:
        return {
            "checks": [c.to_json_dict() for c in self.checks],
            "overall": "pass" if self.overall else "fail",
            "provenance": {"tool_version": __version__, **self.provenance},
        }
