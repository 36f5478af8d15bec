"""Verification reports: one record per identity, with a witness on failure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
GENERIC_PASS = "generic-pass"
ERROR = "error"
STATUSES = (PASS, FAIL, GENERIC_PASS, ERROR)


@dataclass
class Check:
    name: str
    ref: str
    status: str
    witness: Any = None
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status in (PASS, GENERIC_PASS)

    def to_dict(self) -> dict:
        out = {"name": self.name, "ref": self.ref, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    title: str
    checks: list = field(default_factory=list)
    budgets: dict = field(default_factory=dict)
    # non-gating comparisons (transcription variants, printed formulas)
    diagnostics: list = field(default_factory=list)

    def add(self, name: str, ref: str, status: str, witness=None, **detail) -> Check:
        c = Check(name, ref, status, witness, detail)
        self.checks.append(c)
        return c

    def check_zero(self, name: str, ref: str, element, **detail) -> Check:
        """Pass iff ``element`` is exactly zero; else the first nonzero component is the witness."""
        if element.is_zero():
            return self.add(name, ref, PASS, **detail)
        key, coeff = element.first_nonzero()
        return self.add(name, ref, FAIL, {"component": key, "coefficient": coeff}, **detail)

    def check_equal(self, name: str, ref: str, lhs, rhs, **detail) -> Check:
        return self.check_zero(name, ref, lhs - rhs, **detail)

    def check_value(self, name: str, ref: str, got, expected, **detail) -> Check:
        if got == expected:
            return self.add(name, ref, PASS, got=_plain(got), **detail)
        return self.add(name, ref, FAIL, {"got": _plain(got), "expected": _plain(expected)}, **detail)

    def diagnose(self, name: str, ref: str, element=None, **detail) -> None:
        """Record a non-gating comparison; ``element`` zero means agreement."""
        entry = {"name": name, "ref": ref}
        if element is not None:
            entry["agrees"] = element.is_zero()
            if not element.is_zero():
                key, coeff = element.first_nonzero()
                entry["witness"] = {"component": key, "coefficient": coeff}
        entry.update({k: _plain(v) for k, v in detail.items()})
        self.diagnostics.append(entry)

    def extend(self, other: "VerificationReport", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.ref, c.status, c.witness, c.detail))
        self.diagnostics.extend(other.diagnostics)
        self.budgets.update(other.budgets)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def has_error(self) -> bool:
        return any(c.status == ERROR for c in self.checks)

    def counts(self) -> dict:
        out = {s: 0 for s in STATUSES}
        for c in self.checks:
            out[c.status] += 1
        return out

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]

    def to_dict(self) -> dict:
        out = {
            "title": self.title,
            "budgets": {k: _plain(v) for k, v in sorted(self.budgets.items())},
            "counts": self.counts(),
            "checks": [c.to_dict() for c in self.checks],
        }
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        return out

    def summary_line(self) -> str:
        c = self.counts()
        state = "OK" if self.ok else "FAILED"
        return f"{self.title}: {state} ({c[PASS]} pass, {c[GENERIC_PASS]} generic-pass, {c[FAIL]} fail, {c[ERROR]} error)"


def _plain(x):
    """JSON-friendly rendering of exact values."""
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return str(x)
