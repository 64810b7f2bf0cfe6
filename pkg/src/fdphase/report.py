"""Verification manifests, check records, and byte-stable report rendering.

Reports must be reproducible down to the byte: floats are written as decimal
with 17 significant digits and a lowercase exponent (round-trip exact for
doubles), field order is fixed, and no timestamps or environment data are
embedded.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TOOL_VERSION",
    "STATUS_PASS",
    "STATUS_FAIL",
    "STATUS_FLAGGED",
    "RunManifest",
    "CheckRecord",
    "VerificationReport",
    "format_float",
    "to_json",
    "render_json",
    "render_csv",
    "render_pretty",
]

TOOL_VERSION = "0.1.0"

STATUS_PASS = "pass"
STATUS_FAIL = "fail"
STATUS_FLAGGED = "flagged"
_STATUSES = (STATUS_PASS, STATUS_FAIL, STATUS_FLAGGED)

REPORT_FORMATS = ("json", "csv", "pretty")


@dataclass(frozen=True)
class RunManifest:
    """Everything a verification or evolve run depends on."""

    dim: int
    theta0: float = 0.0
    eta: float = 0.5
    omega: float = 1.0
    profile: str = "linear"
    suites: tuple = ()
    seed: int = 0
    format: str = "json"

    def __post_init__(self) -> None:
        if isinstance(self.dim, bool) or not isinstance(self.dim, (int, np.integer)):
            raise ValueError(f"dim must be an integer, got {self.dim!r}")
        if self.dim < 1:
            raise ValueError(f"dim must be at least 1, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        for name in ("theta0", "eta", "omega"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, value)
        if self.format not in REPORT_FORMATS:
            raise ValueError(f"format must be one of {REPORT_FORMATS}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, (int, np.integer)):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "suites", tuple(self.suites))

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "theta0": self.theta0,
            "eta": self.eta,
            "omega": self.omega,
            "profile": self.profile,
            "suites": list(self.suites),
            "seed": self.seed,
            "format": self.format,
        }


@dataclass(frozen=True)
class CheckRecord:
    """One verified identity: what was checked, how far off, and the verdict."""

    check_id: str
    paper_anchor: str
    max_deviation: float
    tolerance: float
    status: str

    def __post_init__(self) -> None:
        if self.status not in _STATUSES:
            raise ValueError(f"status must be one of {_STATUSES}, got {self.status!r}")
        for name in ("max_deviation", "tolerance"):
            value = float(getattr(self, name))
            if not (math.isfinite(value) and value >= 0.0):
                raise ValueError(f"{name} must be finite and non-negative")
            object.__setattr__(self, name, value)

    @classmethod
    def measured(
        cls, check_id: str, paper_anchor: str, max_deviation: float, tolerance: float
    ) -> "CheckRecord":
        """Pass/fail record from a measured deviation against its tolerance."""
        status = STATUS_PASS if max_deviation <= tolerance else STATUS_FAIL
        return cls(check_id, paper_anchor, float(max_deviation), float(tolerance), status)

    @classmethod
    def flagged(
        cls, check_id: str, paper_anchor: str, max_deviation: float, tolerance: float
    ) -> "CheckRecord":
        """Record for the one documented expected deviation; never a failure."""
        return cls(
            check_id, paper_anchor, float(max_deviation), float(tolerance), STATUS_FLAGGED
        )

    def as_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "paper_anchor": self.paper_anchor,
            "max_deviation": self.max_deviation,
            "tolerance": self.tolerance,
            "status": self.status,
        }


@dataclass(frozen=True)
class VerificationReport:
    """All records of one run plus the manifest that produced them."""

    manifest: RunManifest
    records: tuple
    tool_version: str = TOOL_VERSION

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))

    def status_counts(self) -> dict:
        counts = {status: 0 for status in _STATUSES}
        for record in self.records:
            counts[record.status] += 1
        return counts

    @property
    def failed(self) -> tuple:
        return tuple(r for r in self.records if r.status == STATUS_FAIL)

    def as_dict(self) -> dict:
        return {
            "tool_version": self.tool_version,
            "manifest": self.manifest.as_dict(),
            "records": [record.as_dict() for record in self.records],
        }


def format_float(value: float) -> str:
    """Decimal float text: 17 significant digits, lowercase exponent."""
    return "%.17g" % float(value)


def _render(value, indent: int = 0) -> str:
    pad = "  " * indent
    if isinstance(value, dict):
        if not value:
            return "{}"
        parts = [
            f"{pad}  {json.dumps(str(key))}: {_render(item, indent + 1)}"
            for key, item in value.items()
        ]
        return "{\n" + ",\n".join(parts) + "\n" + pad + "}"
    if isinstance(value, (list, tuple)):
        items = list(value)
        if not items:
            return "[]"
        if all(not isinstance(item, (dict, list, tuple)) for item in items):
            return "[" + ", ".join(_render(item, 0) for item in items) + "]"
        parts = [f"{pad}  {_render(item, indent + 1)}" for item in items]
        return "[\n" + ",\n".join(parts) + "\n" + pad + "]"
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "null"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=True)
    raise TypeError(f"cannot render value of type {type(value).__name__}")


def to_json(value) -> str:
    """Render any plain dict/list/scalar structure with the stable policy."""
    return _render(value) + "\n"


def render_json(report: VerificationReport) -> str:
    return to_json(report.as_dict())


def render_csv(report: VerificationReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["check_id", "paper_anchor", "max_deviation", "tolerance", "status"])
    for record in report.records:
        writer.writerow(
            [
                record.check_id,
                record.paper_anchor,
                format_float(record.max_deviation),
                format_float(record.tolerance),
                record.status,
            ]
        )
    return buffer.getvalue()


def render_pretty(report: VerificationReport) -> str:
    manifest = report.manifest
    lines = [
        f"verification report (tool {report.tool_version})",
        "manifest: dim=%d theta0=%s eta=%s omega=%s profile=%s seed=%d"
        % (
            manifest.dim,
            format_float(manifest.theta0),
            format_float(manifest.eta),
            format_float(manifest.omega),
            manifest.profile,
            manifest.seed,
        ),
        "suites: " + (", ".join(manifest.suites) if manifest.suites else "(none)"),
        "",
    ]
    width = max((len(r.check_id) for r in report.records), default=8)
    for record in report.records:
        lines.append(
            "%-7s %-*s  dev=%-12.3e tol=%-12.3e %s"
            % (
                record.status,
                width,
                record.check_id,
                record.max_deviation,
                record.tolerance,
                record.paper_anchor,
            )
        )
    counts = report.status_counts()
    lines.append("")
    lines.append(
        "checks: %d | pass %d | flagged %d | fail %d"
        % (len(report.records), counts["pass"], counts["flagged"], counts["fail"])
    )
    return "\n".join(lines) + "\n"
