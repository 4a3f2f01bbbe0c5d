"""Report assembly and serialization for the command-line front end.

A report is ``{config, plan, results, invariants, metadata}``.  Floats are
written as their shortest round-trip decimal string (``repr``) in both JSON
and CSV, so the two formats carry identical digits.  The timestamp lives in
``metadata`` only; everything else is a pure function of the config.
"""

from __future__ import annotations

import csv
import datetime as _dt
import io
import json
import math
import platform
from dataclasses import dataclass, field

import numpy as np

SWEEP_COLUMNS = ("p", "q", "T", "lhs", "main", "dual", "dual_imag_residual", "residual",
                 "bound_scale", "normalized_residual", "quadrature_error_estimate")


@dataclass(frozen=True)
class Invariant:
    name: str
    value: float
    bound: float
    instance: tuple | None = None

    @property
    def passed(self) -> bool:
        return bool(math.isfinite(self.value) and self.value <= self.bound)

    def as_dict(self) -> dict:
        out = {"name": self.name, "value": self.value, "bound": self.bound, "passed": self.passed}
        if self.instance is not None:
            out["instance"] = list(self.instance)
        return out


@dataclass
class Report:
    command: str
    config: dict
    plan: dict
    results: list = field(default_factory=list)
    invariants: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(inv.passed for inv in self.invariants)

    def failures(self) -> list[Invariant]:
        return [inv for inv in self.invariants if not inv.passed]

    def as_dict(self, timestamp: str | None = None) -> dict:
        import twisted_moment
        return {
            "config": encode(self.config),
            "plan": encode(self.plan),
            "results": [encode(r) for r in self.results],
            "invariants": [encode(inv.as_dict()) for inv in self.invariants],
            "metadata": {
                "timestamp": timestamp or _now(),
                "version": twisted_moment.__version__,
                "python": platform.python_version(),
                "numpy": np.__version__,
                "passed": self.passed,
            },
        }


def _now() -> str:
    return _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat()


def encode_number(x) -> str:
    return repr(float(x))


def encode(obj):
    """Recursively replace floats by repr strings; leave ints, bools and strings alone."""
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return encode_number(obj)
    return obj


def flatten(row: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in row.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(flatten(v, key + "."))
        else:
            out[key] = v
    return out


def to_json(report: Report, timestamp: str | None = None) -> str:
    return json.dumps(report.as_dict(timestamp), indent=2, sort_keys=True) + "\n"


def to_csv(report: Report) -> str:
    rows = [encode(flatten(r)) for r in report.results]
    if report.command == "sweep":
        columns = list(SWEEP_COLUMNS)
    else:
        columns = []
        for r in rows:
            columns.extend(k for k in r if k not in columns)
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=columns, extrasaction="ignore", lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def render(report: Report, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    raise ValueError(f"unknown format {fmt!r}")


def table(report: Report) -> str:
    """Plain-text pass/fail table of the invariants."""
    width = max([len(inv.name) for inv in report.invariants] + [9])
    lines = [f"{'invariant':<{width}}  {'value':>12}  {'bound':>12}  status"]
    for inv in report.invariants:
        where = "" if inv.instance is None else "  " + ",".join(str(x) for x in inv.instance)
        status = "PASS" if inv.passed else "FAIL"
        lines.append(f"{inv.name:<{width}}  {inv.value:>12.4g}  {inv.bound:>12.4g}  {status}{where}")
    lines.append(f"{'overall':<{width}}  {'':>12}  {'':>12}  {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines)
