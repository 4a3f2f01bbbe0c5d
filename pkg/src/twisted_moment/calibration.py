"""Calibrated constants for the O-terms, and the run that produces them.

The reciprocity relation and its corollary carry error terms with
unspecified constants.  ``run_calibration`` measures the largest ratio of
each error to its nominal scale over the desk grid and
``write_calibration`` stores them, with provenance, in
``data/calibration.json``.  Checks compare against 1.5 times the stored value.
"""

from __future__ import annotations

import datetime as _dt
import json
import math
import platform
from importlib import resources
from pathlib import Path

import numpy as np

from .moments import ReciprocityInstance, verify_corollary, verify_theorem
from .numerics import DEFAULT_PLAN, QuadraturePlan

DESK_PAIRS = ((3, 5), (5, 3), (3, 7), (5, 7), (5, 11), (7, 11))
DESK_T = (20.0, 40.0, 80.0, 160.0)
SAFETY_FACTOR = 1.5

CALIBRATION_FILE = "calibration.json"


def desk_grid():
    return [ReciprocityInstance(p, q, T) for (p, q) in DESK_PAIRS for T in DESK_T]


def run_calibration(plan: QuadraturePlan = DEFAULT_PLAN, grid=None) -> dict:
    """Measure C0 (theorem), C1 (corollary), C2 (Taylor step) and the proof-term constants."""
    from .oracles import decomposition_check

    grid = list(grid or desk_grid())
    rows = []
    for inst in grid:
        rep = verify_theorem(inst, plan)
        cor = verify_corollary(inst.p, inst.q, inst.T, plan)
        led = decomposition_check(inst, plan)
        root = math.sqrt(inst.p / inst.q)
        rows.append({
            "p": inst.p, "q": inst.q, "T": inst.T,
            "normalized_residual": rep.normalized_residual,
            "normalized_corollary": cor.normalized_difference,
            "approx_gap_ratio": led.approx_gap / root,
            "f1_ratio": led.f1_0 / root,
            "f3_ratio": led.f3_0 / root,
            "pole_correction": led.pole_correction.real,
        })

    def worst(key):
        return max(abs(r[key]) for r in rows)

    import twisted_moment
    return {
        "constants": {
            "C0_theorem_normalized_residual": worst("normalized_residual"),
            "C1_corollary_normalized_difference": worst("normalized_corollary"),
            "C2_taylor_gap_over_sqrt_p_over_q": worst("approx_gap_ratio"),
            "F1_over_sqrt_p_over_q": worst("f1_ratio"),
            "F3_over_sqrt_p_over_q": worst("f3_ratio"),
            "pole_correction_abs": worst("pole_correction"),
        },
        "safety_factor": SAFETY_FACTOR,
        "provenance": {
            "description": "maximum over the desk grid of |error| / nominal scale",
            "grid_pairs": [list(pq) for pq in sorted({(r["p"], r["q"]) for r in rows})],
            "grid_T": sorted({r["T"] for r in rows}),
            "plan": plan.as_dict(),
            "package_version": twisted_moment.__version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "created": _dt.datetime.now(_dt.timezone.utc).replace(microsecond=0).isoformat(),
            "command": "python -m twisted_moment.calibration",
        },
        "rows": rows,
    }


def write_calibration(data: dict, path: Path | None = None) -> Path:
    path = Path(path) if path else Path(__file__).with_name("data") / CALIBRATION_FILE
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    return path


def load_calibration() -> dict:
    text = resources.files("twisted_moment").joinpath("data", CALIBRATION_FILE).read_text()
    return json.loads(text)


def constant(name: str) -> float:
    return float(load_calibration()["constants"][name])


def bound(name: str) -> float:
    """Stored constant times the safety factor."""
    data = load_calibration()
    return float(data["constants"][name]) * float(data["safety_factor"])


if __name__ == "__main__":
    out = write_calibration(run_calibration())
    print(f"wrote {out}")
