"""Machine-readable verification reports.

Every check in this package reduces to a handful of margins: a computed
quantity minus the bound it has to dominate.  A report records the inputs,
the computed quantities, the bound values, the margins, and one pass flag.
The flag is true iff every margin clears its stated tolerance, i.e.
margin >= -tolerance.  Reports serialize to JSON with sorted keys and no
timestamps, so repeated runs are byte-identical.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

SCHEMA_VERSION = 1


@dataclass
class VerificationReport:
    """One verified case: inputs, computed values, bounds, margins, verdict.

    ``margins`` and ``tolerances`` share keys; the case passes iff
    ``margins[k] >= -tolerances[k]`` for every key.  Use :func:`make_report`
    instead of constructing directly so the flag stays consistent.
    """

    case_id: str
    inputs: dict[str, float]
    computed: dict[str, float]
    bounds: dict[str, float]
    margins: dict[str, float]
    tolerances: dict[str, float]
    passed: bool
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA_VERSION,
            "case_id": self.case_id,
            "inputs": dict(self.inputs),
            "computed": dict(self.computed),
            "bounds": dict(self.bounds),
            "margins": dict(self.margins),
            "tolerances": dict(self.tolerances),
            "pass": self.passed,
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        # allow_nan=False: a NaN anywhere in a report is a bug, fail loudly
        # rather than emit non-standard JSON.
        return json.dumps(self.to_dict(), sort_keys=True, indent=2, allow_nan=False) + "\n"

    def __repr__(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.case_id}"


def make_report(
    case_id: str,
    inputs: dict[str, float],
    computed: dict[str, float],
    bounds: dict[str, float],
    margins: dict[str, float],
    tolerances: dict[str, float],
    notes: list[str] | None = None,
) -> VerificationReport:
    """Build a report, deriving the pass flag from margins vs tolerances."""
    if set(margins) != set(tolerances):
        raise ValueError(
            f"margins and tolerances must share keys, got {sorted(margins)} vs {sorted(tolerances)}"
        )
    for name, value in margins.items():
        if not math.isfinite(value):
            raise ValueError(f"margin {name!r} is not finite: {value}")
    passed = all(margins[k] >= -tolerances[k] for k in margins)
    return VerificationReport(
        case_id=case_id,
        inputs=inputs,
        computed=computed,
        bounds=bounds,
        margins=margins,
        tolerances=tolerances,
        passed=passed,
        notes=list(notes or []),
    )
