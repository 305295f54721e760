"""Experiment report artifacts.

A report is a canonical JSON document: keys sorted, two-space indent,
trailing newline. Everything that determines the result (parameters, seeds,
estimates, diagnostics, artifact names) lives in stable fields; wall-clock
time and worker count live under "timing" so that re-runs can be compared
byte-for-byte after dropping that one key.
"""

from __future__ import annotations

import dataclasses
import json
import math
from typing import Any

SCHEMA_VERSION = 1


def _clean(obj: Any) -> Any:
    # JSON has no NaN/inf; degenerate statistics are reported as null
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if hasattr(obj, "item") and not isinstance(obj, (str, bytes)):
        try:
            return _clean(obj.item())
        except (AttributeError, ValueError):
            return obj
    return obj


def stable_json(obj: Any) -> str:
    """Canonical JSON text: sorted keys, indent 2, newline-terminated."""
    return json.dumps(_clean(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


@dataclasses.dataclass(frozen=True)
class ExperimentReport:
    """One experiment run: command, resolved parameters, results.

    `params` must contain every input needed to reproduce the run (seed,
    steps, grid, ...). `artifacts` maps logical names to file names written
    next to the report.
    """

    command: str
    params: dict
    estimates: dict
    diagnostics: dict
    artifacts: dict
    wall_seconds: float
    workers: int = 1

    def to_json_dict(self, include_timing: bool = True) -> dict:
        doc = {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "params": self.params,
            "estimates": self.estimates,
            "diagnostics": self.diagnostics,
            "artifacts": self.artifacts,
        }
        if include_timing:
            doc["timing"] = {
                "wall_seconds": float(self.wall_seconds),
                "workers": int(self.workers),
            }
        return doc

    def canonical_json(self, include_timing: bool = True) -> str:
        return stable_json(self.to_json_dict(include_timing=include_timing))

    def write(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.canonical_json())


def comparable_json(report_text: str) -> str:
    """Re-serialize a report with the timing section removed.

    Two runs of the same command with the same parameters must agree on
    this string exactly, whatever the worker count or machine load.
    """
    doc = json.loads(report_text)
    doc.pop("timing", None)
    return stable_json(doc)
