"""Experiment reports: named ratios/series with a tolerance and a verdict."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


def _clean(obj):
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": _clean(obj.real), "im": _clean(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return x
    return obj


@dataclass
class ExperimentReport:
    name: str
    params: dict[str, Any]
    ratios: list[float]
    max_ratio: float | None
    tolerance: float | None
    passed: bool | None  # None = report-only experiment
    series: dict[str, Any] = field(default_factory=dict)
    notes: list[str] = field(default_factory=list)

    def to_dict(self) -> dict[str, Any]:
        d = {
            "name": self.name,
            "params": self.params,
            "ratios": self.ratios,
            "max_ratio": self.max_ratio,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }
        if self.series:
            d["series"] = self.series
        if self.notes:
            d["notes"] = self.notes
        return _clean(d)

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), indent=2, **kw)

    @classmethod
    def from_dict(cls, d: dict[str, Any]) -> "ExperimentReport":
        return cls(
            name=d["name"],
            params=d.get("params", {}),
            ratios=d.get("ratios", []),
            max_ratio=d.get("max_ratio"),
            tolerance=d.get("tolerance"),
            passed=d.get("pass"),
            series=d.get("series", {}),
            notes=d.get("notes", []),
        )

    def summary(self) -> str:
        verdict = {True: "PASS", False: "FAIL", None: "REPORT"}[self.passed]
        mr = "-" if self.max_ratio is None else f"{self.max_ratio:.6g}"
        return f"[{verdict}] {self.name} max_ratio={mr} tol={self.tolerance}"


REPORT_KEYS = ("name", "params", "ratios", "max_ratio", "tolerance", "pass")
