"""Check reports and the JSON report document."""

from __future__ import annotations

import json
import time
from collections import Counter
from contextlib import contextmanager
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Iterable

from .. import __version__


class Verdict(str, Enum):
    HOLDS_EXHAUSTIVE = "holds-exhaustive"
    HOLDS_SAMPLED = "holds-sampled"
    FAILS = "fails"
    REPORTED = "reported"


@dataclass
class CheckReport:
    name: str
    verdict: Verdict
    config: dict[str, Any] = field(default_factory=dict)
    witness: dict[str, Any] | None = None
    observation: dict[str, Any] | None = None
    millis: float = 0.0

    def __post_init__(self):
        if self.verdict is Verdict.FAILS and not self.witness:
            raise ValueError(f"{self.name}: a failing check needs a witness")

    @property
    def holds(self) -> bool:
        return self.verdict in (Verdict.HOLDS_EXHAUSTIVE, Verdict.HOLDS_SAMPLED)

    def as_dict(self, timing: bool = True) -> dict[str, Any]:
        out: dict[str, Any] = {"name": self.name, "verdict": self.verdict.value, "config": self.config}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.observation is not None:
            out["observation"] = self.observation
        if timing:
            out["millis"] = round(self.millis, 3)
        return out


@contextmanager
def stopwatch():
    """Yields a one-element list that holds the elapsed milliseconds on exit."""
    box = [0.0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = (time.perf_counter() - start) * 1000.0


def summary(reports: Iterable[CheckReport]) -> dict[str, int]:
    counts = Counter(r.verdict.value for r in reports)
    return {v.value: counts.get(v.value, 0) for v in Verdict}


def emit_report(reports: Iterable[CheckReport], config: dict[str, Any] | None = None,
                timing: bool = True) -> str:
    """Deterministic JSON document; with ``timing=False`` it is byte-stable across reruns."""
    reports = list(reports)
    doc = {
        "tool-version": __version__,
        "config": config or {},
        "checks": [r.as_dict(timing) for r in reports],
        "summary": summary(reports),
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def exit_status(reports: Iterable[CheckReport]) -> int:
    return 1 if any(r.verdict is Verdict.FAILS for r in reports) else 0
