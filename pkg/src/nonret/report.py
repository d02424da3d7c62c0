"""Claim reports shared by the checking functions and the harness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS = "pass"
FAIL = "fail"
DISCREPANCY = "discrepancy-documented"
STATUSES = (PASS, FAIL, DISCREPANCY)


@dataclass
class Row:
    """One parameter point of a claim.

    ``alternative`` holds a competing closed form when the source states two
    different values for the same quantity.
    """

    params: dict[str, Any]
    predicted: int
    measured: int
    alternative: int | None = None

    def to_dict(self) -> dict[str, Any]:
        out = {"params": dict(self.params), "predicted": self.predicted, "measured": self.measured}
        if self.alternative is not None:
            out["alternative"] = self.alternative
        return out


@dataclass
class ClaimReport:
    claim_id: str
    parameters: dict[str, Any]
    predicted: Any
    measured: Any
    status: str
    runtime: float = 0.0
    notes: str = ""
    rows: list[Row] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self, with_runtime: bool = True) -> dict[str, Any]:
        out = {
            "claim_id": self.claim_id,
            "parameters": self.parameters,
            "predicted": self.predicted,
            "measured": self.measured,
            "status": self.status,
            "notes": self.notes,
            "rows": [r.to_dict() for r in self.rows],
        }
        if with_runtime:
            out["runtime"] = round(self.runtime, 3)
        return out

    def line(self) -> str:
        return f"[{self.status.upper()}] {self.claim_id}: predicted={self.predicted} measured={self.measured}"


def status_from_rows(rows: list[Row]) -> str:
    """``pass`` if every row matches its prediction (and any alternative agrees);
    ``discrepancy-documented`` if the rows consistently match one of two
    competing forms that disagree somewhere; ``fail`` otherwise."""
    if not rows:
        return FAIL
    if all(r.measured == r.predicted for r in rows):
        if all(r.alternative is None or r.alternative == r.predicted for r in rows):
            return PASS
        return DISCREPANCY
    if all(r.alternative is not None and r.measured == r.alternative for r in rows):
        return DISCREPANCY
    return FAIL
