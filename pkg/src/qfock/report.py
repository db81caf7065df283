"""Relation identifiers and per-instance verification records."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True, order=True)
class RelationId:
    tag: str
    indices: Tuple[int, ...] = ()

    def __str__(self):
        if not self.indices:
            return self.tag
        return f"{self.tag}{list(self.indices)}"


@dataclass
class RelationReport:
    id: RelationId
    status: str
    mode: str = "exact"
    residual: Optional[object] = field(default=None, repr=False)
    note: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self) -> dict:
        out = {"id": self.id.tag, "indices": list(self.id.indices), "status": self.status}
        if self.note:
            out["note"] = self.note
        if self.failed and self.residual is not None:
            out["residual"] = self.residual.entries_json()
        return out


def judge(rid: RelationId, residual, tol: Optional[float] = None, note=None) -> RelationReport:
    """Pass iff ``residual`` is exactly zero, or within ``tol`` for float matrices."""
    ok = residual.is_zero(tol)
    return RelationReport(
        rid, PASS if ok else FAIL, mode=residual.mode_label, residual=None if ok else residual, note=note
    )


def skipped(rid: RelationId, reason: str, mode: str = "exact") -> RelationReport:
    return RelationReport(rid, SKIPPED, mode=mode, note=reason)


def summarize(reports) -> dict:
    reports = list(reports)
    return {
        "total": len(reports),
        "passed": sum(r.status == PASS for r in reports),
        "failed": sum(r.status == FAIL for r in reports),
        "skipped": sum(r.status == SKIPPED for r in reports),
    }
