"""Verification outcomes and their JSON rendering."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field

PASS = "PASS"
PASS_WITH_CAVEAT = "PASS-WITH-CAVEAT"
SKIPPED = "SKIPPED-BY-BOUND"
FAIL = "FAIL"

MAX_LISTED_MISMATCHES = 50


@dataclass
class Mismatch:
    tuple: list[str]  # canonical keys, or gadget labels in explicit mode
    side: str  # "formula-only" or "oracle-only"
    clause: int | None = None  # first failed formula clause, 1-based
    detail: str | None = None

    def to_json(self) -> dict:
        out = {"tuple": self.tuple, "side": self.side}
        if self.clause is not None:
            out["clause"] = self.clause
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class PartOutcome:
    name: str
    mode: str  # "universe", "explicit" or "property"
    status: str
    checked: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    mismatch_count: int = 0
    caveats: int = 0
    justification: str = ""
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "mode": self.mode,
            "status": self.status,
            "checked": self.checked,
            "mismatches": [m.to_json() for m in self.mismatches],
            "caveats": self.caveats,
        }
        if self.mismatch_count > len(self.mismatches):
            out["mismatch_count"] = self.mismatch_count
        if self.justification:
            out["bound"] = self.justification
        if self.note:
            out["note"] = self.note
        return out


def part_status(mismatch_count: int, caveats: int) -> str:
    if mismatch_count:
        return FAIL
    return PASS_WITH_CAVEAT if caveats else PASS


def outcome(name, mode, checked, mismatches, caveats=0, justification="", note="") -> PartOutcome:
    mismatches = list(mismatches)
    return PartOutcome(
        name=name,
        mode=mode,
        status=part_status(len(mismatches), caveats),
        checked=checked,
        mismatches=mismatches[:MAX_LISTED_MISMATCHES],
        mismatch_count=len(mismatches),
        caveats=caveats,
        justification=justification,
        note=note,
    )


def skipped(name: str, mode: str, reason: str) -> PartOutcome:
    return PartOutcome(name=name, mode=mode, status=SKIPPED, note=reason)


@dataclass
class VerificationReport:
    id: str
    status: str
    N: int
    checked: int
    mismatches: list[Mismatch]
    caveats: int
    millis: int
    parts: list[PartOutcome] = field(default_factory=list)

    @classmethod
    def aggregate(cls, lemma_id: str, N: int, parts: list[PartOutcome], millis: int) -> "VerificationReport":
        ran = [p for p in parts if p.status != SKIPPED]
        mismatches = [m for p in ran for m in p.mismatches]
        caveats = sum(p.caveats for p in ran)
        if any(p.status == FAIL for p in ran):
            status = FAIL
        elif not ran:
            status = SKIPPED
        else:
            status = PASS_WITH_CAVEAT if caveats else PASS
        return cls(lemma_id, status, N, sum(p.checked for p in ran), mismatches, caveats, millis, parts)

    def to_json(self, timing: bool = True) -> dict:
        out = {
            "id": self.id,
            "status": self.status,
            "N": self.N,
            "checked": self.checked,
            "mismatches": [m.to_json() for m in self.mismatches],
            "caveats": self.caveats,
        }
        if timing:
            out["millis"] = self.millis
        out["parts"] = [p.to_json() for p in self.parts]
        return out


def render(reports: list[VerificationReport], timing: bool = True) -> str:
    """Stable JSON text; with ``timing=False`` runs are byte-comparable."""
    return json.dumps([r.to_json(timing) for r in reports], indent=2, sort_keys=False) + "\n"


def summary_line(r: VerificationReport) -> str:
    return f"{r.id:<18} {r.status:<17} N={r.N} checked={r.checked} mismatches={len(r.mismatches)} caveats={r.caveats}"


__all__ = [
    "FAIL", "PASS", "PASS_WITH_CAVEAT", "SKIPPED", "Mismatch", "PartOutcome", "VerificationReport",
    "asdict", "outcome", "render", "skipped", "summary_line",
]
