"""Analysis-run lifecycle: frozen snapshots that carry decisions.

A run pins a survey's thresholds, statistic, and the report computed at
freeze time, then walks a forward-only stage ladder while stakeholders attach
per-system decisions. Re-analysis with new thresholds means a new run; the
only backward move is reopening a decided run for further investigation.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from datetime import datetime
from enum import Enum
from typing import Optional

from .analysis import Thresholds
from .kano import SatisfactionStatistic


class RunStage(Enum):
    COLLECTING = "collecting"
    SCORED = "scored"
    CLASSIFIED = "classified"
    UNDER_INVESTIGATION = "under_investigation"
    DECIDED = "decided"


class Decision(Enum):
    KEEP = "keep"
    DECOMMISSION = "decommission"
    DEFER = "defer"


class IllegalTransition(ValueError):
    """Stage change is not an adjacent forward step or a reopen."""


_STAGE_ORDER = list(RunStage)


def can_transition(current: RunStage, new: RunStage) -> bool:
    """Single forward steps only, plus the decided -> under-investigation reopen."""
    if current is RunStage.DECIDED and new is RunStage.UNDER_INVESTIGATION:
        return True
    return _STAGE_ORDER.index(new) == _STAGE_ORDER.index(current) + 1


@dataclass(frozen=True)
class DecisionNote:
    note: Optional[str] = None
    decision: Optional[Decision] = None


@dataclass(frozen=True)
class AnalysisRun:
    run_id: str
    survey_id: str
    thresholds: Thresholds
    statistic: SatisfactionStatistic
    created_at: datetime
    stage: RunStage = RunStage.COLLECTING
    report: dict = field(default_factory=dict)
    decisions: dict[str, DecisionNote] = field(default_factory=dict)

    def advance(self, new_stage: RunStage) -> "AnalysisRun":
        if not can_transition(self.stage, new_stage):
            raise IllegalTransition(
                f"cannot move run {self.run_id!r} from {self.stage.value!r} to {new_stage.value!r}"
            )
        return self._replaced(stage=new_stage)

    def with_decision(self, system_id: str, note: DecisionNote) -> "AnalysisRun":
        decisions = dict(self.decisions)
        decisions[system_id] = note
        return self._replaced(decisions=decisions)

    def _replaced(self, **changes) -> "AnalysisRun":
        return dataclasses.replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "run_id": self.run_id,
            "survey_id": self.survey_id,
            "thresholds": self.thresholds.as_dict(),
            "statistic": self.statistic.value,
            "created_at": self.created_at.isoformat(),
            "stage": self.stage.value,
            "report": self.report,
            "decisions": {
                system_id: {
                    "note": d.note,
                    "decision": d.decision.value if d.decision else None,
                }
                for system_id, d in sorted(self.decisions.items())
            },
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "AnalysisRun":
        return cls(
            run_id=payload["run_id"],
            survey_id=payload["survey_id"],
            thresholds=Thresholds.from_mapping(payload["thresholds"]),
            statistic=SatisfactionStatistic(payload["statistic"]),
            created_at=datetime.fromisoformat(payload["created_at"]),
            stage=RunStage(payload["stage"]),
            report=payload.get("report", {}),
            decisions={
                system_id: DecisionNote(
                    note=d.get("note"),
                    decision=Decision(d["decision"]) if d.get("decision") else None,
                )
                for system_id, d in payload.get("decisions", {}).items()
            },
        )
