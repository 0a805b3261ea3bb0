"""Classification and ranking of system summaries.

Takes the per-system summaries produced by :mod:`rationalizer.kano` and turns
them into a ranked, classified rationalization report: every rated system
lands in one of the four verdict categories (Retain / Review / Remove /
Research), systems without usage data are carried as "unrated" rather than
dropped, and a sensitivity sweep reports which verdicts survive threshold
wobble.

Score thresholds are configuration, not constants: a combined score that
means "retain" in one cohort can mean "remove" in another, so every boundary
is an explicit, validated input with defaults chosen to match the reference
worked example.
"""

from __future__ import annotations

import dataclasses
import statistics
from dataclasses import dataclass
from decimal import Decimal
from enum import Enum
from typing import Iterable, Mapping

from .kano import SystemSummary


class FourR(Enum):
    """Rationalization verdict."""

    RETAIN = "retain"
    REVIEW = "review"
    REMOVE = "remove"
    RESEARCH = "research"


class InvalidThresholds(ValueError):
    """Threshold configuration violates a bound or ordering constraint."""


class MissingUsage(ValueError):
    """Classification refused: the summary has no usage factor."""


class EmptyInput(ValueError):
    """Ranking requires at least one summary."""


@dataclass(frozen=True)
class Thresholds:
    """Boundaries partitioning (satisfaction, usage, combined-score) space.

    The research gate catches high-satisfaction / low-usage systems before the
    combined-score bands apply; ``min_cohort_for_research`` stops a single
    enthusiast from minting a research system. Retain and remove bands include
    their boundary values. ``satisfaction_retain_min`` / ``satisfaction_remove_max``
    drive the usage-free provisional report only.
    """

    research_satisfaction_min: float = 7.5
    research_usage_max: float = 1.5
    cku_retain_min: float = 24.0
    cku_remove_max: float = 9.0
    min_cohort_for_research: int = 2
    satisfaction_retain_min: float = 7.5
    satisfaction_remove_max: float = 3.0

    def __post_init__(self) -> None:
        if not 1.0 < self.research_satisfaction_min < 9.0:
            raise InvalidThresholds(
                f"research_satisfaction_min must be in (1.0, 9.0), got {self.research_satisfaction_min}"
            )
        if not 1.0 < self.research_usage_max < 4.0:
            raise InvalidThresholds(
                f"research_usage_max must be in (1.0, 4.0), got {self.research_usage_max}"
            )
        for name in ("cku_retain_min", "cku_remove_max"):
            value = getattr(self, name)
            if not 1.0 < value < 36.0:
                raise InvalidThresholds(f"{name} must be in (1.0, 36.0), got {value}")
        if self.cku_remove_max >= self.cku_retain_min:
            raise InvalidThresholds(
                f"cku_remove_max ({self.cku_remove_max}) must be below "
                f"cku_retain_min ({self.cku_retain_min})"
            )
        if self.min_cohort_for_research < 1:
            raise InvalidThresholds(
                f"min_cohort_for_research must be >= 1, got {self.min_cohort_for_research}"
            )
        for name in ("satisfaction_retain_min", "satisfaction_remove_max"):
            value = getattr(self, name)
            if not 1.0 <= value <= 9.0:
                raise InvalidThresholds(f"{name} must be in [1.0, 9.0], got {value}")
        if self.satisfaction_remove_max >= self.satisfaction_retain_min:
            raise InvalidThresholds(
                f"satisfaction_remove_max ({self.satisfaction_remove_max}) must be below "
                f"satisfaction_retain_min ({self.satisfaction_retain_min})"
            )

    def replace(self, **changes) -> "Thresholds":
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)

    @classmethod
    def from_mapping(cls, mapping: Mapping[str, object]) -> "Thresholds":
        """Build thresholds from string-keyed config (file, query params).

        Values may be strings; unknown keys are rejected so a typo in a
        thresholds file fails loudly instead of silently using a default.
        """
        known = {f.name: f.type for f in dataclasses.fields(cls)}
        kwargs: dict[str, object] = {}
        for key, raw in mapping.items():
            if key not in known:
                raise InvalidThresholds(f"unknown threshold field {key!r}")
            if raw is None:
                continue
            try:
                if key == "min_cohort_for_research":
                    kwargs[key] = int(str(raw))
                else:
                    kwargs[key] = float(str(raw))
            except ValueError as exc:
                raise InvalidThresholds(f"bad value for {key}: {raw!r}") from exc
        return cls(**kwargs)


@dataclass(frozen=True)
class ClassifiedSystem:
    """A rated summary with its verdict and rank (1 = strongest retain case)."""

    summary: SystemSummary
    category: FourR
    priority: int


UNRATED_NOTE = "no usage answers recorded; survey this system's users before classifying"


@dataclass(frozen=True)
class UnratedSystem:
    """A summary that cannot be classified because it lacks usage data."""

    summary: SystemSummary
    note: str = UNRATED_NOTE


@dataclass(frozen=True)
class RankedReport:
    ranked: tuple[ClassifiedSystem, ...]
    unrated: tuple[UnratedSystem, ...]
    thresholds: Thresholds


@dataclass(frozen=True)
class ProvisionalEntry:
    """Satisfaction-only verdict, used before usage answers exist."""

    summary: SystemSummary
    conclusion: FourR
    priority: int


def classify(summary: SystemSummary, thresholds: Thresholds) -> FourR:
    """Assign the verdict for one rated summary.

    The research gate runs first: a low usage factor must not drag a
    high-satisfaction system through the combined-score bands into removal.
    Then the combined score decides, boundaries inclusive on both bands.
    """
    if summary.usage_factor is None or summary.cku is None:
        raise MissingUsage(f"system {summary.system_id!r} has no usage data")
    if (
        summary.satisfaction_score >= thresholds.research_satisfaction_min
        and summary.usage_factor <= thresholds.research_usage_max
        and summary.respondent_count >= thresholds.min_cohort_for_research
    ):
        return FourR.RESEARCH
    if summary.cku >= thresholds.cku_retain_min:
        return FourR.RETAIN
    if summary.cku <= thresholds.cku_remove_max:
        return FourR.REMOVE
    return FourR.REVIEW


def _rank_key(summary: SystemSummary):
    return (
        -summary.cku,
        -summary.usage_factor,
        -summary.average_satisfaction,
        summary.system_id,
    )


def rank(summaries: Iterable[SystemSummary], thresholds: Thresholds) -> RankedReport:
    """Order rated summaries by combined score and classify each.

    Ties break by usage factor, then average satisfaction, then system id, so
    the ordering is total. Summaries without usage data are appended after the
    ranked list, unranked, each with a remediation note.
    """
    rows = list(summaries)
    if not rows:
        raise EmptyInput("no summaries to rank")
    rated = [s for s in rows if s.has_usage]
    unrated = [s for s in rows if not s.has_usage]
    ranked = tuple(
        ClassifiedSystem(summary=s, category=classify(s, thresholds), priority=i + 1)
        for i, s in enumerate(sorted(rated, key=_rank_key))
    )
    leftovers = tuple(
        UnratedSystem(summary=s)
        for s in sorted(unrated, key=lambda s: (-s.average_satisfaction, s.system_id))
    )
    return RankedReport(ranked=ranked, unrated=leftovers, thresholds=thresholds)


def satisfaction_only_report(
    summaries: Iterable[SystemSummary], thresholds: Thresholds = Thresholds()
) -> list[ProvisionalEntry]:
    """Provisional three-way verdicts from satisfaction alone.

    This is the report to use while usage answers are still missing; retain
    and remove boundaries are inclusive.
    """
    rows = list(summaries)
    if not rows:
        raise EmptyInput("no summaries to report on")
    ordered = sorted(rows, key=lambda s: (-s.satisfaction_score, s.system_id))
    entries = []
    for i, summary in enumerate(ordered):
        score = summary.satisfaction_score
        if score >= thresholds.satisfaction_retain_min:
            conclusion = FourR.RETAIN
        elif score <= thresholds.satisfaction_remove_max:
            conclusion = FourR.REMOVE
        else:
            conclusion = FourR.REVIEW
        entries.append(ProvisionalEntry(summary=summary, conclusion=conclusion, priority=i + 1))
    return entries


# Score boundaries swept by sensitivity analysis; the integer cohort guard
# is not a score boundary and stays fixed.
SWEEP_FIELDS = (
    "research_satisfaction_min",
    "research_usage_max",
    "cku_retain_min",
    "cku_remove_max",
)

SWEEP_SPAN = 0.20


@dataclass(frozen=True)
class SweepEntry:
    system_id: str
    baseline: FourR
    outcomes: tuple[FourR, ...]
    sensitive: bool
    triggers: tuple[str, ...]


@dataclass(frozen=True)
class SweepReport:
    step: float
    span: float
    thresholds: Thresholds
    entries: tuple[SweepEntry, ...]


def _sweep_values(base: float, step: float) -> list[float]:
    """Grid from -span to +span around ``base`` in increments of ``step``.

    Both bounds are always evaluated, so an oversized step degenerates to a
    single evaluation per bound. Decimal arithmetic keeps grid points exact
    (a verdict flip at a value like 19.2 must not be lost to float noise).
    """
    b = Decimal(str(base))
    s = Decimal(str(step))
    low = b * Decimal(str(1 - SWEEP_SPAN))
    high = b * Decimal(str(1 + SWEEP_SPAN))
    values = []
    v = low
    while v < high:
        values.append(float(v))
        v += s
    values.append(float(high))
    return values


def sensitivity_sweep(
    summaries: Iterable[SystemSummary], thresholds: Thresholds, step: float
) -> SweepReport:
    """Vary each score threshold ±20% one at a time and record the verdicts.

    A system whose category ever changes is flagged threshold-sensitive, with
    the offending threshold fields listed. Summaries without usage data are
    excluded (they have no verdict to wobble).
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    rows = list(summaries)
    if not rows:
        raise EmptyInput("no summaries to sweep")
    rated = [s for s in rows if s.has_usage]

    outcomes: dict[str, set[FourR]] = {s.system_id: set() for s in rated}
    triggers: dict[str, set[str]] = {s.system_id: set() for s in rated}
    baseline = {s.system_id: classify(s, thresholds) for s in rated}
    for system_id in outcomes:
        outcomes[system_id].add(baseline[system_id])

    for field in SWEEP_FIELDS:
        for value in _sweep_values(getattr(thresholds, field), step):
            try:
                candidate = thresholds.replace(**{field: value})
            except InvalidThresholds:
                continue
            for s in rated:
                verdict = classify(s, candidate)
                outcomes[s.system_id].add(verdict)
                if verdict is not baseline[s.system_id]:
                    triggers[s.system_id].add(field)

    order = {v: i for i, v in enumerate(FourR)}
    entries = tuple(
        SweepEntry(
            system_id=s.system_id,
            baseline=baseline[s.system_id],
            outcomes=tuple(sorted(outcomes[s.system_id], key=order.get)),
            sensitive=len(outcomes[s.system_id]) > 1,
            triggers=tuple(sorted(triggers[s.system_id])),
        )
        for s in sorted(rated, key=_rank_key)
    )
    return SweepReport(step=step, span=SWEEP_SPAN, thresholds=thresholds, entries=entries)


def auto_calibrate(
    summaries: Iterable[SystemSummary], base: Thresholds = Thresholds()
) -> Thresholds:
    """Set the combined-score bands at the cohort's 33rd/67th percentiles.

    Optional alternative to hand-picked bands for cohorts where the defaults
    don't fit; everything else in ``base`` is kept. Requires at least two
    rated summaries and a spread between the percentiles.
    """
    ckus = sorted(s.cku for s in summaries if s.has_usage)
    if len(ckus) < 2:
        raise EmptyInput("auto-calibration needs at least two rated summaries")
    percentiles = statistics.quantiles(ckus, n=100, method="inclusive")
    remove_max, retain_min = percentiles[32], percentiles[66]
    if remove_max >= retain_min:
        raise InvalidThresholds(
            "combined scores too concentrated to auto-calibrate "
            f"(33rd pct {remove_max} >= 67th pct {retain_min})"
        )
    return base.replace(cku_retain_min=retain_min, cku_remove_max=remove_max)
