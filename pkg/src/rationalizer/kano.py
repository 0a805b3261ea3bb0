"""Core survey scoring: answer-pair categorization and per-system aggregation.

A respondent answers two satisfaction questions per system ("how do you feel
with it" / "how would you feel without it") plus one usage-frequency question.
The answer pair maps onto a fixed 4x4 grid of satisfaction categories, each
category carries a point value, and usage answers carry their own points.
Aggregating one system's responses yields the satisfaction statistics, the
usage factor, and their product (the combined score used for ranking).

Everything in this module is pure and operates on immutable values; no I/O.
"""

from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from enum import Enum
from typing import Iterable, Optional


class FunctionalAnswer(Enum):
    """Answer to the "how do you feel about it now" question."""

    LIKE_IT = "LIKE"
    EXPECT_IT = "EXPECT"
    NEITHER_LIKE_NOR_DISLIKE = "NEUTRAL"
    DISLIKE_IT = "DISLIKE"


class DysfunctionalAnswer(Enum):
    """Answer to the "how would you feel without it" question."""

    PREFER_NOT_TO_BE_WITHOUT = "PREFER_NOT"
    COULD_NOT_WORK_EFFECTIVELY = "CANNOT_WORK"
    CAN_MANAGE_WITHOUT = "CAN_MANAGE"
    DO_NOT_NEED_IT = "DONT_NEED"


class CategoryOfSatisfaction(Enum):
    """Satisfaction category derived from one answer pair."""

    MUST_BE = "M"
    PERFORMANCE = "P"
    ATTRACTIVE = "A"
    INDIFFERENT = "I"


class UsageCategory(Enum):
    """Answer to the "how often do you use it" question."""

    LOT = "L"
    SOMEWHAT = "S"
    OCCASIONALLY = "O"
    NOT_MUCH = "N"


class Role(Enum):
    """Whether a response is a respondent's own answer or a manager answering
    on behalf of a team."""

    SELF_REPORT = "self"
    MANAGER_PROXY = "proxy"


class SatisfactionStatistic(Enum):
    """Which satisfaction statistic feeds the combined score."""

    AVERAGE = "average"
    MEDIAN = "median"


class EmptyResponseSet(ValueError):
    """No responses available for the requested system."""


class DuplicateRespondent(ValueError):
    """A respondent appears more than once for the same system."""


class InvalidResponse(ValueError):
    """A response violates a structural constraint (e.g. weight)."""


_F = FunctionalAnswer
_D = DysfunctionalAnswer
_C = CategoryOfSatisfaction

# Answer-pair grid, row = functional answer, column = dysfunctional answer.
# The dislike row maps uniformly to Indifferent; there is deliberately no
# "questionable"/"reverse" category here.
_GRID: dict[tuple[FunctionalAnswer, DysfunctionalAnswer], CategoryOfSatisfaction] = {
    (_F.LIKE_IT, _D.PREFER_NOT_TO_BE_WITHOUT): _C.PERFORMANCE,
    (_F.LIKE_IT, _D.COULD_NOT_WORK_EFFECTIVELY): _C.MUST_BE,
    (_F.LIKE_IT, _D.CAN_MANAGE_WITHOUT): _C.ATTRACTIVE,
    (_F.LIKE_IT, _D.DO_NOT_NEED_IT): _C.INDIFFERENT,
    (_F.EXPECT_IT, _D.PREFER_NOT_TO_BE_WITHOUT): _C.MUST_BE,
    (_F.EXPECT_IT, _D.COULD_NOT_WORK_EFFECTIVELY): _C.MUST_BE,
    (_F.EXPECT_IT, _D.CAN_MANAGE_WITHOUT): _C.PERFORMANCE,
    (_F.EXPECT_IT, _D.DO_NOT_NEED_IT): _C.INDIFFERENT,
    (_F.NEITHER_LIKE_NOR_DISLIKE, _D.PREFER_NOT_TO_BE_WITHOUT): _C.PERFORMANCE,
    (_F.NEITHER_LIKE_NOR_DISLIKE, _D.COULD_NOT_WORK_EFFECTIVELY): _C.MUST_BE,
    (_F.NEITHER_LIKE_NOR_DISLIKE, _D.CAN_MANAGE_WITHOUT): _C.ATTRACTIVE,
    (_F.NEITHER_LIKE_NOR_DISLIKE, _D.DO_NOT_NEED_IT): _C.INDIFFERENT,
    (_F.DISLIKE_IT, _D.PREFER_NOT_TO_BE_WITHOUT): _C.INDIFFERENT,
    (_F.DISLIKE_IT, _D.COULD_NOT_WORK_EFFECTIVELY): _C.INDIFFERENT,
    (_F.DISLIKE_IT, _D.CAN_MANAGE_WITHOUT): _C.INDIFFERENT,
    (_F.DISLIKE_IT, _D.DO_NOT_NEED_IT): _C.INDIFFERENT,
}

_SATISFACTION_POINTS = {
    _C.MUST_BE: 9,
    _C.PERFORMANCE: 6,
    _C.ATTRACTIVE: 3,
    _C.INDIFFERENT: 1,
}

_USAGE_POINTS = {
    UsageCategory.LOT: 4,
    UsageCategory.SOMEWHAT: 3,
    UsageCategory.OCCASIONALLY: 2,
    UsageCategory.NOT_MUCH: 1,
}


def categorize(
    functional: FunctionalAnswer, dysfunctional: DysfunctionalAnswer
) -> CategoryOfSatisfaction:
    """Map one answer pair to its satisfaction category.

    Total over both enums and deterministic: every one of the 16 pairs has
    exactly one grid cell.
    """
    return _GRID[(functional, dysfunctional)]


def satisfaction_points(category: CategoryOfSatisfaction) -> int:
    """Point value of a satisfaction category (9 / 6 / 3 / 1)."""
    return _SATISFACTION_POINTS[category]


def usage_points(usage: UsageCategory) -> int:
    """Point value of a usage answer (4 / 3 / 2 / 1)."""
    return _USAGE_POINTS[usage]


@dataclass(frozen=True)
class Response:
    """One respondent's answers for one system.

    ``proxy_weight`` is the headcount a manager answers for; self-reports
    always weigh 1. There is no weighting heuristic: the weight is explicit
    input or it is 1.
    """

    respondent_id: str
    system_id: str
    functional: FunctionalAnswer
    dysfunctional: DysfunctionalAnswer
    usage: Optional[UsageCategory] = None
    proxy_weight: int = 1
    role: Role = Role.SELF_REPORT

    def __post_init__(self) -> None:
        if not isinstance(self.proxy_weight, int) or isinstance(self.proxy_weight, bool):
            raise InvalidResponse(f"proxy_weight must be an integer, got {self.proxy_weight!r}")
        if self.proxy_weight < 1:
            raise InvalidResponse(f"proxy_weight must be >= 1, got {self.proxy_weight}")
        if self.role is Role.SELF_REPORT and self.proxy_weight != 1:
            raise InvalidResponse(
                f"self-report responses must have proxy_weight 1, got {self.proxy_weight}"
            )


@dataclass(frozen=True)
class SystemSummary:
    """Per-system aggregates over one response set.

    ``respondent_count`` and ``usage_respondent_count`` are weighted counts
    and may differ: responses without a usage answer still count toward the
    satisfaction aggregates. ``usage_factor`` and ``cku`` are ``None`` when no
    response carries a usage answer; such summaries cannot be classified and
    are surfaced as "unrated" by the report layer.
    """

    system_id: str
    respondent_count: int
    usage_respondent_count: int
    total_satisfaction: int
    average_satisfaction: float
    median_satisfaction: float
    total_usage: int
    usage_factor: Optional[float]
    cku: Optional[float]
    statistic: SatisfactionStatistic = SatisfactionStatistic.AVERAGE

    @property
    def has_usage(self) -> bool:
        return self.usage_factor is not None

    @property
    def satisfaction_score(self) -> float:
        """The satisfaction statistic selected for combined scoring."""
        if self.statistic is SatisfactionStatistic.MEDIAN:
            return self.median_satisfaction
        return self.average_satisfaction


_ONE_DP = Decimal("0.1")


def round1(value: Decimal) -> float:
    """Round to one fractional digit, halves away from zero."""
    return float(value.quantize(_ONE_DP, rounding=ROUND_HALF_UP))


def _ratio1(total: int, count: int) -> float:
    return round1(Decimal(total) / Decimal(count))


def _product1(a: float, b: float) -> float:
    # Operands are one-digit decimals already; str() round-trips them exactly.
    return round1(Decimal(str(a)) * Decimal(str(b)))


def _weighted_median(pairs: list[tuple[int, int]]) -> float:
    """Median of the multiset where each (points, weight) pair contributes
    ``weight`` copies of ``points``; mean of the two middles when even."""
    ordered = sorted(pairs)
    total = sum(weight for _, weight in ordered)

    def value_at(position: int) -> int:
        seen = 0
        for points, weight in ordered:
            seen += weight
            if seen >= position:
                return points
        raise AssertionError("position beyond total weight")

    if total % 2:
        return float(value_at((total + 1) // 2))
    low = value_at(total // 2)
    high = value_at(total // 2 + 1)
    return (low + high) / 2


def summarize_system(
    system_id: str,
    responses: Iterable[Response],
    statistic: SatisfactionStatistic = SatisfactionStatistic.AVERAGE,
) -> SystemSummary:
    """Aggregate all responses for ``system_id`` into a SystemSummary.

    Responses for other systems are ignored. The average and the usage factor
    are rounded to one digit independently; the combined score multiplies the
    already-rounded operands and rounds the product. Raises EmptyResponseSet
    when no response matches and DuplicateRespondent when one respondent
    appears twice for the system.
    """
    rows = [r for r in responses if r.system_id == system_id]
    if not rows:
        raise EmptyResponseSet(f"no responses for system {system_id!r}")
    seen: set[str] = set()
    for row in rows:
        if row.respondent_id in seen:
            raise DuplicateRespondent(
                f"respondent {row.respondent_id!r} answered twice for system {system_id!r}"
            )
        seen.add(row.respondent_id)

    sat_pairs: list[tuple[int, int]] = []
    total_satisfaction = 0
    respondent_count = 0
    total_usage = 0
    usage_respondent_count = 0
    for row in rows:
        points = satisfaction_points(categorize(row.functional, row.dysfunctional))
        total_satisfaction += points * row.proxy_weight
        respondent_count += row.proxy_weight
        sat_pairs.append((points, row.proxy_weight))
        if row.usage is not None:
            total_usage += usage_points(row.usage) * row.proxy_weight
            usage_respondent_count += row.proxy_weight

    average = _ratio1(total_satisfaction, respondent_count)
    median = _weighted_median(sat_pairs)

    usage_factor: Optional[float] = None
    cku: Optional[float] = None
    if usage_respondent_count > 0:
        usage_factor = _ratio1(total_usage, usage_respondent_count)
        score = median if statistic is SatisfactionStatistic.MEDIAN else average
        cku = _product1(score, usage_factor)

    return SystemSummary(
        system_id=system_id,
        respondent_count=respondent_count,
        usage_respondent_count=usage_respondent_count,
        total_satisfaction=total_satisfaction,
        average_satisfaction=average,
        median_satisfaction=median,
        total_usage=total_usage,
        usage_factor=usage_factor,
        cku=cku,
        statistic=statistic,
    )


def summarize_responses(
    responses: Iterable[Response],
    statistic: SatisfactionStatistic = SatisfactionStatistic.AVERAGE,
) -> list[SystemSummary]:
    """Summarize every system present in ``responses``, ordered by system id."""
    rows = list(responses)
    system_ids = sorted({r.system_id for r in rows})
    return [summarize_system(sid, rows, statistic) for sid in system_ids]
