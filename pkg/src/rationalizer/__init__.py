"""Software-estate rationalization from two-question satisfaction surveys.

Respondents answer how they feel about a system and how they would feel
without it; each answer pair lands in a category of satisfaction, usage
frequency scales the score, and every system ends up with a combined score,
a priority rank, and one of four verdicts: retain, review, remove, research.
"""

from .analysis import (
    ClassifiedSystem,
    EmptyInput,
    FourR,
    InvalidThresholds,
    MissingUsage,
    ProvisionalEntry,
    RankedReport,
    SweepEntry,
    SweepReport,
    Thresholds,
    UnratedSystem,
    auto_calibrate,
    classify,
    rank,
    satisfaction_only_report,
    sensitivity_sweep,
)
from .ingest import (
    CSV_HEADER,
    DuplicateResponse,
    MalformedHeader,
    RejectedRow,
    RejectReason,
    ResponseFormat,
    ResponseRecord,
    ResponseStore,
    StorageUnavailable,
    SurveyDefinition,
    SystemEntry,
    UnknownSurvey,
    parse_responses,
    question_set,
    serialize_responses,
)
from .kano import (
    CategoryOfSatisfaction,
    DuplicateRespondent,
    DysfunctionalAnswer,
    EmptyResponseSet,
    FunctionalAnswer,
    InvalidResponse,
    Response,
    Role,
    SatisfactionStatistic,
    SystemSummary,
    UsageCategory,
    categorize,
    satisfaction_points,
    summarize_responses,
    summarize_system,
    usage_points,
)
from .report import analysis_payload, canonical_json, quadrant_svg, sweep_payload
from .runs import AnalysisRun, Decision, DecisionNote, IllegalTransition, RunStage

__version__ = "0.1.0"

__all__ = [
    "AnalysisRun",
    "CSV_HEADER",
    "CategoryOfSatisfaction",
    "ClassifiedSystem",
    "Decision",
    "DecisionNote",
    "DuplicateRespondent",
    "DuplicateResponse",
    "DysfunctionalAnswer",
    "EmptyInput",
    "EmptyResponseSet",
    "FourR",
    "FunctionalAnswer",
    "IllegalTransition",
    "InvalidResponse",
    "InvalidThresholds",
    "MalformedHeader",
    "MissingUsage",
    "ProvisionalEntry",
    "RankedReport",
    "RejectReason",
    "RejectedRow",
    "Response",
    "ResponseFormat",
    "ResponseRecord",
    "ResponseStore",
    "Role",
    "RunStage",
    "SatisfactionStatistic",
    "StorageUnavailable",
    "SurveyDefinition",
    "SweepEntry",
    "SweepReport",
    "SystemEntry",
    "SystemSummary",
    "Thresholds",
    "UnknownSurvey",
    "UnratedSystem",
    "analysis_payload",
    "auto_calibrate",
    "canonical_json",
    "categorize",
    "classify",
    "parse_responses",
    "quadrant_svg",
    "question_set",
    "rank",
    "satisfaction_only_report",
    "satisfaction_points",
    "sensitivity_sweep",
    "serialize_responses",
    "summarize_responses",
    "summarize_system",
    "sweep_payload",
    "usage_points",
    "__version__",
]
