"""Reading, validating, and persisting survey definitions and responses.

Interchange formats are CSV (fixed header, one response per row) and JSON (an
array of objects with the same field names). Every data row either becomes a
valid record or lands in a rejects list with its row number and reason;
a bad row never aborts the batch.

Persistence is an append-only newline-delimited record log per survey under a
data directory: trivially auditable, trivially backed up, no database. The
store is also the system of record for frozen analysis runs.
"""

from __future__ import annotations

import csv
import io
import json
import os
import threading
from dataclasses import dataclass
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .kano import (
    DysfunctionalAnswer,
    FunctionalAnswer,
    InvalidResponse,
    Response,
    Role,
    UsageCategory,
)

CSV_HEADER = [
    "respondent_id",
    "system_id",
    "functional",
    "dysfunctional",
    "usage",
    "weight",
    "role",
]

_FUNCTIONAL_CODES = {m.value: m for m in FunctionalAnswer}
_DYSFUNCTIONAL_CODES = {m.value: m for m in DysfunctionalAnswer}
_USAGE_CODES = {m.value: m for m in UsageCategory}
_ROLE_CODES = {m.value: m for m in Role}


class ResponseFormat(Enum):
    CSV = "csv"
    JSON = "json"


class MalformedHeader(ValueError):
    """The document envelope is unusable (bad CSV header / non-array JSON)."""


class DuplicateResponse(ValueError):
    """A (survey, respondent, system) response already exists."""


class UnknownSurvey(ValueError):
    """No survey with that id in the store."""


class UnknownRun(ValueError):
    """No analysis run with that id in the store."""


class SurveyExists(ValueError):
    """A survey with that id already exists."""


class InvalidSurveyId(ValueError):
    """Survey/run ids must be filesystem-safe."""


class StorageUnavailable(RuntimeError):
    """The data directory cannot be read or written."""


class RejectReason(Enum):
    UNKNOWN_ANSWER_CODE = "unknown_answer_code"
    DUPLICATE_RESPONSE = "duplicate_response"
    NON_POSITIVE_WEIGHT = "non_positive_weight"
    MALFORMED_ROW = "malformed_row"


@dataclass(frozen=True)
class RejectedRow:
    """One rejected input row.

    ``row_number`` is the physical line number for CSV (header is line 1) and
    the 1-based element index for JSON.
    """

    row_number: int
    reason: RejectReason
    detail: str


@dataclass(frozen=True)
class ResponseRecord:
    """A stored response: the answers plus survey id and submission time."""

    survey_id: str
    response: Response
    submitted_at: Optional[datetime] = None


@dataclass(frozen=True)
class SystemEntry:
    system_id: str
    display_name: str
    business_area: Optional[str] = None


@dataclass(frozen=True)
class SurveyDefinition:
    """A survey: the systems under scrutiny plus the question wording variant."""

    survey_id: str
    title: str
    systems: tuple[SystemEntry, ...]
    wording: Role = Role.SELF_REPORT
    opens_at: Optional[datetime] = None
    closes_at: Optional[datetime] = None

    def __post_init__(self) -> None:
        ids = [s.system_id for s in self.systems]
        if len(ids) != len(set(ids)):
            raise ValueError(f"duplicate system ids in survey {self.survey_id!r}")
        if self.opens_at and self.closes_at and self.closes_at < self.opens_at:
            raise ValueError("survey close time precedes open time")

    def display_names(self) -> dict[str, str]:
        return {s.system_id: s.display_name for s in self.systems}


# Question wording rendered by clients, keyed by variant. Managers answer on
# behalf of their staff, hence the reworded stems and options.
QUESTION_SETS: dict[str, dict] = {
    Role.SELF_REPORT.value: {
        "functional": {
            "text": "How do you feel about System/Tool '{system}' now?",
            "options": {
                "LIKE": "I like it.",
                "EXPECT": "I expect it.",
                "NEUTRAL": "I neither like nor dislike it.",
                "DISLIKE": "I dislike it.",
            },
        },
        "dysfunctional": {
            "text": "How would you feel if you did NOT have System/Tool '{system}'?",
            "options": {
                "PREFER_NOT": "I would prefer not to be without it.",
                "CANNOT_WORK": "I could not work effectively without it.",
                "CAN_MANAGE": "I can manage without it, but might use it if it were still available.",
                "DONT_NEED": "I do not need it.",
            },
        },
        "usage": {
            "text": "How often do you use System/Tool '{system}'?",
            "options": {
                "L": "A lot (every day or several times a week)",
                "S": "Somewhat (once a week to once a month)",
                "O": "Occasionally (2-4 times a year)",
                "N": "Not very much or not at all (once a year or less)",
            },
        },
    },
    Role.MANAGER_PROXY.value: {
        "functional": {
            "text": "How do you think the staff in your department/group/team feel about System/Tool '{system}' now?",
            "options": {
                "LIKE": "They like it.",
                "EXPECT": "They expect it.",
                "NEUTRAL": "They neither like nor dislike it.",
                "DISLIKE": "They dislike it.",
            },
        },
        "dysfunctional": {
            "text": "How do you think they would feel if they did NOT have System/Tool '{system}'?",
            "options": {
                "PREFER_NOT": "They would prefer not to be without it.",
                "CANNOT_WORK": "They could not work effectively without it.",
                "CAN_MANAGE": "They can manage without it, but might use it if it were still available.",
                "DONT_NEED": "They do not need it.",
            },
        },
        "usage": {
            "text": "How often do the staff in your department/group/team use System/Tool '{system}'?",
            "options": {
                "L": "A lot (every day or several times a week)",
                "S": "Somewhat (once a week to once a month)",
                "O": "Occasionally (2-4 times a year)",
                "N": "Not very much or not at all (once a year or less)",
            },
        },
    },
}


def question_set(wording: Role) -> dict:
    return QUESTION_SETS[wording.value]


def _build_response(
    row_number: int,
    respondent_id: str,
    system_id: str,
    functional: str,
    dysfunctional: str,
    usage: str,
    weight: str,
    role: str,
) -> Response | RejectedRow:
    if not respondent_id or not system_id:
        return RejectedRow(row_number, RejectReason.MALFORMED_ROW, "empty respondent_id or system_id")
    if functional not in _FUNCTIONAL_CODES:
        return RejectedRow(
            row_number, RejectReason.UNKNOWN_ANSWER_CODE, f"functional answer code {functional!r}"
        )
    if dysfunctional not in _DYSFUNCTIONAL_CODES:
        return RejectedRow(
            row_number,
            RejectReason.UNKNOWN_ANSWER_CODE,
            f"dysfunctional answer code {dysfunctional!r}",
        )
    usage_value: Optional[UsageCategory] = None
    if usage:
        if usage not in _USAGE_CODES:
            return RejectedRow(
                row_number, RejectReason.UNKNOWN_ANSWER_CODE, f"usage answer code {usage!r}"
            )
        usage_value = _USAGE_CODES[usage]
    if weight:
        try:
            weight_value = int(weight)
        except ValueError:
            return RejectedRow(row_number, RejectReason.MALFORMED_ROW, f"weight {weight!r} is not an integer")
        if weight_value < 1:
            return RejectedRow(
                row_number, RejectReason.NON_POSITIVE_WEIGHT, f"weight {weight_value} must be >= 1"
            )
    else:
        weight_value = 1
    if role:
        if role not in _ROLE_CODES:
            return RejectedRow(row_number, RejectReason.MALFORMED_ROW, f"role code {role!r}")
        role_value = _ROLE_CODES[role]
    else:
        role_value = Role.SELF_REPORT
    try:
        return Response(
            respondent_id=respondent_id,
            system_id=system_id,
            functional=_FUNCTIONAL_CODES[functional],
            dysfunctional=_DYSFUNCTIONAL_CODES[dysfunctional],
            usage=usage_value,
            proxy_weight=weight_value,
            role=role_value,
        )
    except InvalidResponse as exc:
        return RejectedRow(row_number, RejectReason.MALFORMED_ROW, str(exc))


def _parse_csv(text: str, survey_id: str, submitted_at: Optional[datetime]):
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header != CSV_HEADER:
        raise MalformedHeader(
            f"expected header {','.join(CSV_HEADER)!r}, got {','.join(header or [])!r}"
        )
    records: list[ResponseRecord] = []
    rejects: list[RejectedRow] = []
    seen: set[tuple[str, str]] = set()
    for row in reader:
        row_number = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(CSV_HEADER):
            rejects.append(
                RejectedRow(
                    row_number,
                    RejectReason.MALFORMED_ROW,
                    f"expected {len(CSV_HEADER)} fields, got {len(row)}",
                )
            )
            continue
        cells = [c.strip() for c in row]
        built = _build_response(row_number, *cells)
        if isinstance(built, RejectedRow):
            rejects.append(built)
            continue
        key = (built.respondent_id, built.system_id)
        if key in seen:
            rejects.append(
                RejectedRow(
                    row_number,
                    RejectReason.DUPLICATE_RESPONSE,
                    f"respondent {key[0]!r} already answered for system {key[1]!r}",
                )
            )
            continue
        seen.add(key)
        records.append(ResponseRecord(survey_id=survey_id, response=built, submitted_at=submitted_at))
    return records, rejects


def _parse_json(text: str, survey_id: str, submitted_at: Optional[datetime]):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedHeader(f"not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise MalformedHeader("JSON document must be an array of response objects")
    records: list[ResponseRecord] = []
    rejects: list[RejectedRow] = []
    seen: set[tuple[str, str]] = set()
    for index, item in enumerate(data, start=1):
        if not isinstance(item, dict):
            rejects.append(RejectedRow(index, RejectReason.MALFORMED_ROW, "element is not an object"))
            continue
        unknown = set(item) - set(CSV_HEADER)
        if unknown:
            rejects.append(
                RejectedRow(
                    index, RejectReason.MALFORMED_ROW, f"unknown fields {sorted(unknown)}"
                )
            )
            continue

        def text_field(name: str) -> str:
            value = item.get(name)
            return "" if value is None else str(value).strip()

        built = _build_response(
            index,
            text_field("respondent_id"),
            text_field("system_id"),
            text_field("functional"),
            text_field("dysfunctional"),
            text_field("usage"),
            text_field("weight"),
            text_field("role"),
        )
        if isinstance(built, RejectedRow):
            rejects.append(built)
            continue
        key = (built.respondent_id, built.system_id)
        if key in seen:
            rejects.append(
                RejectedRow(
                    index,
                    RejectReason.DUPLICATE_RESPONSE,
                    f"respondent {key[0]!r} already answered for system {key[1]!r}",
                )
            )
            continue
        seen.add(key)
        records.append(ResponseRecord(survey_id=survey_id, response=built, submitted_at=submitted_at))
    return records, rejects


def parse_responses(
    data: str | bytes,
    fmt: ResponseFormat,
    survey_id: str,
    submitted_at: Optional[datetime] = None,
) -> tuple[list[ResponseRecord], list[RejectedRow]]:
    """Parse a response document into accepted records plus rejects.

    Accepted + rejected row counts always add up to the number of data rows;
    raises MalformedHeader only when the document envelope itself is unusable.
    """
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    if fmt is ResponseFormat.CSV:
        return _parse_csv(text, survey_id, submitted_at)
    return _parse_json(text, survey_id, submitted_at)


def serialize_responses(records: Sequence[ResponseRecord], fmt: ResponseFormat) -> str:
    """Serialize records to the interchange format; inverse of parse for valid sets."""
    if fmt is ResponseFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for record in records:
            r = record.response
            writer.writerow(
                [
                    r.respondent_id,
                    r.system_id,
                    r.functional.value,
                    r.dysfunctional.value,
                    r.usage.value if r.usage else "",
                    str(r.proxy_weight),
                    r.role.value,
                ]
            )
        return buffer.getvalue()
    items = []
    for record in records:
        r = record.response
        items.append(
            {
                "respondent_id": r.respondent_id,
                "system_id": r.system_id,
                "functional": r.functional.value,
                "dysfunctional": r.dysfunctional.value,
                "usage": r.usage.value if r.usage else None,
                "weight": r.proxy_weight,
                "role": r.role.value,
            }
        )
    return json.dumps(items, indent=2) + "\n"


def _record_to_line(record: ResponseRecord) -> str:
    r = record.response
    payload = {
        "survey_id": record.survey_id,
        "respondent_id": r.respondent_id,
        "system_id": r.system_id,
        "functional": r.functional.value,
        "dysfunctional": r.dysfunctional.value,
        "usage": r.usage.value if r.usage else None,
        "weight": r.proxy_weight,
        "role": r.role.value,
        "submitted_at": record.submitted_at.isoformat() if record.submitted_at else None,
    }
    return json.dumps(payload, separators=(",", ":"))


def _record_from_line(line: str) -> ResponseRecord:
    payload = json.loads(line)
    response = Response(
        respondent_id=payload["respondent_id"],
        system_id=payload["system_id"],
        functional=_FUNCTIONAL_CODES[payload["functional"]],
        dysfunctional=_DYSFUNCTIONAL_CODES[payload["dysfunctional"]],
        usage=_USAGE_CODES[payload["usage"]] if payload.get("usage") else None,
        proxy_weight=payload.get("weight", 1),
        role=_ROLE_CODES[payload.get("role", "self")],
    )
    submitted = payload.get("submitted_at")
    return ResponseRecord(
        survey_id=payload["survey_id"],
        response=response,
        submitted_at=datetime.fromisoformat(submitted) if submitted else None,
    )


def _definition_to_dict(definition: SurveyDefinition) -> dict:
    return {
        "survey_id": definition.survey_id,
        "title": definition.title,
        "wording": definition.wording.value,
        "opens_at": definition.opens_at.isoformat() if definition.opens_at else None,
        "closes_at": definition.closes_at.isoformat() if definition.closes_at else None,
        "systems": [
            {
                "system_id": s.system_id,
                "display_name": s.display_name,
                "business_area": s.business_area,
            }
            for s in definition.systems
        ],
    }


def _definition_from_dict(payload: dict) -> SurveyDefinition:
    return SurveyDefinition(
        survey_id=payload["survey_id"],
        title=payload["title"],
        wording=_ROLE_CODES[payload.get("wording", "self")],
        opens_at=datetime.fromisoformat(payload["opens_at"]) if payload.get("opens_at") else None,
        closes_at=datetime.fromisoformat(payload["closes_at"]) if payload.get("closes_at") else None,
        systems=tuple(
            SystemEntry(
                system_id=s["system_id"],
                display_name=s.get("display_name") or s["system_id"],
                business_area=s.get("business_area"),
            )
            for s in payload.get("systems", [])
        ),
    )


_locks: dict[str, threading.Lock] = {}
_locks_guard = threading.Lock()


def _lock_for(key: str) -> threading.Lock:
    with _locks_guard:
        return _locks.setdefault(key, threading.Lock())


def _safe_id(value: str) -> str:
    if not value or not all(c.isalnum() or c in "._-" for c in value) or value.startswith("."):
        raise InvalidSurveyId(
            f"id {value!r} must be non-empty and use only letters, digits, '.', '_', '-'"
        )
    return value


class ResponseStore:
    """Append-only survey store under a data directory.

    Layout: ``surveys/<id>/definition.json`` + ``surveys/<id>/responses.jsonl``
    and ``runs/<run_id>.json``. Appends are serialized per survey and flushed
    per batch; each record is one line, written atomically.
    """

    def __init__(self, data_dir: str | Path):
        self.data_dir = Path(data_dir)
        try:
            (self.data_dir / "surveys").mkdir(parents=True, exist_ok=True)
            (self.data_dir / "runs").mkdir(parents=True, exist_ok=True)
        except OSError as exc:
            raise StorageUnavailable(f"cannot initialize data directory {data_dir}: {exc}") from exc

    def _survey_dir(self, survey_id: str) -> Path:
        return self.data_dir / "surveys" / _safe_id(survey_id)

    def _lock(self, survey_id: str) -> threading.Lock:
        return _lock_for(str((self._survey_dir(survey_id)).resolve()))

    # -- survey definitions -------------------------------------------------

    def create_survey(self, definition: SurveyDefinition) -> None:
        path = self._survey_dir(definition.survey_id)
        with self._lock(definition.survey_id):
            if (path / "definition.json").exists():
                raise SurveyExists(f"survey {definition.survey_id!r} already exists")
            self._write_definition(path, definition)

    def ensure_survey(self, survey_id: str, system_ids: Iterable[str], title: str | None = None) -> SurveyDefinition:
        """Create a minimal definition, or extend an existing one with new systems."""
        path = self._survey_dir(survey_id)
        with self._lock(survey_id):
            try:
                definition = self._read_definition(survey_id)
            except UnknownSurvey:
                definition = SurveyDefinition(
                    survey_id=survey_id,
                    title=title or survey_id,
                    systems=tuple(
                        SystemEntry(system_id=s, display_name=s) for s in sorted(set(system_ids))
                    ),
                )
                self._write_definition(path, definition)
                return definition
            known = {s.system_id for s in definition.systems}
            missing = sorted(set(system_ids) - known)
            if missing:
                definition = SurveyDefinition(
                    survey_id=definition.survey_id,
                    title=definition.title,
                    systems=definition.systems
                    + tuple(SystemEntry(system_id=s, display_name=s) for s in missing),
                    wording=definition.wording,
                    opens_at=definition.opens_at,
                    closes_at=definition.closes_at,
                )
                self._write_definition(path, definition)
            return definition

    def get_survey(self, survey_id: str) -> SurveyDefinition:
        with self._lock(survey_id):
            return self._read_definition(survey_id)

    def list_surveys(self) -> list[str]:
        try:
            root = self.data_dir / "surveys"
            return sorted(
                p.name for p in root.iterdir() if (p / "definition.json").exists()
            )
        except OSError as exc:
            raise StorageUnavailable(str(exc)) from exc

    def _read_definition(self, survey_id: str) -> SurveyDefinition:
        path = self._survey_dir(survey_id) / "definition.json"
        try:
            text = path.read_text(encoding="utf-8")
        except FileNotFoundError:
            raise UnknownSurvey(f"unknown survey {survey_id!r}") from None
        except OSError as exc:
            raise StorageUnavailable(str(exc)) from exc
        return _definition_from_dict(json.loads(text))

    def _write_definition(self, path: Path, definition: SurveyDefinition) -> None:
        try:
            path.mkdir(parents=True, exist_ok=True)
            tmp = path / "definition.json.tmp"
            tmp.write_text(
                json.dumps(_definition_to_dict(definition), indent=2) + "\n", encoding="utf-8"
            )
            os.replace(tmp, path / "definition.json")
        except OSError as exc:
            raise StorageUnavailable(str(exc)) from exc

    # -- responses -----------------------------------------------------------

    def append_responses(self, survey_id: str, records: Sequence[ResponseRecord]) -> list[ResponseRecord]:
        """Append a batch, rejecting the whole batch if any record duplicates
        an existing (respondent, system) pair. Returns the stored records with
        submission timestamps filled in."""
        with self._lock(survey_id):
            self._read_definition(survey_id)  # raises UnknownSurvey
            existing = {
                (rec.response.respondent_id, rec.response.system_id)
                for rec in self._read_responses(survey_id)
            }
            stamped: list[ResponseRecord] = []
            for record in records:
                key = (record.response.respondent_id, record.response.system_id)
                if key in existing:
                    raise DuplicateResponse(
                        f"respondent {key[0]!r} already answered for system {key[1]!r} "
                        f"in survey {survey_id!r}"
                    )
                existing.add(key)
                stamped.append(
                    ResponseRecord(
                        survey_id=survey_id,
                        response=record.response,
                        submitted_at=record.submitted_at or datetime.now(timezone.utc),
                    )
                )
            path = self._survey_dir(survey_id) / "responses.jsonl"
            try:
                self._drop_torn_tail(path)
                with open(path, "a", encoding="utf-8") as handle:
                    for record in stamped:
                        handle.write(_record_to_line(record) + "\n")
                    handle.flush()
                    os.fsync(handle.fileno())
            except OSError as exc:
                raise StorageUnavailable(str(exc)) from exc
            return stamped

    @staticmethod
    def _drop_torn_tail(path: Path) -> None:
        """Truncate a partial final line left by an interrupted append, so new
        records never concatenate onto it. Readers already skip such a tail."""
        try:
            with open(path, "r+b") as handle:
                data = handle.read()
                if not data or data.endswith(b"\n"):
                    return
                keep = data.rfind(b"\n") + 1
                handle.truncate(keep)
        except FileNotFoundError:
            return

    def load_responses(self, survey_id: str) -> list[ResponseRecord]:
        with self._lock(survey_id):
            self._read_definition(survey_id)
            return self._read_responses(survey_id)

    def _read_responses(self, survey_id: str) -> list[ResponseRecord]:
        path = self._survey_dir(survey_id) / "responses.jsonl"
        if not path.exists():
            return []
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise StorageUnavailable(str(exc)) from exc
        records = []
        for index, line in enumerate(lines):
            if not line.strip():
                continue
            try:
                records.append(_record_from_line(line))
            except (json.JSONDecodeError, KeyError) as exc:
                if index == len(lines) - 1:
                    # Torn final line from an interrupted append: readers see
                    # the consistent prefix.
                    continue
                raise StorageUnavailable(
                    f"corrupt record at {path}:{index + 1}: {exc}"
                ) from exc
        return records

    # -- analysis runs --------------------------------------------------------

    def save_run(self, run_id: str, payload: dict) -> None:
        path = self.data_dir / "runs" / f"{_safe_id(run_id)}.json"
        try:
            tmp = path.with_suffix(".json.tmp")
            tmp.write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")
            os.replace(tmp, path)
        except OSError as exc:
            raise StorageUnavailable(str(exc)) from exc

    def load_run(self, run_id: str) -> dict:
        path = self.data_dir / "runs" / f"{_safe_id(run_id)}.json"
        try:
            return json.loads(path.read_text(encoding="utf-8"))
        except FileNotFoundError:
            raise UnknownRun(f"unknown run {run_id!r}") from None
        except OSError as exc:
            raise StorageUnavailable(str(exc)) from exc

    def list_runs(self) -> list[str]:
        try:
            return sorted(p.stem for p in (self.data_dir / "runs").glob("*.json"))
        except OSError as exc:
            raise StorageUnavailable(str(exc)) from exc
