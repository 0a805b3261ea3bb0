"""HTTP API for survey collection, on-demand analysis, and run lifecycle.

Analysis is derived, never stored: every analysis response is recomputed from
the response log, so deleting a cached body and asking again yields identical
bytes. Submitting responses is the only respondent-facing write; freezing and
advancing runs is the stakeholder-facing write path.
"""

from __future__ import annotations

import os
import uuid
from datetime import datetime, timezone
from typing import Optional

from fastapi import Depends, FastAPI, Query, Request, Response
from fastapi.exceptions import HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import report
from .analysis import InvalidThresholds, Thresholds, sensitivity_sweep
from .config import DATA_DIR_ENV, TOKEN_ENV, resolve_data_dir
from .ingest import (
    DuplicateResponse,
    InvalidSurveyId,
    RejectedRow,
    ResponseRecord,
    ResponseStore,
    StorageUnavailable,
    SurveyDefinition,
    SurveyExists,
    SystemEntry,
    UnknownRun,
    UnknownSurvey,
    question_set,
    _build_response,
)
from .kano import Role, SatisfactionStatistic, summarize_responses
from .runs import AnalysisRun, Decision, DecisionNote, IllegalTransition, RunStage


class SystemIn(BaseModel):
    system_id: str
    display_name: Optional[str] = None
    business_area: Optional[str] = None


class SurveyIn(BaseModel):
    survey_id: Optional[str] = None
    title: str
    systems: list[SystemIn] = Field(min_length=1)
    wording: str = "self"
    opens_at: Optional[datetime] = None
    closes_at: Optional[datetime] = None


class AnswerIn(BaseModel):
    system_id: str
    functional: str
    dysfunctional: str
    usage: Optional[str] = None
    weight: int = 1
    role: str = "self"


class SubmissionIn(BaseModel):
    respondent_id: str
    answers: list[AnswerIn] = Field(min_length=1)


class DecisionIn(BaseModel):
    note: Optional[str] = None
    decision: Optional[str] = None


class RunIn(BaseModel):
    survey_id: str
    statistic: str = "average"
    thresholds: Optional[dict] = None


class RunPatch(BaseModel):
    stage: Optional[str] = None
    decisions: Optional[dict[str, DecisionIn]] = None


def _statistic(code: str) -> SatisfactionStatistic:
    try:
        return SatisfactionStatistic(code)
    except ValueError:
        raise HTTPException(422, detail=f"statistic must be 'average' or 'median', got {code!r}")


def _thresholds_from_query(
    research_satisfaction_min: Optional[float] = Query(None),
    research_usage_max: Optional[float] = Query(None),
    cku_retain_min: Optional[float] = Query(None),
    cku_remove_max: Optional[float] = Query(None),
    min_cohort_for_research: Optional[int] = Query(None),
    satisfaction_retain_min: Optional[float] = Query(None),
    satisfaction_remove_max: Optional[float] = Query(None),
) -> Thresholds:
    overrides = {
        "research_satisfaction_min": research_satisfaction_min,
        "research_usage_max": research_usage_max,
        "cku_retain_min": cku_retain_min,
        "cku_remove_max": cku_remove_max,
        "min_cohort_for_research": min_cohort_for_research,
        "satisfaction_retain_min": satisfaction_retain_min,
        "satisfaction_remove_max": satisfaction_remove_max,
    }
    try:
        return Thresholds.from_mapping({k: v for k, v in overrides.items() if v is not None})
    except InvalidThresholds as exc:
        raise HTTPException(422, detail=str(exc))


def create_app(data_dir: Optional[str] = None, token: Optional[str] = None) -> FastAPI:
    """Build the application around one response store.

    ``token``, or the RATIONALIZER_TOKEN environment variable, switches on
    shared bearer-token auth for everything except the API description.
    """
    store = ResponseStore(data_dir or os.environ.get(DATA_DIR_ENV) or resolve_data_dir())
    required_token = token if token is not None else os.environ.get(TOKEN_ENV)

    app = FastAPI(title="rationalizer", version="0.1.0", openapi_url="/openapi")
    app.state.store = store
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.middleware("http")
    async def check_token(request: Request, call_next):
        if required_token and request.url.path != "/openapi" and request.method != "OPTIONS":
            header = request.headers.get("authorization", "")
            if header != f"Bearer {required_token}":
                return JSONResponse({"detail": "missing or invalid bearer token"}, status_code=401)
        return await call_next(request)

    @app.exception_handler(StorageUnavailable)
    async def storage_unavailable(_request: Request, exc: StorageUnavailable):
        return JSONResponse({"detail": str(exc)}, status_code=503)

    @app.exception_handler(UnknownSurvey)
    async def unknown_survey(_request: Request, exc: UnknownSurvey):
        return JSONResponse({"detail": str(exc)}, status_code=404)

    @app.exception_handler(UnknownRun)
    async def unknown_run(_request: Request, exc: UnknownRun):
        return JSONResponse({"detail": str(exc)}, status_code=404)

    # -- surveys -------------------------------------------------------------

    @app.post("/surveys", status_code=201)
    def create_survey(body: SurveyIn):
        try:
            wording = Role(body.wording)
        except ValueError:
            raise HTTPException(422, detail=f"wording must be 'self' or 'proxy', got {body.wording!r}")
        survey_id = body.survey_id or uuid.uuid4().hex[:12]
        try:
            definition = SurveyDefinition(
                survey_id=survey_id,
                title=body.title,
                systems=tuple(
                    SystemEntry(
                        system_id=s.system_id,
                        display_name=s.display_name or s.system_id,
                        business_area=s.business_area,
                    )
                    for s in body.systems
                ),
                wording=wording,
                opens_at=body.opens_at,
                closes_at=body.closes_at,
            )
            store.create_survey(definition)
        except SurveyExists as exc:
            raise HTTPException(409, detail=str(exc))
        except (InvalidSurveyId, ValueError) as exc:
            raise HTTPException(422, detail=str(exc))
        return {"survey_id": survey_id}

    @app.get("/surveys/{survey_id}")
    def get_survey(survey_id: str):
        definition = store.get_survey(survey_id)
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
            "questions": question_set(definition.wording),
        }

    # -- responses -----------------------------------------------------------

    @app.post("/surveys/{survey_id}/responses", status_code=201)
    def submit_responses(survey_id: str, body: SubmissionIn):
        definition = store.get_survey(survey_id)
        now = datetime.now(timezone.utc)
        if definition.opens_at and now < definition.opens_at:
            raise HTTPException(409, detail="survey has not opened yet")
        if definition.closes_at and now > definition.closes_at:
            raise HTTPException(409, detail="survey is closed")
        known = {s.system_id for s in definition.systems}
        records = []
        for index, answer in enumerate(body.answers, start=1):
            if answer.system_id not in known:
                raise HTTPException(
                    422, detail=f"answer {index}: unknown system {answer.system_id!r}"
                )
            built = _build_response(
                index,
                body.respondent_id,
                answer.system_id,
                answer.functional,
                answer.dysfunctional,
                answer.usage or "",
                str(answer.weight),
                answer.role,
            )
            if isinstance(built, RejectedRow):
                raise HTTPException(422, detail=f"answer {index}: {built.detail}")
            records.append(ResponseRecord(survey_id=survey_id, response=built, submitted_at=now))
        try:
            stored = store.append_responses(survey_id, records)
        except DuplicateResponse as exc:
            raise HTTPException(409, detail=str(exc))
        return {"accepted": len(stored)}

    # -- analysis ------------------------------------------------------------

    def _analysis_payload(survey_id: str, thresholds: Thresholds, statistic: SatisfactionStatistic):
        definition = store.get_survey(survey_id)
        responses = [record.response for record in store.load_responses(survey_id)]
        summaries = summarize_responses(responses, statistic)
        return report.analysis_payload(
            survey_id,
            summaries,
            thresholds,
            statistic,
            display_names=definition.display_names(),
            title=definition.title,
        )

    @app.get("/surveys/{survey_id}/analysis")
    def get_analysis(
        survey_id: str,
        statistic: str = "average",
        thresholds: Thresholds = Depends(_thresholds_from_query),
    ):
        payload = _analysis_payload(survey_id, thresholds, _statistic(statistic))
        return Response(content=report.canonical_json(payload), media_type="application/json")

    @app.get("/surveys/{survey_id}/analysis/sensitivity")
    def get_sensitivity(
        survey_id: str,
        step: float = 0.5,
        statistic: str = "average",
        thresholds: Thresholds = Depends(_thresholds_from_query),
    ):
        definition = store.get_survey(survey_id)
        responses = [record.response for record in store.load_responses(survey_id)]
        summaries = summarize_responses(responses, _statistic(statistic))
        if not summaries:
            payload = {
                "survey_id": survey_id,
                "step": step,
                "span": 0.2,
                "thresholds": thresholds.as_dict(),
                "systems": [],
            }
        else:
            try:
                sweep = sensitivity_sweep(summaries, thresholds, step)
            except ValueError as exc:
                raise HTTPException(422, detail=str(exc))
            payload = report.sweep_payload(survey_id, sweep, definition.display_names())
        return Response(content=report.canonical_json(payload), media_type="application/json")

    # -- analysis runs ---------------------------------------------------------

    @app.post("/runs", status_code=201)
    def create_run(body: RunIn):
        statistic = _statistic(body.statistic)
        try:
            thresholds = Thresholds.from_mapping(body.thresholds or {})
        except InvalidThresholds as exc:
            raise HTTPException(422, detail=str(exc))
        snapshot = _analysis_payload(body.survey_id, thresholds, statistic)
        run = AnalysisRun(
            run_id=uuid.uuid4().hex[:12],
            survey_id=body.survey_id,
            thresholds=thresholds,
            statistic=statistic,
            created_at=datetime.now(timezone.utc),
            stage=RunStage.COLLECTING,
            report=snapshot,
        )
        store.save_run(run.run_id, run.to_dict())
        return run.to_dict()

    @app.get("/runs/{run_id}")
    def get_run(run_id: str):
        return store.load_run(run_id)

    @app.patch("/runs/{run_id}")
    def patch_run(run_id: str, body: RunPatch):
        run = AnalysisRun.from_dict(store.load_run(run_id))
        if body.stage is not None:
            try:
                new_stage = RunStage(body.stage)
            except ValueError:
                raise HTTPException(422, detail=f"unknown stage {body.stage!r}")
            try:
                run = run.advance(new_stage)
            except IllegalTransition as exc:
                raise HTTPException(409, detail=str(exc))
        if body.decisions:
            known = {row["system_id"] for row in run.report.get("ranked", [])} | {
                row["system_id"] for row in run.report.get("unrated", [])
            }
            for system_id, decision in body.decisions.items():
                if system_id not in known:
                    raise HTTPException(
                        422, detail=f"system {system_id!r} is not part of run {run_id!r}"
                    )
                parsed: Optional[Decision] = None
                if decision.decision is not None:
                    try:
                        parsed = Decision(decision.decision)
                    except ValueError:
                        raise HTTPException(
                            422,
                            detail=f"decision must be keep/decommission/defer, got {decision.decision!r}",
                        )
                run = run.with_decision(system_id, DecisionNote(note=decision.note, decision=parsed))
        store.save_run(run_id, run.to_dict())
        return run.to_dict()

    return app


def app() -> FastAPI:
    """Factory for ``uvicorn rationalizer.service:app --factory``."""
    return create_app()
