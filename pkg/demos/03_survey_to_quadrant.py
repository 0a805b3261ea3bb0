"""
From raw survey submissions to a decision quadrant
==================================================

The operational path: open a survey, collect answers into the append-only
response log, recompute the analysis from the log, freeze a run for the
decision meeting, and draw the satisfaction/usage quadrant as an SVG.

Everything is written under a temporary directory; the script prints where.
"""

import tempfile
from datetime import datetime, timezone
from pathlib import Path
from uuid import uuid4

from rationalizer import (
    AnalysisRun,
    Decision,
    DecisionNote,
    ResponseFormat,
    ResponseStore,
    RunStage,
    SatisfactionStatistic,
    SurveyDefinition,
    SystemEntry,
    Thresholds,
    analysis_payload,
    parse_responses,
    quadrant_svg,
    question_set,
    summarize_responses,
)

workdir = Path(tempfile.mkdtemp(prefix="rationalizer-demo-"))
store = ResponseStore(workdir)

# 1. Define the survey: which systems are under scrutiny, and whether people
#    answer for themselves or managers answer for their teams.
definition = SurveyDefinition(
    survey_id="phone-apps",
    title="Phone apps estate review",
    systems=(
        SystemEntry("browser", "Browser"),
        SystemEntry("camera", "Camera"),
        SystemEntry("map", "Map"),
        SystemEntry("social-media", "Social media"),
        SystemEntry("taxi", "Taxi"),
        SystemEntry("tc", "Train company"),
    ),
)
store.create_survey(definition)

# The wording each client must show, straight from the definition:
questions = question_set(definition.wording)
print("Q1:", questions["functional"]["text"].format(system="Camera"))
for label in questions["functional"]["options"].values():
    print("   -", label)

# 2. Answers arrive in batches (e.g. one CSV export per team) and are
#    appended to a per-survey log. Appends are all-or-nothing per batch.
BATCH = """\
respondent_id,system_id,functional,dysfunctional,usage,weight,role
r1,camera,LIKE,CANNOT_WORK,L,1,self
r2,camera,EXPECT,PREFER_NOT,L,1,self
r3,camera,EXPECT,CANNOT_WORK,L,1,self
r1,browser,EXPECT,CANNOT_WORK,L,1,self
r2,browser,LIKE,CANNOT_WORK,L,1,self
r3,browser,EXPECT,PREFER_NOT,L,1,self
r1,taxi,LIKE,CAN_MANAGE,O,1,self
r2,taxi,NEUTRAL,CAN_MANAGE,O,1,self
r3,taxi,LIKE,CAN_MANAGE,O,1,self
"""
records, rejected = parse_responses(BATCH, ResponseFormat.CSV, "phone-apps")
store.append_responses("phone-apps", records)
print(f"\nstored {len(records)} answers, {len(rejected)} rejected")

# 3. Analysis is never stored — it is recomputed from the log on demand, so
#    a restart or a second reader always sees the same numbers.
loaded = store.load_responses("phone-apps")
summaries = summarize_responses([r.response for r in loaded])
payload = analysis_payload(
    "phone-apps",
    summaries,
    Thresholds(),
    SatisfactionStatistic.AVERAGE,
    display_names=definition.display_names(),
    title=definition.title,
)
for row in payload["ranked"]:
    print(f"  {row['priority']}. {row['display_name']:<12} CKU {row['cku']:>5}"
          f"  -> {row['category']}")

# 4. For the decision meeting, freeze the report with its thresholds into a
#    run. The snapshot keeps its numbers even as new answers keep arriving.
run = AnalysisRun(
    run_id=uuid4().hex[:12],
    survey_id="phone-apps",
    thresholds=Thresholds(),
    statistic=SatisfactionStatistic.AVERAGE,
    created_at=datetime.now(timezone.utc),
    report=payload,
)
run = run.advance(RunStage.SCORED).advance(RunStage.CLASSIFIED)
run = run.advance(RunStage.UNDER_INVESTIGATION)
run = run.with_decision("taxi", DecisionNote("cheaper to expense rides ad hoc",
                                             Decision.DECOMMISSION))
run = run.advance(RunStage.DECIDED)
store.save_run(run.run_id, run.to_dict())
print(f"\nrun {run.run_id} is {run.stage.value};"
      f" taxi -> {run.decisions['taxi'].decision.value}")

# 5. Finally, the quadrant: usage factor across, satisfaction up, one dot
#    per system, sized by cohort. Open it in a browser to hover the dots.
svg_path = workdir / "quadrant.svg"
svg_path.write_text(quadrant_svg(payload), encoding="utf-8")
print(f"\nwrote {svg_path}")
print(f"survey data lives in {workdir}/surveys/phone-apps/")
