"""
Classifying an estate and stress-testing the thresholds
=======================================================

Ranks a six-system estate into the four verdicts (retain / review /
remove / research), then sweeps every decision threshold +/-20% to see
which verdicts survive reasonable disagreement about where the bars sit.
"""

from rationalizer import (
    ResponseFormat,
    SatisfactionStatistic,
    Thresholds,
    analysis_payload,
    auto_calibrate,
    parse_responses,
    rank,
    sensitivity_sweep,
    summarize_responses,
)
from rationalizer.report import render_cku_table, render_initial_table, render_sweep_table, sweep_payload

# A phone's worth of apps, answered by three to five people each.
# Columns: who, which system, the two feelings questions, usage, weight, role.
SURVEY_CSV = """\
respondent_id,system_id,functional,dysfunctional,usage,weight,role
r1,camera,LIKE,CANNOT_WORK,L,1,self
r2,camera,EXPECT,PREFER_NOT,L,1,self
r3,camera,EXPECT,CANNOT_WORK,L,1,self
r4,camera,NEUTRAL,CANNOT_WORK,S,1,self
r5,camera,LIKE,PREFER_NOT,S,1,self
r1,social-media,DISLIKE,DONT_NEED,O,1,self
r2,social-media,NEUTRAL,DONT_NEED,N,1,self
r3,social-media,DISLIKE,CAN_MANAGE,N,1,self
r1,map,LIKE,CANNOT_WORK,L,1,self
r2,map,NEUTRAL,CANNOT_WORK,S,1,self
r3,map,NEUTRAL,PREFER_NOT,S,1,self
r4,map,NEUTRAL,CAN_MANAGE,S,1,self
r5,map,LIKE,CAN_MANAGE,S,1,self
r1,taxi,LIKE,CAN_MANAGE,O,1,self
r2,taxi,NEUTRAL,CAN_MANAGE,O,1,self
r3,taxi,LIKE,CAN_MANAGE,O,1,self
r1,tc,EXPECT,CANNOT_WORK,S,1,self
r2,tc,NEUTRAL,CAN_MANAGE,O,1,self
r3,tc,LIKE,CAN_MANAGE,N,1,self
r4,tc,EXPECT,DONT_NEED,N,1,self
r1,browser,EXPECT,CANNOT_WORK,L,1,self
r2,browser,LIKE,CANNOT_WORK,L,1,self
r3,browser,EXPECT,PREFER_NOT,L,1,self
r4,browser,NEUTRAL,CANNOT_WORK,L,1,self
r5,browser,EXPECT,CANNOT_WORK,L,1,self
"""

records, rejected = parse_responses(SURVEY_CSV, ResponseFormat.CSV, "phone-apps")
assert not rejected
summaries = summarize_responses([r.response for r in records])

# Before usage answers are considered, satisfaction alone gives a first cut:
# average >= 7.5 retain, <= 3.0 remove, anything between goes on review.
thresholds = Thresholds()
payload = analysis_payload("phone-apps", summaries, thresholds,
                           SatisfactionStatistic.AVERAGE)
print(render_initial_table(payload))

# Folding in the usage factor reshuffles the middle of the table. Note tc:
# satisfaction said "review", but hardly anyone uses it, so the combined
# score (4.0 x 1.8 = 7.2) drops it below the removal bar.
print()
print(render_cku_table(payload))

# The verdict bands are configuration, not constants. rank() is the level
# below the payload: it returns the classified systems as objects.
report = rank(summaries, thresholds)
strongest = report.ranked[0]
print(f"\nTop of the list: {strongest.summary.system_id}"
      f" (CKU {strongest.summary.cku}, {strongest.category.value})")

# How robust are these verdicts? Nudge each threshold up and down by up to
# 20% and record every verdict a system can receive. A system whose verdict
# never moves is safe; one that flips deserves a human look before anything
# is decommissioned.
sweep = sensitivity_sweep(summaries, thresholds, step=0.5)
print()
print(render_sweep_table(sweep_payload("phone-apps", sweep)))

flagged = [e.system_id for e in sweep.entries if e.sensitive]
print(f"\nSensitive under a +/-{sweep.span:.0%} sweep: {', '.join(flagged) or 'none'}")

# Or let the data place the bands: combined-score percentiles 33/67 split
# the estate into thirds. On this estate that pulls the retain bar under
# map's 19.2 and the removal bar under tc's 7.2.
calibrated = auto_calibrate(summaries, thresholds)
print(f"\nAuto-calibrated bands: remove <= {calibrated.cku_remove_max},"
      f" retain >= {calibrated.cku_retain_min}")
for entry in rank(summaries, calibrated).ranked:
    print(f"  {entry.summary.system_id:<14} {entry.summary.cku:>5}  {entry.category.value}")
