"""
Scoring one system, step by step
================================

A walkthrough of how a handful of survey answers about a single system
turn into a category of satisfaction, a points total, and finally a
combined satisfaction-times-usage score.
"""

from rationalizer import (
    DysfunctionalAnswer,
    FunctionalAnswer,
    Response,
    Role,
    UsageCategory,
    categorize,
    satisfaction_points,
    summarize_system,
    usage_points,
)

# Every respondent answers two questions about the system:
#   functional    "How do you feel about it now?"
#   dysfunctional "How would you feel if you did NOT have it?"
# The pair of answers lands in one of four categories of satisfaction.
pair = (FunctionalAnswer.EXPECT_IT, DysfunctionalAnswer.COULD_NOT_WORK_EFFECTIVELY)
category = categorize(*pair)
print(f"{pair[0].name} x {pair[1].name} -> {category.name}"
      f" ({satisfaction_points(category)} points)")

# The full grid: 16 answer pairs, four categories, points 9/6/3/1.
print("\nThe answer grid (satisfaction points in brackets):")
header = " " * 14 + "".join(f"{d.value:>14}" for d in DysfunctionalAnswer)
print(header)
for functional in FunctionalAnswer:
    cells = []
    for dysfunctional in DysfunctionalAnswer:
        c = categorize(functional, dysfunctional)
        cells.append(f"{c.name[0]} [{satisfaction_points(c)}]".rjust(14))
    print(f"{functional.value:<14}" + "".join(cells))

# Note the bottom row: someone who dislikes a system is indifferent to its
# absence no matter what they say about losing it — disliked systems can
# never accumulate satisfaction points.

# A third question asks how often they use it; L/S/O/N earn 4/3/2/1 points.
print("\nUsage points:", {u.name: usage_points(u) for u in UsageCategory})

# Now a small cohort for one system. The manager answering for their team of
# five counts as five identical self-reports (proxy_weight=5).
cohort = [
    Response("dev-1", "wiki", FunctionalAnswer.LIKE_IT,
             DysfunctionalAnswer.COULD_NOT_WORK_EFFECTIVELY, UsageCategory.LOT),
    Response("dev-2", "wiki", FunctionalAnswer.EXPECT_IT,
             DysfunctionalAnswer.PREFER_NOT_TO_BE_WITHOUT, UsageCategory.SOMEWHAT),
    Response("dev-3", "wiki", FunctionalAnswer.NEITHER_LIKE_NOR_DISLIKE,
             DysfunctionalAnswer.CAN_MANAGE_WITHOUT, UsageCategory.OCCASIONALLY),
    Response("support-lead", "wiki", FunctionalAnswer.EXPECT_IT,
             DysfunctionalAnswer.COULD_NOT_WORK_EFFECTIVELY, UsageCategory.LOT,
             proxy_weight=5, role=Role.MANAGER_PROXY),
]

summary = summarize_system("wiki", cohort)

# Totals are weighted sums; the average and the usage factor are each rounded
# half-up to one decimal BEFORE they are multiplied into the combined score.
print(f"\nwiki, {summary.respondent_count} weighted respondents")
print(f"  total satisfaction   {summary.total_satisfaction}")
print(f"  average satisfaction {summary.average_satisfaction}")
print(f"  median satisfaction  {summary.median_satisfaction}")
print(f"  total usage          {summary.total_usage}")
print(f"  usage factor         {summary.usage_factor}")
print(f"  combined (CKU)       {summary.cku}"
      f"  = {summary.average_satisfaction} x {summary.usage_factor}, rounded")
