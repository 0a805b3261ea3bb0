"""Report rendering shared by the CLI and the HTTP service.

The JSON analysis payload built here is the single wire format: the service
returns these exact bytes and the CLI prints them, so the two can never
disagree. Text tables, CSV, and the quadrant SVG are alternative renderings
of the same payload.
"""

from __future__ import annotations

import json
import math
from typing import Optional, Sequence

from .analysis import SweepReport, Thresholds, rank, satisfaction_only_report
from .kano import SatisfactionStatistic, SystemSummary


def _summary_fields(summary: SystemSummary, names: dict[str, str]) -> dict:
    return {
        "system_id": summary.system_id,
        "display_name": names.get(summary.system_id, summary.system_id),
        "respondent_count": summary.respondent_count,
        "usage_respondent_count": summary.usage_respondent_count,
        "total_satisfaction": summary.total_satisfaction,
        "average_satisfaction": summary.average_satisfaction,
        "median_satisfaction": summary.median_satisfaction,
        "total_usage": summary.total_usage,
        "usage_factor": summary.usage_factor,
        "cku": summary.cku,
    }


def analysis_payload(
    survey_id: str,
    summaries: Sequence[SystemSummary],
    thresholds: Thresholds,
    statistic: SatisfactionStatistic,
    display_names: Optional[dict[str, str]] = None,
    title: Optional[str] = None,
) -> dict:
    """The canonical analysis document: ranked verdicts, unrated systems, and
    the satisfaction-only provisional report."""
    names = display_names or {}
    payload: dict = {
        "survey_id": survey_id,
        "title": title,
        "statistic": statistic.value,
        "thresholds": thresholds.as_dict(),
        "ranked": [],
        "unrated": [],
        "initial": [],
    }
    if not summaries:
        return payload
    report = rank(summaries, thresholds)
    for entry in report.ranked:
        row = _summary_fields(entry.summary, names)
        row["priority"] = entry.priority
        row["category"] = entry.category.value
        payload["ranked"].append(row)
    for unrated in report.unrated:
        row = _summary_fields(unrated.summary, names)
        row["note"] = unrated.note
        payload["unrated"].append(row)
    for initial in satisfaction_only_report(summaries, thresholds):
        row = _summary_fields(initial.summary, names)
        del row["total_usage"], row["usage_factor"], row["cku"], row["usage_respondent_count"]
        row["priority"] = initial.priority
        row["conclusion"] = initial.conclusion.value
        payload["initial"].append(row)
    return payload


def sweep_payload(
    survey_id: str, report: SweepReport, display_names: Optional[dict[str, str]] = None
) -> dict:
    names = display_names or {}
    return {
        "survey_id": survey_id,
        "step": report.step,
        "span": report.span,
        "thresholds": report.thresholds.as_dict(),
        "systems": [
            {
                "system_id": entry.system_id,
                "display_name": names.get(entry.system_id, entry.system_id),
                "baseline": entry.baseline.value,
                "outcomes": [v.value for v in entry.outcomes],
                "sensitive": entry.sensitive,
                "triggers": list(entry.triggers),
            }
            for entry in report.entries
        ],
    }


def canonical_json(payload: dict) -> str:
    """The one JSON rendering used on every surface, byte for byte."""
    return json.dumps(payload, indent=2) + "\n"


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.1f}"
    return str(value)


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(cell)) for w, cell in zip(widths, row)]
    lines = [
        "  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return "\n".join(lines)


def render_initial_table(payload: dict) -> str:
    headers = ["System", "Respondents", "Total", "Average", "Median", "Priority", "Conclusion"]
    rows = [
        [
            row["display_name"],
            str(row["respondent_count"]),
            str(row["total_satisfaction"]),
            _fmt(row["average_satisfaction"]),
            _fmt(row["median_satisfaction"]),
            str(row["priority"]),
            row["conclusion"].upper(),
        ]
        for row in payload["initial"]
    ]
    return "Initial satisfaction-only report\n" + _table(headers, rows)


def render_cku_table(payload: dict) -> str:
    headers = ["System", "Average", "Median", "Usage factor", "CKU", "Priority", "Conclusion"]
    rows = [
        [
            row["display_name"],
            _fmt(row["average_satisfaction"]),
            _fmt(row["median_satisfaction"]),
            _fmt(row["usage_factor"]),
            _fmt(row["cku"]),
            str(row["priority"]),
            row["category"].upper(),
        ]
        for row in payload["ranked"]
    ]
    text = "Combined satisfaction x usage report\n" + _table(headers, rows)
    if payload["unrated"]:
        notes = "\n".join(
            f"  {row['display_name']}: UNRATED ({row['note']})" for row in payload["unrated"]
        )
        text += "\n\nUnrated systems\n" + notes
    return text


def render_sweep_table(payload: dict) -> str:
    headers = ["System", "Baseline", "Outcomes", "Sensitive", "Triggered by"]
    rows = [
        [
            row["display_name"],
            row["baseline"].upper(),
            ", ".join(v.upper() for v in row["outcomes"]),
            "yes" if row["sensitive"] else "no",
            ", ".join(row["triggers"]) or "-",
        ]
        for row in payload["systems"]
    ]
    title = (
        f"Threshold sensitivity (each threshold swept ±{payload['span'] * 100:.0f}% "
        f"in steps of {payload['step']})"
    )
    return title + "\n" + _table(headers, rows)


_REPORT_CSV_HEADER = [
    "system_id",
    "display_name",
    "respondent_count",
    "usage_respondent_count",
    "total_satisfaction",
    "average_satisfaction",
    "median_satisfaction",
    "total_usage",
    "usage_factor",
    "cku",
    "priority",
    "category",
    "initial_priority",
    "initial_conclusion",
]


def render_report_csv(payload: dict) -> str:
    """Flat CSV of the ranked systems (unrated rows carry empty usage columns)."""
    initial = {row["system_id"]: row for row in payload["initial"]}
    lines = [",".join(_REPORT_CSV_HEADER)]

    def cell(value) -> str:
        return "" if value is None else str(value)

    for row in payload["ranked"] + payload["unrated"]:
        first = initial.get(row["system_id"], {})
        lines.append(
            ",".join(
                [
                    cell(row["system_id"]),
                    cell(row["display_name"]),
                    cell(row["respondent_count"]),
                    cell(row.get("usage_respondent_count")),
                    cell(row["total_satisfaction"]),
                    cell(row["average_satisfaction"]),
                    cell(row["median_satisfaction"]),
                    cell(row.get("total_usage")),
                    cell(row.get("usage_factor")),
                    cell(row.get("cku")),
                    cell(row.get("priority")),
                    cell(row.get("category", "unrated")),
                    cell(first.get("priority")),
                    cell(first.get("conclusion")),
                ]
            )
        )
    return "\n".join(lines) + "\n"


_CATEGORY_COLORS = {
    "retain": "#2e7d32",
    "review": "#f9a825",
    "remove": "#c62828",
    "research": "#1565c0",
}

_X_MIN, _X_MAX = 1.0, 4.0
_Y_MIN, _Y_MAX = 1.0, 9.0


def quadrant_svg(payload: dict, width: int = 720, height: int = 520) -> str:
    """Scatter of usage factor (x) against average satisfaction (y).

    Threshold lines split the plane into the four labeled verdict regions;
    point area scales with respondent count and color carries the actual
    combined-score classification, which can disagree with the region - that
    disagreement is exactly what the plot is for.
    """
    margin_left, margin_right, margin_top, margin_bottom = 70, 30, 50, 70
    plot_w = width - margin_left - margin_right
    plot_h = height - margin_top - margin_bottom

    def x_px(uf: float) -> float:
        return margin_left + (uf - _X_MIN) / (_X_MAX - _X_MIN) * plot_w

    def y_px(sat: float) -> float:
        return margin_top + (1 - (sat - _Y_MIN) / (_Y_MAX - _Y_MIN)) * plot_h

    thresholds = payload["thresholds"]
    x_split = x_px(thresholds["research_usage_max"])
    y_split = y_px(thresholds["research_satisfaction_min"])

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width / 2:.1f}" y="24" text-anchor="middle" font-size="16" class="chart-title">'
        f"Satisfaction / usage quadrant - {_esc(payload['title'] or payload['survey_id'])}</text>",
    ]

    # Region tint + labels: research (low usage, high satisfaction), retain,
    # remove, review.
    regions = [
        ("Research", margin_left, margin_top, x_split - margin_left, y_split - margin_top, "#e3f2fd"),
        ("Retain", x_split, margin_top, margin_left + plot_w - x_split, y_split - margin_top, "#e8f5e9"),
        ("Remove", margin_left, y_split, x_split - margin_left, margin_top + plot_h - y_split, "#ffebee"),
        ("Review", x_split, y_split, margin_left + plot_w - x_split, margin_top + plot_h - y_split, "#fff8e1"),
    ]
    for name, rx, ry, rw, rh, fill in regions:
        parts.append(
            f'<rect x="{rx:.1f}" y="{ry:.1f}" width="{rw:.1f}" height="{rh:.1f}" fill="{fill}"/>'
        )
        parts.append(
            f'<text class="region-label" x="{rx + rw / 2:.1f}" y="{ry + 16:.1f}" '
            f'text-anchor="middle" font-size="13" fill="#555">{name}</text>'
        )

    # Threshold lines and axes.
    parts.append(
        f'<line x1="{x_split:.1f}" y1="{margin_top}" x2="{x_split:.1f}" '
        f'y2="{margin_top + plot_h}" stroke="#888" stroke-dasharray="6,4"/>'
    )
    parts.append(
        f'<line x1="{margin_left}" y1="{y_split:.1f}" x2="{margin_left + plot_w}" '
        f'y2="{y_split:.1f}" stroke="#888" stroke-dasharray="6,4"/>'
    )
    parts.append(
        f'<rect x="{margin_left}" y="{margin_top}" width="{plot_w}" height="{plot_h}" '
        f'fill="none" stroke="#333"/>'
    )
    for tick in range(int(_X_MIN), int(_X_MAX) + 1):
        parts.append(
            f'<text x="{x_px(tick):.1f}" y="{margin_top + plot_h + 20}" text-anchor="middle" '
            f'font-size="11">{tick}</text>'
        )
    for tick in range(int(_Y_MIN), int(_Y_MAX) + 1):
        parts.append(
            f'<text x="{margin_left - 10}" y="{y_px(tick) + 4:.1f}" text-anchor="end" '
            f'font-size="11">{tick}</text>'
        )
    parts.append(
        f'<text x="{margin_left + plot_w / 2:.1f}" y="{height - 26}" text-anchor="middle" '
        f'font-size="13">Usage factor</text>'
    )
    parts.append(
        f'<text x="20" y="{margin_top + plot_h / 2:.1f}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 20 {margin_top + plot_h / 2:.1f})">Average satisfaction</text>'
    )

    for row in payload["ranked"]:
        radius = max(4.0, min(28.0, 5.0 * math.sqrt(row["respondent_count"])))
        color = _CATEGORY_COLORS[row["category"]]
        label = (
            f"{row['display_name']}: satisfaction {row['average_satisfaction']}, "
            f"usage factor {row['usage_factor']}, combined {row['cku']} "
            f"({row['category'].upper()}, priority {row['priority']})"
        )
        parts.append(
            f'<circle class="datapoint" cx="{x_px(row["usage_factor"]):.1f}" '
            f'cy="{y_px(row["average_satisfaction"]):.1f}" r="{radius:.1f}" fill="{color}" '
            f'fill-opacity="0.75" stroke="#222"><title>{_esc(label)}</title></circle>'
        )

    legend_x = margin_left
    for i, (category, color) in enumerate(_CATEGORY_COLORS.items()):
        x = legend_x + i * 110
        parts.append(
            f'<rect x="{x}" y="{height - 18}" width="12" height="12" fill="{color}" '
            f'fill-opacity="0.75"/>'
        )
        parts.append(
            f'<text x="{x + 18}" y="{height - 8}" font-size="11">{category.upper()}</text>'
        )
    if payload["unrated"]:
        parts.append(
            f'<text x="{width - margin_right}" y="{height - 8}" text-anchor="end" font-size="11" '
            f'fill="#777">{len(payload["unrated"])} unrated system(s) not plotted</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _esc(text: str) -> str:
    return (
        text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")
    )
