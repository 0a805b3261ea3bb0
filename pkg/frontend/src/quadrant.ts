/**
 * Satisfaction/usage quadrant, drawn client-side from server numbers only.
 *
 * Axis positions are linear mappings of the server-provided usage factor
 * (x, range 1..4) and satisfaction score (y, range 1..9); the dashed lines
 * are the server-reported research thresholds. Nothing here recomputes a
 * score — this module is pure presentation.
 */

import type { AnalysisPayload, FourR, RankedRow } from "./types.js";

export const CATEGORY_COLORS: Record<FourR, string> = {
  retain: "#2e7d32",
  review: "#f9a825",
  remove: "#c62828",
  research: "#1565c0",
};

const WIDTH = 720;
const HEIGHT = 520;
const MARGIN = { left: 70, right: 30, top: 50, bottom: 70 };
const X_RANGE = { min: 1, max: 4 }; // usage factor
const Y_RANGE = { min: 1, max: 9 }; // satisfaction score

const SVG_NS = "http://www.w3.org/2000/svg";

function xPos(usageFactor: number): number {
  const plot = WIDTH - MARGIN.left - MARGIN.right;
  return (
    MARGIN.left + ((usageFactor - X_RANGE.min) / (X_RANGE.max - X_RANGE.min)) * plot
  );
}

function yPos(satisfaction: number): number {
  const plot = HEIGHT - MARGIN.top - MARGIN.bottom;
  return (
    HEIGHT -
    MARGIN.bottom -
    ((satisfaction - Y_RANGE.min) / (Y_RANGE.max - Y_RANGE.min)) * plot
  );
}

function radius(respondentCount: number): number {
  return Math.max(4, Math.min(28, 5 * Math.sqrt(respondentCount)));
}

function shown(row: RankedRow, statistic: "average" | "median"): number {
  return statistic === "median" ? row.median_satisfaction : row.average_satisfaction;
}

export function renderQuadrant(payload: AnalysisPayload, doc: Document = document): SVGSVGElement {
  const svg = doc.createElementNS(SVG_NS, "svg") as SVGSVGElement;
  svg.setAttribute("viewBox", `0 0 ${WIDTH} ${HEIGHT}`);
  svg.setAttribute("width", String(WIDTH));
  svg.setAttribute("height", String(HEIGHT));
  svg.setAttribute("role", "img");

  const make = (tag: string, attrs: Record<string, string>, text?: string) => {
    const node = doc.createElementNS(SVG_NS, tag);
    for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
    if (text !== undefined) node.textContent = text;
    return node;
  };

  // Frame
  svg.append(
    make("rect", {
      x: String(MARGIN.left),
      y: String(MARGIN.top),
      width: String(WIDTH - MARGIN.left - MARGIN.right),
      height: String(HEIGHT - MARGIN.top - MARGIN.bottom),
      fill: "none",
      stroke: "#777",
    }),
  );

  // Research boundaries as dashed lines, straight from the payload.
  const { research_usage_max, research_satisfaction_min } = payload.thresholds;
  svg.append(
    make("line", {
      x1: String(xPos(research_usage_max)),
      x2: String(xPos(research_usage_max)),
      y1: String(MARGIN.top),
      y2: String(HEIGHT - MARGIN.bottom),
      stroke: "#999",
      "stroke-dasharray": "6 4",
    }),
    make("line", {
      x1: String(MARGIN.left),
      x2: String(WIDTH - MARGIN.right),
      y1: String(yPos(research_satisfaction_min)),
      y2: String(yPos(research_satisfaction_min)),
      stroke: "#999",
      "stroke-dasharray": "6 4",
    }),
  );

  // Region labels in the four corners of the frame.
  const labels: Array<[string, number, number, string]> = [
    ["Research", MARGIN.left + 12, MARGIN.top + 20, "start"],
    ["Retain", WIDTH - MARGIN.right - 12, MARGIN.top + 20, "end"],
    ["Remove", MARGIN.left + 12, HEIGHT - MARGIN.bottom - 10, "start"],
    ["Review", WIDTH - MARGIN.right - 12, HEIGHT - MARGIN.bottom - 10, "end"],
  ];
  for (const [text, x, y, anchor] of labels) {
    svg.append(
      make(
        "text",
        {
          class: "region-label",
          x: String(x),
          y: String(y),
          "text-anchor": anchor,
          fill: "#555",
        },
        text,
      ),
    );
  }

  // Axis captions.
  svg.append(
    make(
      "text",
      { x: String(WIDTH / 2), y: String(HEIGHT - 20), "text-anchor": "middle" },
      "Usage factor",
    ),
    make(
      "text",
      {
        x: "20",
        y: String(HEIGHT / 2),
        "text-anchor": "middle",
        transform: `rotate(-90 20 ${HEIGHT / 2})`,
      },
      "Satisfaction score",
    ),
  );

  // One dot per rated system, sized by cohort, colored by verdict.
  for (const row of payload.ranked) {
    const y = shown(row, payload.statistic);
    const circle = make("circle", {
      class: "datapoint",
      "data-system": row.system_id,
      cx: xPos(row.usage_factor).toFixed(1),
      cy: yPos(y).toFixed(1),
      r: radius(row.respondent_count).toFixed(1),
      fill: CATEGORY_COLORS[row.category],
      "fill-opacity": "0.85",
    });
    const title = doc.createElementNS(SVG_NS, "title");
    title.textContent =
      `${row.display_name}: satisfaction ${y.toFixed(1)}, ` +
      `usage factor ${row.usage_factor.toFixed(1)}, ` +
      `combined ${row.cku.toFixed(1)} (${row.category.toUpperCase()}, ` +
      `priority ${row.priority})`;
    circle.append(title);
    svg.append(circle);
  }

  return svg;
}
