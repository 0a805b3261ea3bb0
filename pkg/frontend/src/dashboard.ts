/**
 * Stakeholder dashboard: the ranked verdict table and quadrant for a survey,
 * live threshold controls for what-if reclassification, and the decision-run
 * workflow (freeze, advance stages, attach per-system decisions).
 *
 * What-if controls only change the query sent to the server; every verdict
 * shown is the server's answer, and nothing persists until a run is frozen.
 */

import { ApiClient, ApiError, type AnalysisQuery } from "./api.js";
import { renderQuadrant } from "./quadrant.js";
import type {
  AnalysisPayload,
  DecisionValue,
  RankedRow,
  RunRecord,
  RunStage,
  Statistic,
  ThresholdOverrides,
  UnratedRow,
} from "./types.js";

export interface DashboardController {
  element: HTMLElement;
  /** GET analysis with the current control values and re-render. */
  refresh(): Promise<AnalysisPayload>;
  /** Freeze the current view (controls included) as an immutable run. */
  freeze(): Promise<RunRecord>;
  /** Load a stored run and render its frozen report. */
  loadRun(runId: string): Promise<RunRecord>;
  /** Advance the loaded run one stage (or reopen a decided one). */
  advanceRun(stage: RunStage): Promise<RunRecord>;
  /** Attach a decision note to one system of the loaded run. */
  recordDecision(
    systemId: string,
    note: string | null,
    decision: DecisionValue | null,
  ): Promise<RunRecord>;
  /** The query the controls currently describe (exposed for tests). */
  currentQuery(): AnalysisQuery;
}

const SLIDER_CONTROLS: Array<{
  key: keyof ThresholdOverrides;
  label: string;
  min: string;
  max: string;
}> = [
  { key: "cku_retain_min", label: "Retain when combined score ≥", min: "1", max: "36" },
  { key: "cku_remove_max", label: "Remove when combined score ≤", min: "1", max: "36" },
  { key: "research_satisfaction_min", label: "Research gate: satisfaction ≥", min: "1", max: "9" },
  { key: "research_usage_max", label: "Research gate: usage factor ≤", min: "1", max: "4" },
];

function cell(doc: Document, field: string, text: string): HTMLTableCellElement {
  const td = doc.createElement("td");
  td.dataset.field = field;
  td.textContent = text;
  return td;
}

function one(value: number | null): string {
  return value === null ? "—" : value.toFixed(1);
}

function rankedTable(
  doc: Document,
  ranked: RankedRow[],
  unrated: UnratedRow[],
): HTMLTableElement {
  const table = doc.createElement("table");
  table.className = "ranked";
  const head = doc.createElement("tr");
  for (const label of [
    "System",
    "Respondents",
    "Average",
    "Median",
    "Usage factor",
    "Combined (CKU)",
    "Priority",
    "Conclusion",
  ]) {
    const th = doc.createElement("th");
    th.textContent = label;
    head.append(th);
  }
  table.append(head);
  for (const row of ranked) {
    const tr = doc.createElement("tr");
    tr.dataset.system = row.system_id;
    tr.append(
      cell(doc, "display_name", row.display_name),
      cell(doc, "respondent_count", String(row.respondent_count)),
      cell(doc, "average_satisfaction", one(row.average_satisfaction)),
      cell(doc, "median_satisfaction", one(row.median_satisfaction)),
      cell(doc, "usage_factor", one(row.usage_factor)),
      cell(doc, "cku", one(row.cku)),
      cell(doc, "priority", String(row.priority)),
      cell(doc, "category", row.category.toUpperCase()),
    );
    table.append(tr);
  }
  for (const row of unrated) {
    const tr = doc.createElement("tr");
    tr.dataset.system = row.system_id;
    tr.className = "unrated";
    tr.append(
      cell(doc, "display_name", row.display_name),
      cell(doc, "respondent_count", String(row.respondent_count)),
      cell(doc, "average_satisfaction", one(row.average_satisfaction)),
      cell(doc, "median_satisfaction", one(row.median_satisfaction)),
      cell(doc, "usage_factor", "—"),
      cell(doc, "cku", "—"),
      cell(doc, "priority", "—"),
      cell(doc, "note", row.note),
    );
    table.append(tr);
  }
  return table;
}

export function renderDashboard(
  client: ApiClient,
  surveyId: string,
  doc: Document = document,
): DashboardController {
  const root = doc.createElement("section");
  root.className = "dashboard";

  const heading = doc.createElement("h1");
  root.append(heading);

  // --- what-if controls ----------------------------------------------------
  const controls = doc.createElement("form");
  controls.className = "controls";
  const inputs = new Map<string, HTMLInputElement>();

  const statisticSelect = doc.createElement("select");
  statisticSelect.name = "statistic";
  for (const option of ["average", "median"]) {
    const el = doc.createElement("option");
    el.value = option;
    el.textContent = option;
    statisticSelect.append(el);
  }
  const statisticLabel = doc.createElement("label");
  statisticLabel.textContent = "Satisfaction statistic";
  statisticLabel.append(statisticSelect);
  controls.append(statisticLabel);

  for (const control of SLIDER_CONTROLS) {
    const label = doc.createElement("label");
    label.textContent = control.label;
    const input = doc.createElement("input");
    input.type = "range";
    input.name = control.key;
    input.min = control.min;
    input.max = control.max;
    input.step = "0.1";
    const shownValue = doc.createElement("output");
    input.addEventListener("input", () => {
      shownValue.textContent = input.value;
    });
    label.append(input, shownValue);
    controls.append(label);
    inputs.set(control.key, input);
  }

  const applyButton = doc.createElement("button");
  applyButton.type = "button";
  applyButton.textContent = "Reclassify";
  const freezeButton = doc.createElement("button");
  freezeButton.type = "button";
  freezeButton.textContent = "Freeze run";
  controls.append(applyButton, freezeButton);
  root.append(controls);

  const liveView = doc.createElement("div");
  liveView.className = "live";
  const status = doc.createElement("p");
  status.className = "status";
  root.append(liveView, status);

  // --- frozen-run view ------------------------------------------------------
  const runView = doc.createElement("div");
  runView.className = "run";
  root.append(runView);

  let controlsPrimed = false;
  let loadedRun: RunRecord | null = null;

  function currentQuery(): AnalysisQuery {
    if (!controlsPrimed) return {};
    const thresholds: ThresholdOverrides = {};
    for (const [key, input] of inputs) {
      if (input.value !== "") {
        thresholds[key as keyof ThresholdOverrides] = Number(input.value);
      }
    }
    return { statistic: statisticSelect.value as Statistic, thresholds };
  }

  function primeControls(payload: AnalysisPayload): void {
    if (controlsPrimed) return;
    statisticSelect.value = payload.statistic;
    for (const [key, input] of inputs) {
      input.value = String(payload.thresholds[key as keyof ThresholdOverrides]);
      input.dispatchEvent(new Event("input"));
    }
    controlsPrimed = true;
  }

  function renderLive(payload: AnalysisPayload): void {
    heading.textContent = payload.title ?? payload.survey_id;
    liveView.replaceChildren();
    if (payload.ranked.length === 0 && payload.unrated.length === 0) {
      const empty = doc.createElement("p");
      empty.className = "empty";
      empty.textContent = "No responses recorded yet.";
      liveView.append(empty);
      return;
    }
    liveView.append(
      rankedTable(doc, payload.ranked, payload.unrated),
      renderQuadrant(payload, doc),
    );
  }

  function renderRun(run: RunRecord): void {
    loadedRun = run;
    runView.replaceChildren();
    const title = doc.createElement("h2");
    title.textContent = `Frozen run ${run.run_id}`;
    const stage = doc.createElement("p");
    stage.className = "stage";
    stage.textContent = `Stage: ${run.stage}`;
    runView.append(title, stage);
    runView.append(rankedTable(doc, run.report.ranked, run.report.unrated));
    const decisions = doc.createElement("ul");
    decisions.className = "decisions";
    for (const [systemId, note] of Object.entries(run.decisions)) {
      const item = doc.createElement("li");
      item.dataset.system = systemId;
      item.textContent = `${systemId}: ${note.decision ?? "undecided"}` +
        (note.note ? ` — ${note.note}` : "");
      decisions.append(item);
    }
    runView.append(decisions);
  }

  async function refresh(): Promise<AnalysisPayload> {
    const payload = await client.getAnalysis(surveyId, currentQuery());
    primeControls(payload);
    renderLive(payload);
    return payload;
  }

  async function freeze(): Promise<RunRecord> {
    const query = currentQuery();
    const run = await client.freezeRun(
      surveyId,
      query.statistic ?? "average",
      query.thresholds ?? {},
    );
    status.textContent = `Frozen run ${run.run_id} at stage ${run.stage}.`;
    renderRun(run);
    return run;
  }

  async function loadRun(runId: string): Promise<RunRecord> {
    const run = await client.getRun(runId);
    renderRun(run);
    return run;
  }

  async function advanceRun(stage: RunStage): Promise<RunRecord> {
    if (!loadedRun) throw new Error("no run loaded");
    try {
      const run = await client.patchRun(loadedRun.run_id, { stage });
      renderRun(run);
      return run;
    } catch (error) {
      if (error instanceof ApiError) {
        status.textContent = error.detail; // illegal transitions shown verbatim
      }
      throw error;
    }
  }

  async function recordDecision(
    systemId: string,
    note: string | null,
    decision: DecisionValue | null,
  ): Promise<RunRecord> {
    if (!loadedRun) throw new Error("no run loaded");
    const run = await client.patchRun(loadedRun.run_id, {
      decisions: { [systemId]: { note, decision } },
    });
    renderRun(run);
    return run;
  }

  applyButton.addEventListener("click", () => {
    void refresh();
  });
  freezeButton.addEventListener("click", () => {
    void freeze();
  });

  return { element: root, refresh, freeze, loadRun, advanceRun, recordDecision, currentQuery };
}
