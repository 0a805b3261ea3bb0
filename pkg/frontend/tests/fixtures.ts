/**
 * Shared test data: the six-app worked example.
 *
 * The numbers (totals, averages, usage factors, combined scores, priorities,
 * verdicts) are typed out by hand so tests compare the UI against an
 * independently stated expectation, not against anything computed here.
 */

import type {
  AnalysisPayload,
  Answer,
  FourR,
  InitialRow,
  RankedRow,
  Survey,
  ThresholdValues,
} from "../src/types.js";

export const DEFAULT_THRESHOLDS: ThresholdValues = {
  research_satisfaction_min: 7.5,
  research_usage_max: 1.5,
  cku_retain_min: 24.0,
  cku_remove_max: 9.0,
  min_cohort_for_research: 2,
  satisfaction_retain_min: 7.5,
  satisfaction_remove_max: 3.0,
};

export const DISPLAY_NAMES: Record<string, string> = {
  browser: "Browser",
  camera: "Camera",
  map: "Map",
  "social-media": "Social media",
  taxi: "Taxi",
  tc: "Train company",
};

type Row = [
  string, // system_id
  number, // respondent_count
  number, // total_satisfaction
  number, // average
  number, // median
  number, // total_usage
  number, // usage_factor
  number, // cku
  number, // priority
  FourR,  // category
];

// In rank order (priority 1 first).
const RANKED_ROWS: Row[] = [
  ["browser", 5, 45, 9.0, 9.0, 20, 4.0, 36.0, 1, "retain"],
  ["camera", 5, 42, 8.4, 9.0, 18, 3.6, 30.2, 2, "retain"],
  ["map", 5, 30, 6.0, 6.0, 16, 3.2, 19.2, 3, "review"],
  ["tc", 4, 16, 4.0, 3.0, 7, 1.8, 7.2, 4, "remove"],
  ["taxi", 3, 9, 3.0, 3.0, 6, 2.0, 6.0, 5, "remove"],
  ["social-media", 3, 3, 1.0, 1.0, 4, 1.3, 1.3, 6, "remove"],
];

const INITIAL_CONCLUSIONS: Record<string, FourR> = {
  browser: "retain",
  camera: "retain",
  map: "review",
  tc: "review",
  taxi: "remove",
  "social-media": "remove",
};

export function fixturePayload(overrides: Partial<AnalysisPayload> = {}): AnalysisPayload {
  const ranked: RankedRow[] = RANKED_ROWS.map(
    ([id, count, total, average, median, usage, factor, cku, priority, category]) => ({
      system_id: id,
      display_name: DISPLAY_NAMES[id],
      respondent_count: count,
      usage_respondent_count: count,
      total_satisfaction: total,
      average_satisfaction: average,
      median_satisfaction: median,
      total_usage: usage,
      usage_factor: factor,
      cku,
      priority,
      category,
    }),
  );
  const initial: InitialRow[] = RANKED_ROWS.map(
    ([id, count, total, average, median, , , , priority], _index) => ({
      system_id: id,
      display_name: DISPLAY_NAMES[id],
      respondent_count: count,
      total_satisfaction: total,
      average_satisfaction: average,
      median_satisfaction: median,
      priority,
      conclusion: INITIAL_CONCLUSIONS[id],
    }),
  );
  return {
    survey_id: "phone-apps",
    title: "Phone apps estate review",
    statistic: "average",
    thresholds: { ...DEFAULT_THRESHOLDS },
    ranked,
    unrated: [],
    initial,
    ...overrides,
  };
}

/** The same payload reclassified with cku_retain_min = 19.0: Map flips to retain. */
export function flippedPayload(): AnalysisPayload {
  const payload = fixturePayload();
  payload.thresholds = { ...payload.thresholds, cku_retain_min: 19.0 };
  for (const row of payload.ranked) {
    if (row.system_id === "map") row.category = "retain";
  }
  return payload;
}

export const FIXTURE_SURVEY: Survey = {
  survey_id: "phone-apps",
  title: "Phone apps estate review",
  wording: "self",
  opens_at: null,
  closes_at: null,
  systems: Object.entries(DISPLAY_NAMES).map(([system_id, display_name]) => ({
    system_id,
    display_name,
    business_area: null,
  })),
  questions: {
    functional: {
      text: "How do you feel about System/Tool '{system}' now?",
      options: {
        LIKE: "I like it.",
        EXPECT: "I expect it.",
        NEUTRAL: "I neither like nor dislike it.",
        DISLIKE: "I dislike it.",
      },
    },
    dysfunctional: {
      text: "How would you feel if you did NOT have System/Tool '{system}'?",
      options: {
        PREFER_NOT: "I would prefer not to be without it.",
        CANNOT_WORK: "I could not work effectively without it.",
        CAN_MANAGE: "I can manage without it, but might use it if it were still available.",
        DONT_NEED: "I do not need it.",
      },
    },
    usage: {
      text: "How often do you use System/Tool '{system}'?",
      options: {
        L: "A lot (every day or several times a week)",
        S: "Somewhat (once a week to once a month)",
        O: "Occasionally (2-4 times a year)",
        N: "Not very much or not at all (once a year or less)",
      },
    },
  },
};

/** Per-respondent fixture answers; together they reproduce the worked example. */
export const FIXTURE_ANSWERS: Record<string, Answer[]> = {
  r1: [
    { system_id: "camera", functional: "LIKE", dysfunctional: "CANNOT_WORK", usage: "L" },
    { system_id: "social-media", functional: "DISLIKE", dysfunctional: "DONT_NEED", usage: "O" },
    { system_id: "map", functional: "LIKE", dysfunctional: "CANNOT_WORK", usage: "L" },
    { system_id: "taxi", functional: "LIKE", dysfunctional: "CAN_MANAGE", usage: "O" },
    { system_id: "tc", functional: "EXPECT", dysfunctional: "CANNOT_WORK", usage: "S" },
    { system_id: "browser", functional: "EXPECT", dysfunctional: "CANNOT_WORK", usage: "L" },
  ],
  r2: [
    { system_id: "camera", functional: "EXPECT", dysfunctional: "PREFER_NOT", usage: "L" },
    { system_id: "social-media", functional: "NEUTRAL", dysfunctional: "DONT_NEED", usage: "N" },
    { system_id: "map", functional: "NEUTRAL", dysfunctional: "CANNOT_WORK", usage: "S" },
    { system_id: "taxi", functional: "NEUTRAL", dysfunctional: "CAN_MANAGE", usage: "O" },
    { system_id: "tc", functional: "NEUTRAL", dysfunctional: "CAN_MANAGE", usage: "O" },
    { system_id: "browser", functional: "LIKE", dysfunctional: "CANNOT_WORK", usage: "L" },
  ],
  r3: [
    { system_id: "camera", functional: "EXPECT", dysfunctional: "CANNOT_WORK", usage: "L" },
    { system_id: "social-media", functional: "DISLIKE", dysfunctional: "CAN_MANAGE", usage: "N" },
    { system_id: "map", functional: "NEUTRAL", dysfunctional: "PREFER_NOT", usage: "S" },
    { system_id: "taxi", functional: "LIKE", dysfunctional: "CAN_MANAGE", usage: "O" },
    { system_id: "tc", functional: "LIKE", dysfunctional: "CAN_MANAGE", usage: "N" },
    { system_id: "browser", functional: "EXPECT", dysfunctional: "PREFER_NOT", usage: "L" },
  ],
  r4: [
    { system_id: "camera", functional: "NEUTRAL", dysfunctional: "CANNOT_WORK", usage: "S" },
    { system_id: "map", functional: "NEUTRAL", dysfunctional: "CAN_MANAGE", usage: "S" },
    { system_id: "tc", functional: "EXPECT", dysfunctional: "DONT_NEED", usage: "N" },
    { system_id: "browser", functional: "NEUTRAL", dysfunctional: "CANNOT_WORK", usage: "L" },
  ],
  r5: [
    { system_id: "camera", functional: "LIKE", dysfunctional: "PREFER_NOT", usage: "S" },
    { system_id: "map", functional: "LIKE", dysfunctional: "CAN_MANAGE", usage: "S" },
    { system_id: "browser", functional: "EXPECT", dysfunctional: "CANNOT_WORK", usage: "L" },
  ],
};

/** The worked-example verdict table the dashboard must show: cku, priority, conclusion. */
export const TABLE_3: Record<string, { cku: string; priority: string; category: string }> = {
  browser: { cku: "36.0", priority: "1", category: "RETAIN" },
  camera: { cku: "30.2", priority: "2", category: "RETAIN" },
  map: { cku: "19.2", priority: "3", category: "REVIEW" },
  tc: { cku: "7.2", priority: "4", category: "REMOVE" },
  taxi: { cku: "6.0", priority: "5", category: "REMOVE" },
  "social-media": { cku: "1.3", priority: "6", category: "REMOVE" },
};
