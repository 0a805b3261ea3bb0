/**
 * Wire types for the rationalizer HTTP API.
 *
 * Every number the UI shows comes from these payloads verbatim; the client
 * performs no scoring arithmetic of its own, so these shapes are the whole
 * contract between the dashboard and the truth.
 */

export type FourR = "retain" | "review" | "remove" | "research";
export type Statistic = "average" | "median";
export type RunStage =
  | "collecting"
  | "scored"
  | "classified"
  | "under_investigation"
  | "decided";
export type DecisionValue = "keep" | "decommission" | "defer";

export interface Question {
  text: string;
  /** answer code -> human wording, rendered exactly as provided */
  options: Record<string, string>;
}

export interface QuestionSet {
  functional: Question;
  dysfunctional: Question;
  usage: Question;
}

export interface SystemEntry {
  system_id: string;
  display_name: string;
  business_area: string | null;
}

export interface Survey {
  survey_id: string;
  title: string;
  wording: "self" | "proxy";
  opens_at: string | null;
  closes_at: string | null;
  systems: SystemEntry[];
  questions: QuestionSet;
}

export interface Answer {
  system_id: string;
  functional: string;
  dysfunctional: string;
  usage?: string | null;
  weight?: number;
  role?: "self" | "proxy";
}

export interface Submission {
  respondent_id: string;
  answers: Answer[];
}

export interface ThresholdValues {
  research_satisfaction_min: number;
  research_usage_max: number;
  cku_retain_min: number;
  cku_remove_max: number;
  min_cohort_for_research: number;
  satisfaction_retain_min: number;
  satisfaction_remove_max: number;
}

/** Subset of threshold fields a what-if query may override. */
export type ThresholdOverrides = Partial<ThresholdValues>;

export interface RankedRow {
  system_id: string;
  display_name: string;
  respondent_count: number;
  usage_respondent_count: number;
  total_satisfaction: number;
  average_satisfaction: number;
  median_satisfaction: number;
  total_usage: number;
  usage_factor: number;
  cku: number;
  priority: number;
  category: FourR;
}

export interface UnratedRow {
  system_id: string;
  display_name: string;
  respondent_count: number;
  usage_respondent_count: number;
  total_satisfaction: number;
  average_satisfaction: number;
  median_satisfaction: number;
  total_usage: number;
  usage_factor: null;
  cku: null;
  note: string;
}

export interface InitialRow {
  system_id: string;
  display_name: string;
  respondent_count: number;
  total_satisfaction: number;
  average_satisfaction: number;
  median_satisfaction: number;
  priority: number;
  conclusion: FourR;
}

export interface AnalysisPayload {
  survey_id: string;
  title: string | null;
  statistic: Statistic;
  thresholds: ThresholdValues;
  ranked: RankedRow[];
  unrated: UnratedRow[];
  initial: InitialRow[];
}

export interface SweepSystem {
  system_id: string;
  display_name: string;
  baseline: FourR;
  outcomes: FourR[];
  sensitive: boolean;
  triggers: string[];
}

export interface SweepPayload {
  survey_id: string;
  step: number;
  span: number;
  thresholds: ThresholdValues;
  systems: SweepSystem[];
}

export interface DecisionNote {
  note: string | null;
  decision: DecisionValue | null;
}

export interface RunRecord {
  run_id: string;
  survey_id: string;
  thresholds: ThresholdValues;
  statistic: Statistic;
  created_at: string;
  stage: RunStage;
  report: AnalysisPayload;
  decisions: Record<string, DecisionNote>;
}
