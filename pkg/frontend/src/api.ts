/**
 * Thin fetch client for the rationalizer service.
 *
 * All analysis reshaping happens server-side; this module only moves JSON.
 * What-if threshold overrides travel as query parameters and are therefore
 * never persisted — freezing a run is the only way to make them durable.
 */

import type {
  AnalysisPayload,
  RunRecord,
  Statistic,
  Submission,
  Survey,
  SweepPayload,
  ThresholdOverrides,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: string,
  ) {
    super(`${status}: ${detail}`);
    this.name = "ApiError";
  }
}

export interface AnalysisQuery {
  statistic?: Statistic;
  thresholds?: ThresholdOverrides;
}

/** Serialize what-if options into query parameters, omitting unset fields. */
export function analysisSearch(query: AnalysisQuery): string {
  const params = new URLSearchParams();
  if (query.statistic) params.set("statistic", query.statistic);
  for (const [key, value] of Object.entries(query.thresholds ?? {})) {
    if (value !== undefined && value !== null) params.set(key, String(value));
  }
  const rendered = params.toString();
  return rendered ? `?${rendered}` : "";
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly token?: string,
  ) {}

  private async request<T>(path: string, init: RequestInit = {}): Promise<T> {
    const headers: Record<string, string> = {
      ...(init.body ? { "content-type": "application/json" } : {}),
      ...(this.token ? { authorization: `Bearer ${this.token}` } : {}),
    };
    const response = await fetch(`${this.baseUrl}${path}`, { ...init, headers });
    const text = await response.text();
    if (!response.ok) {
      let detail = text;
      try {
        detail = String(JSON.parse(text).detail ?? text);
      } catch {
        /* non-JSON error body; keep raw text */
      }
      throw new ApiError(response.status, detail);
    }
    return JSON.parse(text) as T;
  }

  getSurvey(surveyId: string): Promise<Survey> {
    return this.request(`/surveys/${encodeURIComponent(surveyId)}`);
  }

  submitResponses(surveyId: string, submission: Submission): Promise<{ accepted: number }> {
    return this.request(`/surveys/${encodeURIComponent(surveyId)}/responses`, {
      method: "POST",
      body: JSON.stringify(submission),
    });
  }

  getAnalysis(surveyId: string, query: AnalysisQuery = {}): Promise<AnalysisPayload> {
    return this.request(
      `/surveys/${encodeURIComponent(surveyId)}/analysis${analysisSearch(query)}`,
    );
  }

  getSensitivity(surveyId: string, step?: number): Promise<SweepPayload> {
    const suffix = step !== undefined ? `?step=${step}` : "";
    return this.request(
      `/surveys/${encodeURIComponent(surveyId)}/analysis/sensitivity${suffix}`,
    );
  }

  freezeRun(
    surveyId: string,
    statistic: Statistic,
    thresholds: ThresholdOverrides,
  ): Promise<RunRecord> {
    return this.request(`/runs`, {
      method: "POST",
      body: JSON.stringify({ survey_id: surveyId, statistic, thresholds }),
    });
  }

  getRun(runId: string): Promise<RunRecord> {
    return this.request(`/runs/${encodeURIComponent(runId)}`);
  }

  patchRun(
    runId: string,
    patch: {
      stage?: string;
      decisions?: Record<string, { note?: string | null; decision?: string | null }>;
    },
  ): Promise<RunRecord> {
    return this.request(`/runs/${encodeURIComponent(runId)}`, {
      method: "PATCH",
      body: JSON.stringify(patch),
    });
  }
}
