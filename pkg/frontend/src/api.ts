/** Thin typed client for the /v1 API. The fetch implementation is
 * injectable so tests can run against the fixture-backed mock server. */

import type {
  ApiErrorBody,
  AssignRequest,
  ConfigDoc,
  Locale,
  MissionRankingDoc,
  PlanDoc,
  RankedListDoc,
  RoundSummary,
} from "./types.js";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
    readonly details: Record<string, unknown> = {},
  ) {
    super(message);
    this.name = "ApiRequestError";
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(
    method: string,
    path: string,
    body?: unknown,
  ): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.body = JSON.stringify(body);
      init.headers = { "content-type": "application/json" };
    }
    const resp = await this.fetchImpl(this.baseUrl + path, init);
    if (!resp.ok) {
      let err: ApiErrorBody = {
        code: "unknown",
        message: `HTTP ${resp.status}`,
        details: {},
      };
      try {
        err = (await resp.json()) as ApiErrorBody;
      } catch {
        // non-JSON error body; keep the fallback
      }
      throw new ApiRequestError(resp.status, err.code, err.message, err.details);
    }
    return (await resp.json()) as T;
  }

  getConfig(): Promise<ConfigDoc> {
    return this.request("GET", "/v1/config");
  }

  putConfig(config: ConfigDoc): Promise<ConfigDoc> {
    return this.request("PUT", "/v1/config", config);
  }

  createRound(): Promise<RoundSummary> {
    return this.request("POST", "/v1/rounds");
  }

  getRound(roundId: string): Promise<RoundSummary> {
    return this.request("GET", `/v1/rounds/${roundId}`);
  }

  getCandidates(
    roundId: string,
    missionId: string,
    opts: { limit?: number; locale?: Locale } = {},
  ): Promise<RankedListDoc> {
    const params = new URLSearchParams();
    if (opts.limit !== undefined) params.set("limit", String(opts.limit));
    if (opts.locale !== undefined) params.set("locale", opts.locale);
    const qs = params.toString();
    return this.request(
      "GET",
      `/v1/rounds/${roundId}/missions/${missionId}/candidates${qs ? `?${qs}` : ""}`,
    );
  }

  getStudentMissions(
    roundId: string,
    studentId: string,
    opts: { limit?: number; locale?: Locale } = {},
  ): Promise<MissionRankingDoc> {
    const params = new URLSearchParams();
    if (opts.limit !== undefined) params.set("limit", String(opts.limit));
    if (opts.locale !== undefined) params.set("locale", opts.locale);
    const qs = params.toString();
    return this.request(
      "GET",
      `/v1/rounds/${roundId}/students/${studentId}/missions${qs ? `?${qs}` : ""}`,
    );
  }

  setOverride(
    roundId: string,
    studentId: string,
    missionId: string | null,
  ): Promise<{ overrides: Record<string, string> }> {
    return this.request("POST", `/v1/rounds/${roundId}/overrides`, {
      studentId,
      missionId,
    });
  }

  assign(roundId: string, body?: AssignRequest): Promise<PlanDoc> {
    return this.request("POST", `/v1/rounds/${roundId}/assign`, body);
  }

  publish(roundId: string): Promise<RoundSummary> {
    return this.request("POST", `/v1/rounds/${roundId}/publish`);
  }
}
