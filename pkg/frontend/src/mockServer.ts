/** Fixture-backed mock of the /v1 API.
 *
 * Replays recorded server responses verbatim; the only state it keeps is
 * what the recording session had (overrides, current plan, published flag)
 * so the console can be exercised end to end without the Python service.
 */

import type {
  ApiErrorBody,
  ConfigDoc,
  MissionRankingDoc,
  PlanDoc,
  RankedListDoc,
  RoundSummary,
} from "./types.js";
import type { FetchLike } from "./api.js";

export interface MockFixtures {
  config: ConfigDoc;
  roundSummaryInitial: RoundSummary;
  roundSummary: RoundSummary;
  roundSummaryPublished: RoundSummary;
  candidatesM01: RankedListDoc;
  candidatesM01Fr: RankedListDoc;
  studentMissionsS01: MissionRankingDoc;
  plan: PlanDoc;
  planPinned: PlanDoc;
  planInterestZero: PlanDoc;
  errorPublished: ApiErrorBody;
  pin: { studentId: string; missionId: string };
}

interface MockState {
  published: boolean;
  hasPlan: boolean;
  overrides: Record<string, string>;
}

function jsonResponse(doc: unknown, status = 200): Response {
  return new Response(JSON.stringify(doc), {
    status,
    headers: { "content-type": "application/json" },
  });
}

function notFound(what: string): Response {
  return jsonResponse(
    { code: "not_found", message: `unknown ${what}`, details: {} },
    404,
  );
}

export function createMockFetch(fixtures: MockFixtures): FetchLike {
  const state: MockState = { published: false, hasPlan: false, overrides: {} };
  const roundId = fixtures.roundSummaryInitial.roundId;

  return async (url: string, init?: RequestInit): Promise<Response> => {
    const method = (init?.method ?? "GET").toUpperCase();
    const parsed = new URL(url, "http://mock");
    const path = parsed.pathname;
    const body: Record<string, unknown> =
      typeof init?.body === "string" && init.body ? JSON.parse(init.body) : {};

    if (method === "GET" && path === "/v1/config") {
      return jsonResponse(fixtures.config);
    }
    if (method === "POST" && path === "/v1/rounds") {
      return jsonResponse(fixtures.roundSummaryInitial, 201);
    }
    if (!path.startsWith(`/v1/rounds/${roundId}`)) {
      return notFound("route");
    }
    const rest = path.slice(`/v1/rounds/${roundId}`.length);

    if (method === "GET" && rest === "") {
      if (state.published) return jsonResponse(fixtures.roundSummaryPublished);
      return jsonResponse(
        state.hasPlan ? fixtures.roundSummary : fixtures.roundSummaryInitial,
      );
    }
    if (method === "GET" && rest === "/missions/m01/candidates") {
      return jsonResponse(
        parsed.searchParams.get("locale") === "fr"
          ? fixtures.candidatesM01Fr
          : fixtures.candidatesM01,
      );
    }
    if (method === "GET" && rest === "/students/s01/missions") {
      return jsonResponse(fixtures.studentMissionsS01);
    }

    if (method === "POST" && state.published) {
      return jsonResponse(fixtures.errorPublished, 409);
    }
    if (method === "POST" && rest === "/overrides") {
      const studentId = body.studentId as string | undefined;
      if (!studentId) return notFound("student");
      const missionId = body.missionId as string | null;
      if (missionId === null) {
        delete state.overrides[studentId];
      } else {
        state.overrides[studentId] = missionId;
      }
      return jsonResponse({ overrides: { ...state.overrides } });
    }
    if (method === "POST" && rest === "/assign") {
      state.hasPlan = true;
      const { studentId, missionId } = fixtures.pin;
      if (state.overrides[studentId] === missionId) {
        return jsonResponse(fixtures.planPinned);
      }
      const weights = body.objectiveWeights as { interest?: number } | undefined;
      if (weights && weights.interest === 0) {
        return jsonResponse(fixtures.planInterestZero);
      }
      return jsonResponse(fixtures.plan);
    }
    if (method === "POST" && rest === "/publish") {
      state.published = true;
      return jsonResponse(fixtures.roundSummaryPublished);
    }
    return notFound("route");
  };
}
