import { describe, expect, it } from "vitest";

import {
  WEIGHT_SUM_TOLERANCE,
  buildWhatifRequest,
  candidateInspector,
  validateMatchWeights,
} from "../src/viewmodel.js";
import { renderDashboard, renderDiff, renderInspector } from "../src/render.js";
import { diffPlans, roundDashboard } from "../src/viewmodel.js";
import { loadFixtures } from "./fixtures.js";

const fixtures = loadFixtures();

describe("validateMatchWeights", () => {
  it("accepts weights summing exactly to 1", () => {
    expect(validateMatchWeights({ alpha: 0.6, beta: 0.2, gamma: 0.2 }).ok).toBe(true);
    expect(validateMatchWeights({ alpha: 1, beta: 0, gamma: 0 }).ok).toBe(true);
  });

  it("accepts deviation within the tolerance and rejects just beyond it", () => {
    expect(
      validateMatchWeights({
        alpha: 0.6,
        beta: 0.2,
        gamma: 0.2 + WEIGHT_SUM_TOLERANCE / 2,
      }).ok,
    ).toBe(true);
    expect(
      validateMatchWeights({ alpha: 0.6, beta: 0.2, gamma: 0.21 }).ok,
    ).toBe(false);
  });

  it("rejects negative weights even when the sum is 1", () => {
    const check = validateMatchWeights({ alpha: 1.2, beta: -0.2, gamma: 0 });
    expect(check.ok).toBe(false);
    expect(check.error).toContain("non-negative");
  });
});

describe("buildWhatifRequest", () => {
  it("passes objective weights and seed through untouched", () => {
    const req = buildWhatifRequest({
      matchWeights: { alpha: 0.6, beta: 0.2, gamma: 0.2 },
      objectiveWeights: { match: 1, interest: 0.25, unassigned: 2, capacityPenalty: 10 },
      seed: 42,
    });
    expect(req.blocked).toBe(false);
    expect(req.body).toEqual({
      matchWeights: { alpha: 0.6, beta: 0.2, gamma: 0.2 },
      objectiveWeights: { match: 1, interest: 0.25, unassigned: 2, capacityPenalty: 10 },
      gaParams: { seed: 42 },
    });
  });

  it("omits sections that were not touched", () => {
    const req = buildWhatifRequest({ seed: 7 });
    expect(req.body).toEqual({ gaParams: { seed: 7 } });
  });
});

describe("HTML rendering stays faithful to the view models", () => {
  it("dashboard rows carry the payload counts and disabled controls", () => {
    const html = renderDashboard(roundDashboard(fixtures.roundSummaryPublished));
    const first = fixtures.roundSummaryPublished.missions[0]!;
    expect(html).toContain(`${first.assignedCount}/${first.capacity}`);
    expect(html).toContain('class="assign" disabled');
    expect(html).toContain('class="publish" disabled');
  });

  it("inspector cards embed the raw score values and chip texts", () => {
    const vm = candidateInspector(fixtures.candidatesM01);
    const html = renderInspector(vm);
    const top = fixtures.candidatesM01.entries[0]!;
    expect(html).toContain(`data-student="${top.studentId}"`);
    expect(html).toContain(`data-value="${top.score.skillCos}"`);
    for (const arg of top.arguments) {
      expect(html).toContain(`data-code="${arg.code}"`);
    }
  });

  it("diff view renders the no-change state", () => {
    const html = renderDiff(diffPlans(fixtures.plan, fixtures.plan));
    expect(html).toContain("no-change");
  });

  it("escapes markup in server-provided text", () => {
    const doc = structuredClone(fixtures.candidatesM01);
    doc.entries[0]!.arguments = [
      { code: "A5", evidence: {}, text: '<img src=x onerror="boom">' },
    ];
    const html = renderInspector(candidateInspector(doc));
    expect(html).not.toContain("<img");
    expect(html).toContain("&lt;img");
  });
});
