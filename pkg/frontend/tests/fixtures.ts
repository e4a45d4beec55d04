import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";

import type { MockFixtures } from "../src/mockServer.js";

const FIXTURES_DIR = join(
  dirname(fileURLToPath(import.meta.url)),
  "..",
  "fixtures",
);

export function loadJson<T>(name: string): T {
  return JSON.parse(readFileSync(join(FIXTURES_DIR, name), "utf-8")) as T;
}

export function loadFixtures(): MockFixtures {
  return {
    config: loadJson("config.json"),
    roundSummaryInitial: loadJson("round_summary_initial.json"),
    roundSummary: loadJson("round_summary.json"),
    roundSummaryPublished: loadJson("round_summary_published.json"),
    candidatesM01: loadJson("candidates_m01.json"),
    candidatesM01Fr: loadJson("candidates_m01_fr.json"),
    studentMissionsS01: loadJson("student_missions_s01.json"),
    plan: loadJson("plan.json"),
    planPinned: loadJson("plan_pinned.json"),
    planInterestZero: loadJson("plan_interest_zero.json"),
    errorPublished: loadJson("error_published.json"),
    pin: loadJson("pin.json"),
  };
}
