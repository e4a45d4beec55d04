/** Pure view-model builders for the coordinator console.
 *
 * Every displayed number is copied from an API payload; nothing here
 * recomputes scores, rankings, or argument texts. The only client-side
 * arithmetic is input validation (weights must sum to 1) and diffing two
 * server-produced plans.
 */

import type {
  ArgumentDoc,
  BoundViolation,
  MatchWeights,
  ObjectiveParts,
  ObjectiveWeights,
  PlanDoc,
  RankedListDoc,
  RoundSummary,
} from "./types.js";

export const WEIGHT_SUM_TOLERANCE = 1e-9;

// ----- round dashboard -----

export interface MissionRow {
  missionId: string;
  companyId: string;
  clusterBadge: string;
  capacity: number;
  minProposed: number;
  maxProposed: number;
  assignedCount: number;
  violation: BoundViolation | null;
  violationBadge: string | null;
}

export interface RoundDashboard {
  roundId: string;
  status: string;
  published: boolean;
  controlsDisabled: boolean;
  empty: boolean;
  emptyMessage: string | null;
  k: number;
  kEffective: number;
  missions: MissionRow[];
  unassignedStudents: string[];
  overrides: { studentId: string; missionId: string | null }[];
  feasible: boolean | null;
  objectiveTotal: number | null;
}

export function roundDashboard(summary: RoundSummary): RoundDashboard {
  const plan = summary.currentPlan;
  const violationsByMission = new Map<string, BoundViolation>();
  for (const v of plan?.violations ?? []) {
    violationsByMission.set(v.missionId, v);
  }
  const missions: MissionRow[] = summary.missions.map((m) => {
    const violation = violationsByMission.get(m.id) ?? null;
    return {
      missionId: m.id,
      companyId: m.companyId,
      clusterBadge: `C${m.cluster}`,
      capacity: m.capacity,
      minProposed: m.minProposed,
      maxProposed: m.maxProposed,
      assignedCount: m.assignedCount,
      violation,
      violationBadge: violation
        ? `bounds ${violation.minRequired}..${violation.maxAllowed}, got ${violation.got}`
        : null,
    };
  });
  const published = summary.status === "Published";
  return {
    roundId: summary.roundId,
    status: summary.status,
    published,
    controlsDisabled: published,
    empty: missions.length === 0,
    emptyMessage: missions.length === 0 ? "No annotated missions in this round." : null,
    k: summary.k,
    kEffective: summary.kEffective,
    missions,
    unassignedStudents: [...summary.unassignedStudents],
    overrides: Object.entries(summary.overrides).map(([studentId, missionId]) => ({
      studentId,
      missionId,
    })),
    feasible: plan ? plan.feasible : null,
    objectiveTotal: plan ? plan.objectiveTotal : null,
  };
}

// ----- candidate inspector -----

export interface ScoreBar {
  label: string;
  value: number;
  weight: number;
}

export interface ArgumentChip {
  code: string;
  text: string;
}

export interface CandidateCard {
  studentId: string;
  rank: number;
  total: number;
  bars: { skill: ScoreBar; prototype: ScoreBar; interest: ScoreBar };
  argumentChips: ArgumentChip[];
  noArguments: boolean;
  noArgumentsMessage: string | null;
  pinAction: { studentId: string; missionId: string };
}

export interface CandidateInspector {
  missionId: string;
  weights: MatchWeights;
  entries: CandidateCard[];
  empty: boolean;
  emptyMessage: string | null;
}

function chips(args: ArgumentDoc[]): ArgumentChip[] {
  return args.map((a) => ({ code: a.code, text: a.text }));
}

export function candidateInspector(doc: RankedListDoc): CandidateInspector {
  const entries: CandidateCard[] = doc.entries.map((entry, i) => ({
    studentId: entry.studentId,
    rank: i + 1,
    total: entry.score.total,
    bars: {
      skill: {
        label: "skill",
        value: entry.score.skillCos,
        weight: entry.score.weights.alpha,
      },
      prototype: {
        label: "prototype",
        value: entry.score.prototypeCos,
        weight: entry.score.weights.beta,
      },
      interest: {
        label: "interest",
        value: entry.score.interestScore,
        weight: entry.score.weights.gamma,
      },
    },
    argumentChips: chips(entry.arguments),
    noArguments: entry.arguments.length === 0,
    noArgumentsMessage:
      entry.arguments.length === 0 ? "No arguments fired for this pair." : null,
    pinAction: { studentId: entry.studentId, missionId: doc.missionId },
  }));
  return {
    missionId: doc.missionId,
    weights: doc.weights,
    entries,
    empty: entries.length === 0,
    emptyMessage: entries.length === 0 ? "No candidates to show." : null,
  };
}

// ----- what-if panel -----

export interface WeightValidation {
  ok: boolean;
  error: string | null;
}

export function validateMatchWeights(w: MatchWeights): WeightValidation {
  if (w.alpha < 0 || w.beta < 0 || w.gamma < 0) {
    return { ok: false, error: "Weights must be non-negative." };
  }
  const sum = w.alpha + w.beta + w.gamma;
  if (Math.abs(sum - 1) > WEIGHT_SUM_TOLERANCE) {
    return {
      ok: false,
      error: `Weights must sum to 1 (currently ${sum}).`,
    };
  }
  return { ok: true, error: null };
}

export interface WhatifRequest {
  blocked: boolean;
  error: string | null;
  body: {
    matchWeights?: MatchWeights;
    objectiveWeights?: ObjectiveWeights;
    gaParams?: { seed?: number };
  } | null;
}

/** Gate a recompute request on client-side weight validation; invalid
 * weights never reach the server. */
export function buildWhatifRequest(opts: {
  matchWeights?: MatchWeights;
  objectiveWeights?: ObjectiveWeights;
  seed?: number;
}): WhatifRequest {
  if (opts.matchWeights) {
    const check = validateMatchWeights(opts.matchWeights);
    if (!check.ok) return { blocked: true, error: check.error, body: null };
  }
  const body: NonNullable<WhatifRequest["body"]> = {};
  if (opts.matchWeights) body.matchWeights = opts.matchWeights;
  if (opts.objectiveWeights) body.objectiveWeights = opts.objectiveWeights;
  if (opts.seed !== undefined) body.gaParams = { seed: opts.seed };
  return { blocked: false, error: null, body };
}

export interface PartDiff {
  before: number;
  after: number;
  changed: boolean;
}

export interface PlanDiff {
  noChange: boolean;
  message: string | null;
  objectiveTotal: PartDiff;
  parts: Record<keyof ObjectiveParts, PartDiff>;
  /** weight x part, both taken from the plan payloads */
  contributions: {
    match: PartDiff;
    interest: PartDiff;
  };
  reassigned: { studentId: string; before: string | null; after: string | null }[];
}

function diffNumber(before: number, after: number): PartDiff {
  return { before, after, changed: before !== after };
}

export function diffPlans(before: PlanDoc, after: PlanDoc): PlanDiff {
  const reassigned: PlanDiff["reassigned"] = [];
  const students = new Set([
    ...Object.keys(before.assignment),
    ...Object.keys(after.assignment),
  ]);
  for (const sid of [...students].sort()) {
    const a = before.assignment[sid] ?? null;
    const b = after.assignment[sid] ?? null;
    if (a !== b) reassigned.push({ studentId: sid, before: a, after: b });
  }
  const parts = {
    sumMatch: diffNumber(before.objectiveParts.sumMatch, after.objectiveParts.sumMatch),
    sumInterest: diffNumber(
      before.objectiveParts.sumInterest,
      after.objectiveParts.sumInterest,
    ),
    unassignedCount: diffNumber(
      before.objectiveParts.unassignedCount,
      after.objectiveParts.unassignedCount,
    ),
    penalty: diffNumber(before.objectiveParts.penalty, after.objectiveParts.penalty),
  };
  const contributions = {
    match: diffNumber(
      before.objectiveWeights.match * before.objectiveParts.sumMatch,
      after.objectiveWeights.match * after.objectiveParts.sumMatch,
    ),
    interest: diffNumber(
      before.objectiveWeights.interest * before.objectiveParts.sumInterest,
      after.objectiveWeights.interest * after.objectiveParts.sumInterest,
    ),
  };
  const objectiveTotal = diffNumber(before.objectiveTotal, after.objectiveTotal);
  const noChange =
    !objectiveTotal.changed &&
    reassigned.length === 0 &&
    Object.values(parts).every((p) => !p.changed);
  return {
    noChange,
    message: noChange ? "No change: the recomputed plan is identical." : null,
    objectiveTotal,
    parts,
    contributions,
    reassigned,
  };
}
