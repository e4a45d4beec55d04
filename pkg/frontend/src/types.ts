/** Wire types for the internmatch /v1 API. Field names mirror the JSON. */

export interface MatchWeights {
  alpha: number;
  beta: number;
  gamma: number;
}

export interface ScoreDoc {
  total: number;
  skillCos: number;
  prototypeCos: number;
  interestScore: number;
  weights: MatchWeights;
}

export interface ArgumentDoc {
  code: string;
  evidence: Record<string, unknown>;
  text: string;
}

export interface CandidateEntry {
  studentId: string;
  score: ScoreDoc;
  arguments: ArgumentDoc[];
}

export interface RankedListDoc {
  missionId: string;
  weights: MatchWeights;
  thresholds: Record<string, number>;
  entries: CandidateEntry[];
}

export interface MissionRankingEntry {
  missionId: string;
  score: ScoreDoc;
  arguments: ArgumentDoc[];
}

export interface MissionRankingDoc {
  studentId: string;
  weights: MatchWeights;
  thresholds: Record<string, number>;
  entries: MissionRankingEntry[];
}

export interface ObjectiveParts {
  sumMatch: number;
  sumInterest: number;
  unassignedCount: number;
  penalty: number;
}

export interface ObjectiveWeights {
  match: number;
  interest: number;
  unassigned: number;
  capacityPenalty: number;
}

export interface GaParams {
  populationSize: number;
  generations: number;
  stagnationLimit: number;
  tournamentSize: number;
  crossoverRate: number;
  geneSwapProb: number;
  mutationRate: number | null;
  elitism: number;
  seed: number;
}

export interface BoundViolation {
  missionId: string;
  minRequired: number;
  maxAllowed: number;
  got: number;
}

export interface PairArguments {
  studentId: string;
  missionId: string;
  arguments: ArgumentDoc[];
}

export interface PlanDoc {
  assignment: Record<string, string | null>;
  objectiveTotal: number;
  objectiveParts: ObjectiveParts;
  feasible: boolean;
  argumentsPerPair: PairArguments[];
  violations: BoundViolation[];
  objectiveWeights: ObjectiveWeights;
  gaParams: GaParams;
  matchWeights: MatchWeights;
}

export interface MissionSummary {
  id: string;
  companyId: string;
  cluster: number;
  capacity: number;
  minProposed: number;
  maxProposed: number;
  assignedCount: number;
}

export type RoundStatus = "Draft" | "Computed" | "Published";

export interface RoundSummary {
  roundId: string;
  status: RoundStatus;
  k: number;
  kEffective: number;
  missions: MissionSummary[];
  overrides: Record<string, string | null>;
  unassignedStudents: string[];
  currentPlan: PlanDoc | null;
}

export interface ConfigDoc {
  matchWeights: MatchWeights;
  objective: ObjectiveWeights;
  ga: GaParams;
  thresholds: Record<string, number>;
  clusterK: number | null;
  kMin: number;
  kMax: number;
  clusterSeed: number;
  roundsDir: string | null;
  listen: string | null;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  details: Record<string, unknown>;
}

export interface AssignRequest {
  matchWeights?: MatchWeights;
  objectiveWeights?: ObjectiveWeights;
  gaParams?: Partial<GaParams>;
}

export type Locale = "en" | "fr";
