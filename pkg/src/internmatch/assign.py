"""Balanced student-to-mission assignment.

A genetic algorithm over chromosomes of per-student mission indices (with an
explicit "unassigned" gene) optimizes a scalarized objective; an exhaustive
brute-force oracle covers small instances for verification. Capacity is
enforced by a repair operator that evicts the lowest-score students from
over-full missions, so every evaluated individual is capacity-feasible
except where pinned genes force a violation.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

UNASSIGNED = -1

BRUTE_FORCE_MAX_STUDENTS = 10
BRUTE_FORCE_MAX_MISSIONS = 6


@dataclass
class ObjectiveWeights:
    match: float = 1.0
    interest: float = 0.25
    unassigned: float = 2.0
    capacityPenalty: float = 10.0

    def to_doc(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_doc(cls, doc: dict) -> "ObjectiveWeights":
        return cls(**doc)


@dataclass
class GaParams:
    populationSize: int = 100
    generations: int = 500
    stagnationLimit: int = 50
    tournamentSize: int = 3
    crossoverRate: float = 0.9
    geneSwapProb: float = 0.5
    mutationRate: float | None = None  # default 1/|students|
    elitism: int = 2
    seed: int = 0

    def to_doc(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_doc(cls, doc: dict) -> "GaParams":
        return cls(**doc)


@dataclass
class AssignmentInstance:
    studentIds: list[str]
    missionIds: list[str]
    score: list[list[float]]     # student x mission, MatchScore totals
    interest: list[list[float]]  # student x mission, interest sub-scores
    capacity: list[int]
    minProposed: list[int]
    maxProposed: list[int]
    pinned: dict[int, int] = field(default_factory=dict)  # studentIdx -> missionIdx

    def validate(self):
        n, m = len(self.studentIds), len(self.missionIds)
        if len(self.score) != n or len(self.interest) != n:
            raise ValueError("matrix row count mismatch")
        for row in itertools.chain(self.score, self.interest):
            if len(row) != m:
                raise ValueError("matrix column count mismatch")
            for v in row:
                if not (0.0 <= v <= 1.0):
                    raise ValueError(f"score {v} outside [0,1]")
        if len(self.capacity) != m or len(self.minProposed) != m \
                or len(self.maxProposed) != m:
            raise ValueError("per-mission arrays must match mission count")
        for c in self.capacity:
            if c < 1:
                raise ValueError("capacity must be >= 1")
        for si, mi in self.pinned.items():
            if not (0 <= si < n) or not (mi == UNASSIGNED or 0 <= mi < m):
                raise ValueError("pinned gene out of range")


@dataclass
class ObjectiveParts:
    sumMatch: float
    sumInterest: float
    unassignedCount: int
    penalty: float

    def to_doc(self) -> dict:
        return dict(self.__dict__)


@dataclass
class AssignmentPlan:
    assignment: dict[str, str | None]
    objectiveTotal: float
    objectiveParts: ObjectiveParts
    feasible: bool
    argumentsPerPair: list = field(default_factory=list)

    def to_doc(self) -> dict:
        return {
            "assignment": {sid: mid for sid, mid in sorted(self.assignment.items())},
            "objectiveTotal": self.objectiveTotal,
            "objectiveParts": self.objectiveParts.to_doc(),
            "feasible": self.feasible,
            "argumentsPerPair": self.argumentsPerPair,
        }


def objective(instance: AssignmentInstance, genes: list[int],
              weights: ObjectiveWeights | None = None
              ) -> tuple[float, ObjectiveParts]:
    w = weights or ObjectiveWeights()
    m = len(instance.missionIds)
    sum_match = sum_interest = 0.0
    unassigned = 0
    counts = [0] * m
    for si, gene in enumerate(genes):
        if gene == UNASSIGNED:
            unassigned += 1
        else:
            if not (0 <= gene < m):
                raise ValueError(f"unknown mission index {gene}")
            sum_match += instance.score[si][gene]
            sum_interest += instance.interest[si][gene]
            counts[gene] += 1
    violations = sum(max(0, counts[mi] - instance.capacity[mi])
                     for mi in range(m))
    penalty = w.capacityPenalty * violations
    total = (w.match * sum_match + w.interest * sum_interest
             - w.unassigned * unassigned - penalty)
    parts = ObjectiveParts(sumMatch=sum_match, sumInterest=sum_interest,
                           unassignedCount=unassigned, penalty=penalty)
    return total, parts


def _plan_from_genes(instance: AssignmentInstance, genes: list[int],
                     weights: ObjectiveWeights | None) -> AssignmentPlan:
    total, parts = objective(instance, genes, weights)
    assignment = {
        sid: (instance.missionIds[g] if g != UNASSIGNED else None)
        for sid, g in zip(instance.studentIds, genes)}
    return AssignmentPlan(assignment=assignment, objectiveTotal=total,
                          objectiveParts=parts,
                          feasible=(parts.penalty == 0.0))


def _lex_key(genes: list[int], m: int) -> tuple:
    # unassigned sorts after every mission index
    return tuple(m if g == UNASSIGNED else g for g in genes)


def brute_force_assign(instance: AssignmentInstance,
                       weights: ObjectiveWeights | None = None
                       ) -> AssignmentPlan:
    """Exact oracle by exhaustive enumeration; guarded to small instances."""
    instance.validate()
    n, m = len(instance.studentIds), len(instance.missionIds)
    if n > BRUTE_FORCE_MAX_STUDENTS or m > BRUTE_FORCE_MAX_MISSIONS:
        raise ValueError(
            f"brute force limited to {BRUTE_FORCE_MAX_STUDENTS} students x "
            f"{BRUTE_FORCE_MAX_MISSIONS} missions")
    choices = []
    for si in range(n):
        if si in instance.pinned:
            choices.append([instance.pinned[si]])
        else:
            choices.append([UNASSIGNED, *range(m)])
    best = None
    for combo in itertools.product(*choices):
        genes = list(combo)
        total, parts = objective(instance, genes, weights)
        key = (-total, parts.penalty != 0.0, _lex_key(genes, m))
        if best is None or key < best[0]:
            best = (key, genes)
    return _plan_from_genes(instance, best[1], weights)


def greedy_genes(instance: AssignmentInstance) -> list[int]:
    """Students in descending best-score order take their best open mission."""
    n, m = len(instance.studentIds), len(instance.missionIds)
    remaining = list(instance.capacity)
    genes = [UNASSIGNED] * n
    for si, mi in instance.pinned.items():
        genes[si] = mi
        if mi != UNASSIGNED:
            remaining[mi] -= 1
    order = sorted((si for si in range(n) if si not in instance.pinned),
                   key=lambda si: (-max(instance.score[si], default=0.0), si))
    for si in order:
        options = sorted(range(m), key=lambda mi: (-instance.score[si][mi], mi))
        for mi in options:
            if remaining[mi] > 0:
                genes[si] = mi
                remaining[mi] -= 1
                break
    return genes


def repair(instance: AssignmentInstance, genes: list[int]) -> list[int]:
    """Evict lowest-score unpinned students from over-capacity missions."""
    m = len(instance.missionIds)
    members: dict[int, list[int]] = {mi: [] for mi in range(m)}
    for si, g in enumerate(genes):
        if g != UNASSIGNED:
            members[g].append(si)
    for mi in range(m):
        over = len(members[mi]) - instance.capacity[mi]
        if over <= 0:
            continue
        evictable = sorted((si for si in members[mi]
                            if si not in instance.pinned),
                           key=lambda si: (instance.score[si][mi], -si))
        for si in evictable[:over]:
            genes[si] = UNASSIGNED
    return genes


def capacity_counts(instance: AssignmentInstance, genes: list[int]) -> list[int]:
    counts = [0] * len(instance.missionIds)
    for g in genes:
        if g != UNASSIGNED:
            counts[g] += 1
    return counts


def ga_assign(instance: AssignmentInstance,
              params: GaParams | None = None,
              weights: ObjectiveWeights | None = None,
              generation_hook=None) -> AssignmentPlan:
    """Deterministic GA given (instance, params); see module docstring."""
    instance.validate()
    params = params or GaParams()
    if params.populationSize < 2:
        raise ValueError("populationSize must be >= 2")
    n, m = len(instance.studentIds), len(instance.missionIds)
    rng = random.Random(params.seed)
    mutation_rate = (params.mutationRate if params.mutationRate is not None
                     else (1.0 / n if n else 0.0))

    def random_genes() -> list[int]:
        genes = [rng.randrange(m + 1) - 1 for _ in range(n)]
        for si, mi in instance.pinned.items():
            genes[si] = mi
        return genes

    def evaluate(genes: list[int]) -> tuple[list[int], float]:
        repaired = repair(instance, list(genes))
        total, _ = objective(instance, repaired, weights)
        return repaired, total

    population: list[tuple[list[int], float]] = []
    population.append(evaluate(greedy_genes(instance)))
    while len(population) < params.populationSize:
        population.append(evaluate(random_genes()))

    best_genes, best_fit = max(population, key=lambda p: p[1])
    best_genes = list(best_genes)
    stagnant = 0

    def tournament() -> list[int]:
        contenders = [population[rng.randrange(len(population))]
                      for _ in range(params.tournamentSize)]
        return max(contenders, key=lambda p: p[1])[0]

    for generation in range(params.generations):
        elite = sorted(population, key=lambda p: (-p[1], _lex_key(p[0], m)))
        next_pop: list[tuple[list[int], float]] = [
            (list(g), f) for g, f in elite[:params.elitism]]
        while len(next_pop) < params.populationSize:
            parent_a = list(tournament())
            parent_b = list(tournament())
            if rng.random() < params.crossoverRate:
                for gi in range(n):
                    if rng.random() < params.geneSwapProb:
                        parent_a[gi], parent_b[gi] = parent_b[gi], parent_a[gi]
            for child in (parent_a, parent_b):
                for gi in range(n):
                    if gi in instance.pinned:
                        child[gi] = instance.pinned[gi]
                    elif rng.random() < mutation_rate:
                        child[gi] = rng.randrange(m + 1) - 1
                next_pop.append(evaluate(child))
                if len(next_pop) >= params.populationSize:
                    break
        population = next_pop

        gen_best_genes, gen_best_fit = max(population, key=lambda p: p[1])
        if gen_best_fit > best_fit + 1e-12:
            best_genes, best_fit = list(gen_best_genes), gen_best_fit
            stagnant = 0
        else:
            stagnant += 1
        if generation_hook is not None:
            generation_hook(instance, population, best_fit)
        if stagnant >= params.stagnationLimit:
            break

    return _plan_from_genes(instance, best_genes, weights)


def check_proposal_bounds(plan: AssignmentPlan,
                          instance: AssignmentInstance) -> list[dict]:
    """Assigned counts must lie in [minProposed, min(maxProposed, capacity)]."""
    counts = {mid: 0 for mid in instance.missionIds}
    for mid in plan.assignment.values():
        if mid is not None:
            counts[mid] += 1
    violations = []
    for mi, mid in enumerate(instance.missionIds):
        lo = instance.minProposed[mi]
        hi = min(instance.maxProposed[mi], instance.capacity[mi])
        got = counts[mid]
        if not (lo <= got <= hi):
            violations.append({"missionId": mid, "minRequired": lo,
                               "maxAllowed": hi, "got": got})
    return violations
