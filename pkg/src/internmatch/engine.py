"""Pipeline glue: clustering, knowledge base, rankings and assignment runs.

Both the CLI and the HTTP service drive rounds through this module, which is
what keeps their outputs byte-identical.
"""

from __future__ import annotations

from . import annotate as annotation
from . import arguments as argrules
from . import assign as solver
from . import cluster as clustering
from . import match as matching
from . import vsm
from .config import Config
from .ontology import InstanceStore, Mission


class PipelineError(ValueError):
    pass


def annotated_missions(store: InstanceStore) -> list[Mission]:
    return sorted((m for m in store.missions if m.annotated()),
                  key=lambda m: m.id)


def mission_vectors(store: InstanceStore) -> dict:
    return {m.id: vsm.mission_vector(m, store.lexicon)
            for m in annotated_missions(store)}


def annotate_all(store: InstanceStore) -> tuple[InstanceStore, list[dict]]:
    """Annotate every mission that has raw text; returns (store, log entries)."""
    log = []
    missions = []
    for m in sorted(store.missions, key=lambda m: m.id):
        if m.rawText:
            result = annotation.extract_concepts(annotation.tokenize(m.rawText),
                                                 store.lexicon)
            missions.append(annotation.annotate_mission(m.rawText, store.lexicon, m))
            log.append(annotation.log_entry(m.id, result))
        else:
            missions.append(m)
    updated = InstanceStore(**{**store.__dict__})
    updated.missions = missions
    return updated, log


def build_cluster_model(store: InstanceStore, config: Config) -> clustering.ClusterModel:
    vectors = mission_vectors(store)
    if not vectors:
        raise PipelineError("no annotated missions")
    if config.clusterK is not None:
        k = min(config.clusterK, len(vectors))
    else:
        k_max = min(config.kMax, len(vectors))
        k_min = min(config.kMin, k_max)
        k = clustering.choose_k(vectors, k_min, k_max, config.clusterSeed)
    return clustering.kmeans(vectors, k, config.clusterSeed)


def build_rankings(store: InstanceStore, kb: matching.KnowledgeBase,
                   config: Config) -> dict[str, matching.RankedList]:
    students = sorted(store.students, key=lambda s: s.id)
    return {m.id: matching.rank_candidates(m, students, kb, store,
                                           config.matchWeights)
            for m in annotated_missions(store)}


def ranked_list_doc(ranked: matching.RankedList, store: InstanceStore,
                    kb: matching.KnowledgeBase, config: Config,
                    limit: int | None = None, locale: str = "en") -> dict:
    """RankedList JSON with full score decomposition and arguments."""
    mission = store.mission(ranked.missionId)
    entries = ranked.entries if limit is None else ranked.entries[:limit]
    out_entries = []
    for student_id, score in entries:
        student = store.student(student_id)
        args = argrules.generate_arguments(student, mission, kb, score, store,
                                           config.thresholds, locale)
        out_entries.append({"studentId": student_id, "score": score.to_doc(),
                            "arguments": [a.to_doc() for a in args]})
    alpha, beta, gamma = config.matchWeights
    return {"missionId": ranked.missionId,
            "weights": {"alpha": alpha, "beta": beta, "gamma": gamma},
            "thresholds": config.thresholds.to_doc(),
            "entries": out_entries}


def mission_ranking_doc(ranking: matching.MissionRanking, store: InstanceStore,
                        kb: matching.KnowledgeBase, config: Config,
                        limit: int | None = None, locale: str = "en") -> dict:
    student = store.student(ranking.studentId)
    entries = ranking.entries if limit is None else ranking.entries[:limit]
    out_entries = []
    for mission_id, score in entries:
        mission = store.mission(mission_id)
        args = argrules.generate_arguments(student, mission, kb, score, store,
                                           config.thresholds, locale)
        out_entries.append({"missionId": mission_id, "score": score.to_doc(),
                            "arguments": [a.to_doc() for a in args]})
    alpha, beta, gamma = config.matchWeights
    return {"studentId": ranking.studentId,
            "weights": {"alpha": alpha, "beta": beta, "gamma": gamma},
            "thresholds": config.thresholds.to_doc(),
            "entries": out_entries}


def _bounds_for_mission(store: InstanceStore, mission: Mission) -> tuple[int, int]:
    lo, hi = mission.minStudentsProposed, mission.maxStudentsProposed
    for c in store.constraints:  # company scope first, mission scope wins
        if c.companyId is not None and c.companyId == mission.companyId:
            lo, hi = c.minProposed, c.maxProposed
    for c in store.constraints:
        if c.missionId is not None and c.missionId == mission.id:
            lo, hi = c.minProposed, c.maxProposed
    return lo, hi


def build_instance(store: InstanceStore,
                   rankings: dict[str, matching.RankedList],
                   overrides: dict[str, str | None] | None = None
                   ) -> solver.AssignmentInstance:
    missions = annotated_missions(store)
    mission_ids = [m.id for m in missions]
    student_ids = sorted(s.id for s in store.students)
    score_by = {mid: dict(rankings[mid].entries) for mid in mission_ids}
    score = [[score_by[mid][sid].total for mid in mission_ids]
             for sid in student_ids]
    interest = [[score_by[mid][sid].interestScore for mid in mission_ids]
                for sid in student_ids]
    bounds = [_bounds_for_mission(store, m) for m in missions]
    pinned: dict[int, int] = {}
    for sid, mid in (overrides or {}).items():
        si = student_ids.index(sid)
        pinned[si] = solver.UNASSIGNED if mid is None else mission_ids.index(mid)
    return solver.AssignmentInstance(
        studentIds=student_ids, missionIds=mission_ids,
        score=score, interest=interest,
        capacity=[m.capacity for m in missions],
        minProposed=[b[0] for b in bounds],
        maxProposed=[b[1] for b in bounds],
        pinned=pinned)


def plan_doc(plan: solver.AssignmentPlan, instance: solver.AssignmentInstance,
             store: InstanceStore, kb: matching.KnowledgeBase,
             rankings: dict[str, matching.RankedList], config: Config,
             ga_params: solver.GaParams, locale: str = "en") -> dict:
    """AssignmentPlan JSON with violations, per-pair arguments, parameters."""
    args_per_pair = []
    for sid in sorted(plan.assignment):
        mid = plan.assignment[sid]
        if mid is None:
            continue
        score = dict(rankings[mid].entries)[sid]
        args = argrules.generate_arguments(store.student(sid), store.mission(mid),
                                           kb, score, store, config.thresholds,
                                           locale)
        args_per_pair.append({"studentId": sid, "missionId": mid,
                              "arguments": [a.to_doc() for a in args]})
    doc = plan.to_doc()
    doc["argumentsPerPair"] = args_per_pair
    doc["violations"] = solver.check_proposal_bounds(plan, instance)
    doc["objectiveWeights"] = config.objective.to_doc()
    doc["gaParams"] = ga_params.to_doc()
    alpha, beta, gamma = config.matchWeights
    doc["matchWeights"] = {"alpha": alpha, "beta": beta, "gamma": gamma}
    return doc


def run_assignment(store: InstanceStore, kb: matching.KnowledgeBase,
                   rankings: dict[str, matching.RankedList], config: Config,
                   ga_params: solver.GaParams | None = None,
                   overrides: dict[str, str | None] | None = None) -> dict:
    params = ga_params or config.ga
    instance = build_instance(store, rankings, overrides)
    plan = solver.ga_assign(instance, params, config.objective)
    return plan_doc(plan, instance, store, kb, rankings, config, params)
