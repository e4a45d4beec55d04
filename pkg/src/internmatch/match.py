"""Candidate/mission ranking backed by the past-placement knowledge base."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import cluster as clustering
from . import vsm
from .cluster import ClusterModel
from .ontology import Company, InstanceStore, Mission, StudentProfile

DEFAULT_WEIGHTS = (0.6, 0.2, 0.2)


@dataclass
class KnowledgeBase:
    clusterModel: ClusterModel
    # clusterIndex -> [(studentId, vector)] for past Success placements
    successProfiles: dict[int, list[tuple[str, dict]]]
    standardPrototype: dict[int, dict]  # clusterIndex -> centroid
    skipped: list[tuple[str, str]] = field(default_factory=list)

    def to_doc(self) -> dict:
        return {
            "clusterModel": self.clusterModel.to_doc(),
            "successProfiles": {
                str(ci): [{"studentId": sid, "vector": vsm.to_doc(vec)}
                          for sid, vec in profiles]
                for ci, profiles in self.successProfiles.items()},
            "standardPrototype": {str(ci): vsm.to_doc(v)
                                  for ci, v in self.standardPrototype.items()},
            "skipped": [list(s) for s in self.skipped],
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "KnowledgeBase":
        return cls(
            clusterModel=ClusterModel.from_doc(doc["clusterModel"]),
            successProfiles={
                int(ci): [(p["studentId"], dict(p["vector"])) for p in profiles]
                for ci, profiles in doc["successProfiles"].items()},
            standardPrototype={int(ci): dict(v)
                               for ci, v in doc["standardPrototype"].items()},
            skipped=[tuple(s) for s in doc.get("skipped", [])],
        )


@dataclass
class MatchScore:
    total: float
    skillCos: float
    prototypeCos: float
    interestScore: float
    weights: tuple[float, float, float]

    def to_doc(self) -> dict:
        alpha, beta, gamma = self.weights
        return {"total": self.total, "skillCos": self.skillCos,
                "prototypeCos": self.prototypeCos,
                "interestScore": self.interestScore,
                "weights": {"alpha": alpha, "beta": beta, "gamma": gamma}}


@dataclass
class RankedList:
    missionId: str
    entries: list[tuple[str, MatchScore]]  # sorted by total desc, id asc


@dataclass
class MissionRanking:
    studentId: str
    entries: list[tuple[str, MatchScore]]


def build_knowledge_base(store: InstanceStore,
                         cluster_model: ClusterModel) -> KnowledgeBase:
    """File past Success student profiles under their mission's cluster."""
    success: dict[int, list[tuple[str, dict]]] = {
        ci: [] for ci in range(cluster_model.k)}
    skipped: list[tuple[str, str]] = []
    for placement in sorted(store.pastPlacements,
                            key=lambda p: (p.missionId, p.studentId, p.year)):
        if placement.outcome != "Success":
            continue
        ci = cluster_model.cluster_of(placement.missionId)
        if ci is None:
            skipped.append((placement.missionId,
                            "mission not clustered (un-annotated or unknown)"))
            continue
        student = store.student(placement.studentId)
        if student is None:
            skipped.append((placement.studentId, "unknown student"))
            continue
        vec = vsm.student_vector(student, store.university,
                                 store.marks_of(student.id))
        success[ci].append((student.id, vec))
    prototypes = {ci: dict(cen)
                  for ci, cen in enumerate(cluster_model.centroids)}
    return KnowledgeBase(clusterModel=cluster_model, successProfiles=success,
                         standardPrototype=prototypes, skipped=skipped)


def interest_score(student: StudentProfile, mission: Mission,
                   company: Company | None) -> float:
    """Mean of keyword/location/company/salary sub-scores, each in [0,1].

    An empty preference list counts as satisfied. Salary has no mission-side
    counterpart and is always satisfied.
    """
    interests = student.interests

    if interests.missionKeywords:
        mission_concepts = ({c.action for c in mission.competencies}
                            | {c.domainAction for c in mission.competencies}
                            | set(mission.activityAreas))
        overlap = len(set(interests.missionKeywords) & mission_concepts)
        keyword = overlap / max(1, len(set(interests.missionKeywords)))
    else:
        keyword = 1.0

    if interests.preferredLocations:
        location_folded = mission.location.casefold()
        location = 1.0 if any(pref.casefold() in location_folded
                              for pref in interests.preferredLocations) else 0.0
    else:
        location = 1.0

    if interests.preferredCompanies:
        company_score = 1.0 if (company is not None
                                and company.id in interests.preferredCompanies) else 0.0
    else:
        company_score = 1.0

    salary = 1.0
    return (keyword + location + company_score + salary) / 4.0


def score_pair(student_vec: dict, mission_vec: dict, cluster_index: int,
               kb: KnowledgeBase, interest: float,
               weights: tuple[float, float, float]) -> MatchScore:
    alpha, beta, gamma = weights
    skill = vsm.cosine(student_vec, mission_vec)
    profiles = kb.successProfiles.get(cluster_index, [])
    if profiles:
        proto = max(vsm.cosine(student_vec, past_vec)
                    for _, past_vec in profiles)
    else:
        proto = vsm.cosine(student_vec, kb.standardPrototype[cluster_index])
    total = alpha * skill + beta * proto + gamma * interest
    return MatchScore(total=total, skillCos=skill, prototypeCos=proto,
                      interestScore=interest, weights=weights)


def _check_weights(weights):
    alpha, beta, gamma = weights
    if min(alpha, beta, gamma) < 0 or abs(alpha + beta + gamma - 1.0) > 1e-9:
        raise ValueError("weights must be non-negative and sum to 1")


def _pair_score(student: StudentProfile, mission: Mission, store: InstanceStore,
                kb: KnowledgeBase, weights) -> MatchScore:
    mission_vec = vsm.mission_vector(mission, store.lexicon)
    cluster_index, _ = clustering.assign_to_cluster(mission_vec, kb.clusterModel)
    student_vec = vsm.student_vector(student, store.university,
                                     store.marks_of(student.id))
    interest = interest_score(student, mission, store.company(mission.companyId))
    return score_pair(student_vec, mission_vec, cluster_index, kb, interest,
                      weights)


def rank_candidates(mission: Mission, students: list[StudentProfile],
                    kb: KnowledgeBase, store: InstanceStore,
                    weights: tuple[float, float, float] = DEFAULT_WEIGHTS
                    ) -> RankedList:
    _check_weights(weights)
    scored = [(s.id, _pair_score(s, mission, store, kb, weights))
              for s in students]
    scored.sort(key=lambda e: (-e[1].total, e[0]))
    return RankedList(missionId=mission.id, entries=scored)


def rank_missions(student: StudentProfile, missions: list[Mission],
                  kb: KnowledgeBase, store: InstanceStore,
                  weights: tuple[float, float, float] = DEFAULT_WEIGHTS
                  ) -> MissionRanking:
    _check_weights(weights)
    scored = [(m.id, _pair_score(student, m, store, kb, weights))
              for m in missions]
    scored.sort(key=lambda e: (-e[1].total, e[0]))
    return MissionRanking(studentId=student.id, entries=scored)
