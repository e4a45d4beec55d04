"""Rule-based justification arguments (A1..A6) for a student-mission pair.

All six rules are evaluated independently; every firing rule is reported,
sorted by code. Thresholds are configurable; the defaults live on
ArgumentThresholds.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import cluster as clustering
from . import vsm
from .match import KnowledgeBase, MatchScore
from .ontology import InstanceStore, Mission, StudentProfile


@dataclass
class ArgumentThresholds:
    theta1: float = 0.8           # A1 min cosine to a past success profile
    theta2Mark: float = 12.0      # A2 min mark in a covering course
    theta3Proto: float = 0.85     # A3 min mission-prototype similarity
    theta3Risk: float = 0.2       # A3 max difficulty ratio
    theta4: float = 14.0          # A4 min weighted mean mark
    theta5: float = 0.7           # A5 min interest score
    theta6Skill: float = 0.4      # A6 max skill cosine
    theta6Autonomy: float = 14.0  # A6 min autonomy score

    def to_doc(self) -> dict:
        return dict(self.__dict__)

    @classmethod
    def from_doc(cls, doc: dict) -> "ArgumentThresholds":
        return cls(**doc)


@dataclass
class Argument:
    code: str
    evidence: dict = field(default_factory=dict)
    text: str = ""

    def to_doc(self) -> dict:
        return {"code": self.code, "evidence": self.evidence, "text": self.text}


_TEMPLATES = {
    "en": {
        "A1": "The student's profile matches former student {pastStudentId} who "
              "completed a similar mission successfully: similarity {cosine:.2f} "
              "≥ {threshold:.2f}.",
        "A2": "The student has a sufficient level (mark ≥ {threshold:.0f}/20) "
              "in courses covering every required competency.",
        "A3": "The mission is standard (prototype similarity "
              "{prototypeSimilarity:.2f} ≥ {threshold:.2f}) and presents no "
              "risk (difficulty ratio {difficultyRatio:.2f}).",
        "A4": "The student has a high general level: weighted mean mark "
              "{weightedMeanMark:.1f}/20 ≥ {threshold:.0f}/20.",
        "A5": "The student is motivated: interest match {interestScore:.2f} "
              "≥ {threshold:.2f}.",
        "A6": "Skills only partially match (cosine {skillCos:.2f}), but the "
              "student shows strong autonomy ({autonomy:.0f}/20) and can learn "
              "quickly.",
    },
    "fr": {
        "A1": "Le profil de l'étudiant correspond à l'ancien "
              "étudiant {pastStudentId} qui a réussi une mission "
              "similaire : similarité {cosine:.2f} ≥ {threshold:.2f}.",
        "A2": "L'étudiant a un niveau suffisant (note ≥ "
              "{threshold:.0f}/20) dans les cours couvrant chaque compétence "
              "requise.",
        "A3": "La mission est standard (similarité au prototype "
              "{prototypeSimilarity:.2f} ≥ {threshold:.2f}) et sans risque "
              "(taux de difficulté {difficultyRatio:.2f}).",
        "A4": "L'étudiant a un haut niveau général : moyenne "
              "pondérée {weightedMeanMark:.1f}/20 ≥ "
              "{threshold:.0f}/20.",
        "A5": "L'étudiant est motivé : adéquation des "
              "intérêts {interestScore:.2f} ≥ {threshold:.2f}.",
        "A6": "Les compétences ne correspondent que partiellement (cosinus "
              "{skillCos:.2f}), mais l'étudiant montre une grande autonomie "
              "({autonomy:.0f}/20).",
    },
}


def render_argument(argument: Argument, locale: str = "en") -> str:
    template = _TEMPLATES[locale][argument.code]
    return template.format(**argument.evidence)


def weighted_mean_mark(student_id: str, store: InstanceStore) -> float | None:
    total, weight = 0.0, 0.0
    for mark in store.marks:
        if mark.studentId != student_id:
            continue
        course = store.university.course(mark.courseId)
        if course is None:
            continue
        total += mark.value * course.coefficient
        weight += course.coefficient
    if weight == 0:
        return None
    return total / weight


def _best_mark_for_concept(student_id: str, concept: str,
                           store: InstanceStore) -> tuple[str, float] | None:
    best: tuple[str, float] | None = None
    for mark in store.marks:
        if mark.studentId != student_id:
            continue
        course = store.university.course(mark.courseId)
        if course is None or concept not in course.keywords:
            continue
        if best is None or mark.value > best[1]:
            best = (course.id, mark.value)
    return best


def generate_arguments(student: StudentProfile, mission: Mission,
                       kb: KnowledgeBase, score: MatchScore,
                       store: InstanceStore,
                       thresholds: ArgumentThresholds | None = None,
                       locale: str = "en") -> list[Argument]:
    th = thresholds or ArgumentThresholds()
    out: list[Argument] = []

    mission_vec = vsm.mission_vector(mission, store.lexicon)
    cluster_index, _ = clustering.assign_to_cluster(mission_vec, kb.clusterModel)
    student_vec = vsm.student_vector(student, store.university,
                                     store.marks_of(student.id))

    # A1: similar to a former successful student of this cluster
    best_past = None
    for past_id, past_vec in kb.successProfiles.get(cluster_index, []):
        cos = vsm.cosine(student_vec, past_vec)
        if best_past is None or cos > best_past[1]:
            best_past = (past_id, cos)
    if best_past is not None and best_past[1] >= th.theta1:
        out.append(Argument("A1", {"pastStudentId": best_past[0],
                                   "cosine": best_past[1],
                                   "threshold": th.theta1}))

    # A2: sufficient mark in a covering course for every required concept
    required = sorted({c.action for c in mission.competencies}
                      | {c.domainAction for c in mission.competencies})
    if required:
        covered = []
        ok = True
        for concept in required:
            best = _best_mark_for_concept(student.id, concept, store)
            if best is None or best[1] < th.theta2Mark:
                ok = False
                break
            covered.append({"conceptId": concept, "courseId": best[0],
                            "mark": best[1]})
        if ok:
            out.append(Argument("A2", {"perConcept": covered,
                                       "threshold": th.theta2Mark}))

    # A3: standard, low-risk mission (property of the mission alone)
    proto_sim = vsm.cosine(mission_vec, kb.standardPrototype[cluster_index])
    history = mission.history
    ratio = (0.0 if history.totalMissions == 0
             else history.missionsWithDifficulties / history.totalMissions)
    if proto_sim >= th.theta3Proto and \
            (history.totalMissions == 0 or ratio <= th.theta3Risk):
        out.append(Argument("A3", {"prototypeSimilarity": proto_sim,
                                   "difficultyRatio": ratio,
                                   "threshold": th.theta3Proto,
                                   "riskThreshold": th.theta3Risk}))

    # A4: high general level (coefficient-weighted mean mark)
    mean_mark = weighted_mean_mark(student.id, store)
    if mean_mark is not None and mean_mark >= th.theta4:
        out.append(Argument("A4", {"weightedMeanMark": mean_mark,
                                   "threshold": th.theta4}))

    # A5: motivated (interest match)
    if score.interestScore >= th.theta5:
        out.append(Argument("A5", {"interestScore": score.interestScore,
                                   "threshold": th.theta5}))

    # A6: weak skill match compensated by autonomy
    if student.candidateRecord is not None:
        autonomy = student.candidateRecord.autonomy
        if score.skillCos < th.theta6Skill and autonomy >= th.theta6Autonomy:
            out.append(Argument("A6", {"skillCos": score.skillCos,
                                       "autonomy": autonomy,
                                       "skillThreshold": th.theta6Skill,
                                       "autonomyThreshold": th.theta6Autonomy}))

    for arg in out:
        arg.text = render_argument(arg, locale)
    return out
