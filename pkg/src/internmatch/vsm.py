"""Sparse concept vectors and cosine similarity.

Mission vectors use set semantics (weight 1 per distinct Action /
DomainAction / ActivityArea concept). Student vectors accumulate
(mark / 20) * coefficient per course keyword. SkillKeyword concepts are
not part of the mission space; they feed interest scoring instead.
"""

from __future__ import annotations

import math

from .ontology import Lexicon, Mark, Mission, StudentProfile, University

ConceptVector = dict  # conceptId -> non-negative weight; zero entries omitted


class AnnotationRequired(ValueError):
    """Mission has neither competencies nor activity areas."""


class UnresolvedTraining(ValueError):
    pass


def mission_vector(mission: Mission, lexicon: Lexicon) -> ConceptVector:
    if not mission.annotated():
        raise AnnotationRequired(f"mission {mission.id} is not annotated")
    vec: ConceptVector = {}
    for comp in mission.competencies:
        vec[comp.action] = 1.0
        vec[comp.domainAction] = 1.0
    for area in mission.activityAreas:
        vec[area] = 1.0
    return vec


def student_vector(student: StudentProfile, university: University,
                   marks: list[Mark]) -> ConceptVector:
    if student.academic.trainingId and \
            student.academic.trainingId not in university.training_ids():
        raise UnresolvedTraining(
            f"student {student.id}: trainingId {student.academic.trainingId}")
    vec: ConceptVector = {}
    for mark in marks:
        if mark.studentId != student.id:
            continue
        course = university.course(mark.courseId)
        if course is None:
            continue
        contribution = (mark.value / 20.0) * course.coefficient
        if contribution == 0:
            continue
        for concept in course.keywords:
            vec[concept] = vec.get(concept, 0.0) + contribution
    return {k: v for k, v in vec.items() if v != 0.0}


def norm(u: ConceptVector) -> float:
    return math.sqrt(sum(w * w for w in u.values()))


def dot(u: ConceptVector, v: ConceptVector) -> float:
    if len(v) < len(u):
        u, v = v, u
    return sum(w * v[k] for k, w in u.items() if k in v)


def cosine(u: ConceptVector, v: ConceptVector) -> float:
    nu, nv = norm(u), norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    value = dot(u, v) / (nu * nv)
    return min(1.0, max(0.0, value))


def unit(u: ConceptVector) -> ConceptVector:
    n = norm(u)
    if n == 0.0:
        return {}
    return {k: w / n for k, w in u.items()}


def to_doc(u: ConceptVector) -> dict:
    return {k: u[k] for k in sorted(u)}
