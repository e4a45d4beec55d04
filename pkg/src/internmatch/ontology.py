"""Controlled vocabulary, typed instances, validation and persistence.

The store is a plain value: parsing is strict (unknown JSON fields are
rejected), while domain invariants are checked by ``validate_store`` which
reports every violation instead of failing on the first one.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from datetime import date

from .textnorm import normalize_phrase

CATEGORIES = ("Action", "DomainAction", "ActivityArea", "SkillKeyword")
STATUSES = ("VAE", "InitialTraining", "ContinuousTraining")
OUTCOMES = ("Success", "Difficulty")

SCORE_MIN, SCORE_MAX = 0.0, 20.0


class StoreFormatError(ValueError):
    """A JSON document does not conform to the store schema."""


class InvalidStoreError(ValueError):
    """An operation requiring a valid store received an invalid one."""

    def __init__(self, report):
        super().__init__(f"store invalid: {len(report)} violation(s)")
        self.report = report


# ---------------------------------------------------------------------------
# Domain types


@dataclass
class ConceptEntry:
    id: str
    label: str
    category: str
    synonyms: list[str] = field(default_factory=list)


@dataclass
class Lexicon:
    entries: list[ConceptEntry] = field(default_factory=list)
    version: str = ""
    _index: dict | None = field(default=None, compare=False, repr=False)

    def index(self) -> dict[tuple[str, str], str]:
        """(category, normalized surface) -> concept id. First entry wins."""
        if self._index is None:
            idx: dict[tuple[str, str], str] = {}
            for e in self.entries:
                for surface in [e.label, *e.synonyms]:
                    key = (e.category, normalize_phrase(surface))
                    idx.setdefault(key, e.id)
            self._index = idx
        return self._index

    def entry(self, concept_id: str) -> ConceptEntry | None:
        for e in self.entries:
            if e.id == concept_id:
                return e
        return None

    def category_of(self, concept_id: str) -> str | None:
        e = self.entry(concept_id)
        return e.category if e else None


def lookup_concept(lexicon: Lexicon, category: str, surface: str) -> str | None:
    """Resolve a surface form within a category, or None."""
    return lexicon.index().get((category, normalize_phrase(surface)))


@dataclass(frozen=True)
class Competency:
    action: str
    domainAction: str


@dataclass
class Task:
    label: str
    startDate: date
    endDate: date


@dataclass
class Experience:
    description: str = ""
    months: int = 0


@dataclass
class MissionHistory:
    yearsPartnership: int = 0
    totalMissions: int = 0
    missionsWithDifficulties: int = 0


@dataclass
class Mission:
    id: str
    companyId: str
    location: str = ""
    competencies: list[Competency] = field(default_factory=list)
    activityAreas: list[str] = field(default_factory=list)
    experienceRequired: Experience = field(default_factory=Experience)
    project: str = ""
    tasks: list[Task] = field(default_factory=list)
    durationWeeks: int = 1
    history: MissionHistory = field(default_factory=MissionHistory)
    minStudentsProposed: int = 1
    maxStudentsProposed: int = 1
    capacity: int = 1
    rawText: str = ""

    def annotated(self) -> bool:
        return bool(self.competencies or self.activityAreas)


@dataclass
class Company:
    id: str
    name: str
    importance: str = ""
    employeeCount: int = 0


@dataclass
class Administrative:
    firstName: str = ""
    lastName: str = ""
    phone: str = ""
    address: str = ""
    email: str = ""
    nationality: str = ""
    age: int = 18


@dataclass
class Academic:
    degree: str = ""
    academicYear: str = ""
    trainingId: str = ""


@dataclass
class EvaluationRecord:
    oralPresentation: float = 0.0
    qualityOfWork: float = 0.0
    behavior: float = 0.0


@dataclass
class CandidateRecord:
    experienceQuality: float = 0.0
    projectManagementKnowledge: float = 0.0
    cvOverallRating: float = 0.0
    autonomy: float = 0.0


@dataclass
class Interests:
    missionKeywords: list[str] = field(default_factory=list)
    preferredLocations: list[str] = field(default_factory=list)
    minSalary: float = 0.0
    preferredCompanies: list[str] = field(default_factory=list)


@dataclass
class StudentProfile:
    id: str
    administrative: Administrative = field(default_factory=Administrative)
    academic: Academic = field(default_factory=Academic)
    status: str = "InitialTraining"
    role: str | None = None
    evaluationRecord: EvaluationRecord | None = None
    candidateRecord: CandidateRecord | None = None
    interests: Interests = field(default_factory=Interests)


@dataclass
class Course:
    id: str
    label: str = ""
    keywords: list[str] = field(default_factory=list)
    hours: float = 1.0
    ects: float = 0.0
    coefficient: float = 1.0
    teacherId: str = ""


@dataclass
class Module:
    id: str
    label: str = ""
    courses: list[Course] = field(default_factory=list)


@dataclass
class TeachingUnit:
    id: str
    label: str = ""
    modules: list[Module] = field(default_factory=list)


@dataclass
class Training:
    id: str
    label: str = ""
    teachingUnits: list[TeachingUnit] = field(default_factory=list)


@dataclass
class Department:
    id: str
    label: str = ""
    trainings: list[Training] = field(default_factory=list)


@dataclass
class Partnership:
    departmentId: str
    companyId: str
    sinceYear: int = 0


@dataclass
class University:
    departments: list[Department] = field(default_factory=list)
    partnerships: list[Partnership] = field(default_factory=list)

    def courses(self) -> list[tuple[str, Course]]:
        """All (moduleId, course) pairs in hierarchy order."""
        out = []
        for d in self.departments:
            for t in d.trainings:
                for u in t.teachingUnits:
                    for m in u.modules:
                        for c in m.courses:
                            out.append((m.id, c))
        return out

    def course(self, course_id: str) -> Course | None:
        for _, c in self.courses():
            if c.id == course_id:
                return c
        return None

    def training_ids(self) -> set[str]:
        return {t.id for d in self.departments for t in d.trainings}


@dataclass
class Mark:
    studentId: str
    courseId: str
    value: float


@dataclass
class UniversityConstraint:
    missionId: str | None = None
    companyId: str | None = None
    minProposed: int = 0
    maxProposed: int = 0


@dataclass
class PastPlacement:
    missionId: str
    studentId: str
    outcome: str
    year: int = 0


@dataclass
class InstanceStore:
    lexicon: Lexicon = field(default_factory=Lexicon)
    companies: list[Company] = field(default_factory=list)
    missions: list[Mission] = field(default_factory=list)
    students: list[StudentProfile] = field(default_factory=list)
    university: University = field(default_factory=University)
    marks: list[Mark] = field(default_factory=list)
    pastPlacements: list[PastPlacement] = field(default_factory=list)
    constraints: list[UniversityConstraint] = field(default_factory=list)

    def mission(self, mid: str) -> Mission | None:
        return next((m for m in self.missions if m.id == mid), None)

    def company(self, cid: str) -> Company | None:
        return next((c for c in self.companies if c.id == cid), None)

    def student(self, sid: str) -> StudentProfile | None:
        return next((s for s in self.students if s.id == sid), None)

    def marks_of(self, sid: str) -> list[Mark]:
        return [m for m in self.marks if m.studentId == sid]


# ---------------------------------------------------------------------------
# Strict JSON parsing

def _obj(doc, where: str, required: tuple = (), optional: tuple = ()) -> dict:
    if not isinstance(doc, dict):
        raise StoreFormatError(f"{where}: expected object, got {type(doc).__name__}")
    allowed = set(required) | set(optional)
    extra = sorted(set(doc) - allowed)
    if extra:
        raise StoreFormatError(f"{where}: unknown fields {extra}")
    missing = sorted(set(required) - set(doc))
    if missing:
        raise StoreFormatError(f"{where}: missing fields {missing}")
    return doc


def _str(doc, where):
    if not isinstance(doc, str):
        raise StoreFormatError(f"{where}: expected string")
    return doc


def _int(doc, where):
    if not isinstance(doc, int) or isinstance(doc, bool):
        raise StoreFormatError(f"{where}: expected integer")
    return doc


def _num(doc, where):
    if isinstance(doc, bool) or not isinstance(doc, (int, float)):
        raise StoreFormatError(f"{where}: expected number")
    return float(doc)


def _strlist(doc, where):
    if not isinstance(doc, list):
        raise StoreFormatError(f"{where}: expected array")
    return [_str(v, f"{where}[{i}]") for i, v in enumerate(doc)]


def _date(doc, where) -> date:
    try:
        return date.fromisoformat(_str(doc, where))
    except ValueError as exc:
        raise StoreFormatError(f"{where}: bad ISO date: {exc}") from None


def _parse_entry(d, where) -> ConceptEntry:
    _obj(d, where, required=("id", "label", "category"), optional=("synonyms",))
    return ConceptEntry(
        id=_str(d["id"], f"{where}.id"),
        label=_str(d["label"], f"{where}.label"),
        category=_str(d["category"], f"{where}.category"),
        synonyms=_strlist(d.get("synonyms", []), f"{where}.synonyms"),
    )


def _parse_lexicon(d) -> Lexicon:
    _obj(d, "lexicon", optional=("version", "entries"))
    return Lexicon(
        entries=[_parse_entry(e, f"lexicon.entries[{i}]")
                 for i, e in enumerate(d.get("entries", []))],
        version=_str(d.get("version", ""), "lexicon.version"),
    )


def _parse_mission(d, where) -> Mission:
    _obj(d, where, required=("id", "companyId"),
         optional=("location", "competencies", "activityAreas", "experienceRequired",
                   "project", "tasks", "durationWeeks", "history",
                   "minStudentsProposed", "maxStudentsProposed", "capacity", "rawText"))
    comps = []
    for i, c in enumerate(d.get("competencies", [])):
        _obj(c, f"{where}.competencies[{i}]", required=("action", "domainAction"))
        comps.append(Competency(_str(c["action"], "action"),
                                _str(c["domainAction"], "domainAction")))
    tasks = []
    for i, t in enumerate(d.get("tasks", [])):
        tw = f"{where}.tasks[{i}]"
        _obj(t, tw, required=("label", "startDate", "endDate"))
        tasks.append(Task(_str(t["label"], f"{tw}.label"),
                          _date(t["startDate"], f"{tw}.startDate"),
                          _date(t["endDate"], f"{tw}.endDate")))
    exp = d.get("experienceRequired", {})
    _obj(exp, f"{where}.experienceRequired", optional=("description", "months"))
    hist = d.get("history", {})
    _obj(hist, f"{where}.history",
         optional=("yearsPartnership", "totalMissions", "missionsWithDifficulties"))
    return Mission(
        id=_str(d["id"], f"{where}.id"),
        companyId=_str(d["companyId"], f"{where}.companyId"),
        location=_str(d.get("location", ""), f"{where}.location"),
        competencies=comps,
        activityAreas=_strlist(d.get("activityAreas", []), f"{where}.activityAreas"),
        experienceRequired=Experience(
            description=_str(exp.get("description", ""), "description"),
            months=_int(exp.get("months", 0), "months")),
        project=_str(d.get("project", ""), f"{where}.project"),
        tasks=tasks,
        durationWeeks=_int(d.get("durationWeeks", 1), f"{where}.durationWeeks"),
        history=MissionHistory(
            yearsPartnership=_int(hist.get("yearsPartnership", 0), "yearsPartnership"),
            totalMissions=_int(hist.get("totalMissions", 0), "totalMissions"),
            missionsWithDifficulties=_int(hist.get("missionsWithDifficulties", 0),
                                          "missionsWithDifficulties")),
        minStudentsProposed=_int(d.get("minStudentsProposed", 1), f"{where}.minStudentsProposed"),
        maxStudentsProposed=_int(d.get("maxStudentsProposed", 1), f"{where}.maxStudentsProposed"),
        capacity=_int(d.get("capacity", 1), f"{where}.capacity"),
        rawText=_str(d.get("rawText", ""), f"{where}.rawText"),
    )


def _parse_company(d, where) -> Company:
    _obj(d, where, required=("id", "name"), optional=("importance", "employeeCount"))
    return Company(
        id=_str(d["id"], f"{where}.id"),
        name=_str(d["name"], f"{where}.name"),
        importance=_str(d.get("importance", ""), f"{where}.importance"),
        employeeCount=_int(d.get("employeeCount", 0), f"{where}.employeeCount"),
    )


def _parse_student(d, where) -> StudentProfile:
    _obj(d, where, required=("id",),
         optional=("administrative", "academic", "status", "role",
                   "evaluationRecord", "candidateRecord", "interests"))
    adm = d.get("administrative", {})
    _obj(adm, f"{where}.administrative",
         optional=("firstName", "lastName", "phone", "address", "email",
                   "nationality", "age"))
    aca = d.get("academic", {})
    _obj(aca, f"{where}.academic", optional=("degree", "academicYear", "trainingId"))
    ev = d.get("evaluationRecord")
    if ev is not None:
        _obj(ev, f"{where}.evaluationRecord",
             optional=("oralPresentation", "qualityOfWork", "behavior"))
        ev = EvaluationRecord(
            oralPresentation=_num(ev.get("oralPresentation", 0), "oralPresentation"),
            qualityOfWork=_num(ev.get("qualityOfWork", 0), "qualityOfWork"),
            behavior=_num(ev.get("behavior", 0), "behavior"))
    cr = d.get("candidateRecord")
    if cr is not None:
        _obj(cr, f"{where}.candidateRecord",
             optional=("experienceQuality", "projectManagementKnowledge",
                       "cvOverallRating", "autonomy"))
        cr = CandidateRecord(
            experienceQuality=_num(cr.get("experienceQuality", 0), "experienceQuality"),
            projectManagementKnowledge=_num(cr.get("projectManagementKnowledge", 0),
                                            "projectManagementKnowledge"),
            cvOverallRating=_num(cr.get("cvOverallRating", 0), "cvOverallRating"),
            autonomy=_num(cr.get("autonomy", 0), "autonomy"))
    itr = d.get("interests", {})
    _obj(itr, f"{where}.interests",
         optional=("missionKeywords", "preferredLocations", "minSalary",
                   "preferredCompanies"))
    role = d.get("role")
    if role is not None:
        role = _str(role, f"{where}.role")
    return StudentProfile(
        id=_str(d["id"], f"{where}.id"),
        administrative=Administrative(
            firstName=_str(adm.get("firstName", ""), "firstName"),
            lastName=_str(adm.get("lastName", ""), "lastName"),
            phone=_str(adm.get("phone", ""), "phone"),
            address=_str(adm.get("address", ""), "address"),
            email=_str(adm.get("email", ""), "email"),
            nationality=_str(adm.get("nationality", ""), "nationality"),
            age=_int(adm.get("age", 18), "age")),
        academic=Academic(
            degree=_str(aca.get("degree", ""), "degree"),
            academicYear=_str(aca.get("academicYear", ""), "academicYear"),
            trainingId=_str(aca.get("trainingId", ""), "trainingId")),
        status=_str(d.get("status", "InitialTraining"), f"{where}.status"),
        role=role,
        evaluationRecord=ev,
        candidateRecord=cr,
        interests=Interests(
            missionKeywords=_strlist(itr.get("missionKeywords", []), "missionKeywords"),
            preferredLocations=_strlist(itr.get("preferredLocations", []),
                                        "preferredLocations"),
            minSalary=_num(itr.get("minSalary", 0), "minSalary"),
            preferredCompanies=_strlist(itr.get("preferredCompanies", []),
                                        "preferredCompanies")),
    )


def _parse_course(d, where) -> Course:
    _obj(d, where, required=("id",),
         optional=("label", "keywords", "hours", "ects", "coefficient", "teacherId"))
    return Course(
        id=_str(d["id"], f"{where}.id"),
        label=_str(d.get("label", ""), f"{where}.label"),
        keywords=_strlist(d.get("keywords", []), f"{where}.keywords"),
        hours=_num(d.get("hours", 1.0), f"{where}.hours"),
        ects=_num(d.get("ects", 0.0), f"{where}.ects"),
        coefficient=_num(d.get("coefficient", 1.0), f"{where}.coefficient"),
        teacherId=_str(d.get("teacherId", ""), f"{where}.teacherId"),
    )


def _parse_university(d) -> University:
    _obj(d, "university", optional=("departments", "partnerships"))
    deps = []
    for i, dd in enumerate(d.get("departments", [])):
        dw = f"university.departments[{i}]"
        _obj(dd, dw, required=("id",), optional=("label", "trainings"))
        trainings = []
        for j, td in enumerate(dd.get("trainings", [])):
            tw = f"{dw}.trainings[{j}]"
            _obj(td, tw, required=("id",), optional=("label", "teachingUnits"))
            units = []
            for k, ud in enumerate(td.get("teachingUnits", [])):
                uw = f"{tw}.teachingUnits[{k}]"
                _obj(ud, uw, required=("id",), optional=("label", "modules"))
                modules = []
                for n, md in enumerate(ud.get("modules", [])):
                    mw = f"{uw}.modules[{n}]"
                    _obj(md, mw, required=("id",), optional=("label", "courses"))
                    courses = [_parse_course(cd, f"{mw}.courses[{p}]")
                               for p, cd in enumerate(md.get("courses", []))]
                    modules.append(Module(id=_str(md["id"], mw),
                                          label=_str(md.get("label", ""), mw),
                                          courses=courses))
                units.append(TeachingUnit(id=_str(ud["id"], uw),
                                          label=_str(ud.get("label", ""), uw),
                                          modules=modules))
            trainings.append(Training(id=_str(td["id"], tw),
                                      label=_str(td.get("label", ""), tw),
                                      teachingUnits=units))
        deps.append(Department(id=_str(dd["id"], dw),
                               label=_str(dd.get("label", ""), dw),
                               trainings=trainings))
    parts = []
    for i, pd in enumerate(d.get("partnerships", [])):
        pw = f"university.partnerships[{i}]"
        _obj(pd, pw, required=("departmentId", "companyId"), optional=("sinceYear",))
        parts.append(Partnership(departmentId=_str(pd["departmentId"], pw),
                                 companyId=_str(pd["companyId"], pw),
                                 sinceYear=_int(pd.get("sinceYear", 0), pw)))
    return University(departments=deps, partnerships=parts)


def store_from_doc(doc) -> InstanceStore:
    """Parse a full store document. Strict: unknown fields are rejected."""
    _obj(doc, "store",
         optional=("lexicon", "companies", "missions", "students", "university",
                   "marks", "pastPlacements", "constraints"))
    marks = []
    for i, md in enumerate(doc.get("marks", [])):
        mw = f"marks[{i}]"
        _obj(md, mw, required=("studentId", "courseId", "value"))
        marks.append(Mark(studentId=_str(md["studentId"], mw),
                          courseId=_str(md["courseId"], mw),
                          value=_num(md["value"], mw)))
    placements = []
    for i, pd in enumerate(doc.get("pastPlacements", [])):
        pw = f"pastPlacements[{i}]"
        _obj(pd, pw, required=("missionId", "studentId", "outcome"), optional=("year",))
        placements.append(PastPlacement(missionId=_str(pd["missionId"], pw),
                                        studentId=_str(pd["studentId"], pw),
                                        outcome=_str(pd["outcome"], pw),
                                        year=_int(pd.get("year", 0), pw)))
    constraints = []
    for i, cd in enumerate(doc.get("constraints", [])):
        cw = f"constraints[{i}]"
        _obj(cd, cw, optional=("missionId", "companyId", "minProposed", "maxProposed"))
        mid = cd.get("missionId")
        cid = cd.get("companyId")
        constraints.append(UniversityConstraint(
            missionId=_str(mid, cw) if mid is not None else None,
            companyId=_str(cid, cw) if cid is not None else None,
            minProposed=_int(cd.get("minProposed", 0), cw),
            maxProposed=_int(cd.get("maxProposed", 0), cw)))
    return InstanceStore(
        lexicon=_parse_lexicon(doc.get("lexicon", {})),
        companies=[_parse_company(c, f"companies[{i}]")
                   for i, c in enumerate(doc.get("companies", []))],
        missions=[_parse_mission(m, f"missions[{i}]")
                  for i, m in enumerate(doc.get("missions", []))],
        students=[_parse_student(s, f"students[{i}]")
                  for i, s in enumerate(doc.get("students", []))],
        university=_parse_university(doc.get("university", {})),
        marks=marks,
        pastPlacements=placements,
        constraints=constraints,
    )


# ---------------------------------------------------------------------------
# Serialization back to the document form (canonical: collections sorted by id)


def _entry_doc(e: ConceptEntry):
    return {"id": e.id, "label": e.label, "category": e.category,
            "synonyms": list(e.synonyms)}


def _mission_doc(m: Mission):
    return {
        "id": m.id, "companyId": m.companyId, "location": m.location,
        "competencies": [{"action": c.action, "domainAction": c.domainAction}
                         for c in m.competencies],
        "activityAreas": list(m.activityAreas),
        "experienceRequired": {"description": m.experienceRequired.description,
                               "months": m.experienceRequired.months},
        "project": m.project,
        "tasks": [{"label": t.label, "startDate": t.startDate.isoformat(),
                   "endDate": t.endDate.isoformat()} for t in m.tasks],
        "durationWeeks": m.durationWeeks,
        "history": {"yearsPartnership": m.history.yearsPartnership,
                    "totalMissions": m.history.totalMissions,
                    "missionsWithDifficulties": m.history.missionsWithDifficulties},
        "minStudentsProposed": m.minStudentsProposed,
        "maxStudentsProposed": m.maxStudentsProposed,
        "capacity": m.capacity,
        "rawText": m.rawText,
    }


def _student_doc(s: StudentProfile):
    doc = {
        "id": s.id,
        "administrative": {
            "firstName": s.administrative.firstName,
            "lastName": s.administrative.lastName,
            "phone": s.administrative.phone,
            "address": s.administrative.address,
            "email": s.administrative.email,
            "nationality": s.administrative.nationality,
            "age": s.administrative.age,
        },
        "academic": {"degree": s.academic.degree,
                     "academicYear": s.academic.academicYear,
                     "trainingId": s.academic.trainingId},
        "status": s.status,
        "interests": {
            "missionKeywords": list(s.interests.missionKeywords),
            "preferredLocations": list(s.interests.preferredLocations),
            "minSalary": s.interests.minSalary,
            "preferredCompanies": list(s.interests.preferredCompanies),
        },
    }
    if s.role is not None:
        doc["role"] = s.role
    if s.evaluationRecord is not None:
        ev = s.evaluationRecord
        doc["evaluationRecord"] = {"oralPresentation": ev.oralPresentation,
                                   "qualityOfWork": ev.qualityOfWork,
                                   "behavior": ev.behavior}
    if s.candidateRecord is not None:
        cr = s.candidateRecord
        doc["candidateRecord"] = {
            "experienceQuality": cr.experienceQuality,
            "projectManagementKnowledge": cr.projectManagementKnowledge,
            "cvOverallRating": cr.cvOverallRating,
            "autonomy": cr.autonomy,
        }
    return doc


def _university_doc(u: University):
    return {
        "departments": [
            {"id": d.id, "label": d.label,
             "trainings": [
                 {"id": t.id, "label": t.label,
                  "teachingUnits": [
                      {"id": tu.id, "label": tu.label,
                       "modules": [
                           {"id": mo.id, "label": mo.label,
                            "courses": [
                                {"id": c.id, "label": c.label,
                                 "keywords": list(c.keywords), "hours": c.hours,
                                 "ects": c.ects, "coefficient": c.coefficient,
                                 "teacherId": c.teacherId}
                                for c in mo.courses]}
                           for mo in tu.modules]}
                      for tu in t.teachingUnits]}
                 for t in d.trainings]}
            for d in u.departments],
        "partnerships": [{"departmentId": p.departmentId, "companyId": p.companyId,
                          "sinceYear": p.sinceYear}
                         for p in u.partnerships],
    }


def store_to_doc(store: InstanceStore) -> dict:
    """Canonical document form: entity collections sorted by id."""
    constraint_doc = []
    for c in store.constraints:
        d = {"minProposed": c.minProposed, "maxProposed": c.maxProposed}
        if c.missionId is not None:
            d["missionId"] = c.missionId
        if c.companyId is not None:
            d["companyId"] = c.companyId
        constraint_doc.append(d)
    return {
        "lexicon": {"version": store.lexicon.version,
                    "entries": sorted((_entry_doc(e) for e in store.lexicon.entries),
                                      key=lambda d: d["id"])},
        "companies": sorted((
            {"id": c.id, "name": c.name, "importance": c.importance,
             "employeeCount": c.employeeCount} for c in store.companies),
            key=lambda d: d["id"]),
        "missions": sorted((_mission_doc(m) for m in store.missions),
                           key=lambda d: d["id"]),
        "students": sorted((_student_doc(s) for s in store.students),
                           key=lambda d: d["id"]),
        "university": _university_doc(store.university),
        "marks": sorted((
            {"studentId": m.studentId, "courseId": m.courseId, "value": m.value}
            for m in store.marks),
            key=lambda d: (d["studentId"], d["courseId"])),
        "pastPlacements": sorted((
            {"missionId": p.missionId, "studentId": p.studentId,
             "outcome": p.outcome, "year": p.year} for p in store.pastPlacements),
            key=lambda d: (d["missionId"], d["studentId"], d["year"])),
        "constraints": constraint_doc,
    }


def load_store(path) -> InstanceStore:
    with open(path, encoding="utf-8") as fh:
        return store_from_doc(json.load(fh))


def dump_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def save_store(store: InstanceStore, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dump_json(store_to_doc(store)))


# ---------------------------------------------------------------------------
# Validation

ValidationReport = list  # list[tuple[entityId, violation]]


def _score_ok(v) -> bool:
    return SCORE_MIN <= v <= SCORE_MAX


def validate_store(store: InstanceStore) -> list[tuple[str, str]]:
    """Check every invariant and cross-reference; list all violations."""
    report: list[tuple[str, str]] = []
    lex = store.lexicon

    seen_ids: dict[str, str] = {}
    surface_map: dict[tuple[str, str], str] = {}
    for e in lex.entries:
        if e.id in seen_ids:
            report.append((e.id, "duplicate concept id"))
        seen_ids[e.id] = "concept"
        if not e.label:
            report.append((e.id, "empty label"))
        if e.category not in CATEGORIES:
            report.append((e.id, f"unknown category {e.category!r}"))
        for surface in [e.label, *e.synonyms]:
            key = (e.category, normalize_phrase(surface))
            prev = surface_map.get(key)
            if prev is not None and prev != e.id:
                report.append((e.id, f"surface {surface!r} already maps to {prev} "
                                     f"in category {e.category}"))
            surface_map.setdefault(key, e.id)

    concept_cat = {e.id: e.category for e in lex.entries}

    def check_kind_id(entity_id: str, kind: str):
        prev = seen_ids.get(entity_id)
        if prev is not None:
            report.append((entity_id, f"id used by both {prev} and {kind}"))
        else:
            seen_ids[entity_id] = kind

    company_ids = set()
    for c in store.companies:
        if c.id in company_ids:
            report.append((c.id, "duplicate company id"))
        company_ids.add(c.id)
        check_kind_id(c.id, "company")
        if c.employeeCount < 0:
            report.append((c.id, "employeeCount negative"))

    mission_ids = set()
    for m in store.missions:
        if m.id in mission_ids:
            report.append((m.id, "duplicate mission id"))
        mission_ids.add(m.id)
        check_kind_id(m.id, "mission")
        if m.companyId not in company_ids:
            report.append((m.id, f"unresolved companyId {m.companyId}"))
        for comp in m.competencies:
            if concept_cat.get(comp.action) != "Action":
                report.append((m.id, f"competency action {comp.action} does not "
                                     "resolve to an Action concept"))
            if concept_cat.get(comp.domainAction) != "DomainAction":
                report.append((m.id, f"competency domainAction {comp.domainAction} "
                                     "does not resolve to a DomainAction concept"))
        for area in m.activityAreas:
            if concept_cat.get(area) != "ActivityArea":
                report.append((m.id, f"activity area {area} does not resolve to "
                                     "an ActivityArea concept"))
        for t in m.tasks:
            if t.startDate > t.endDate:
                report.append((m.id, f"task {t.label!r} startDate after endDate"))
        if m.experienceRequired.months < 0:
            report.append((m.id, "experience months negative"))
        if m.durationWeeks <= 0:
            report.append((m.id, "durationWeeks must be positive"))
        if m.minStudentsProposed < 1:
            report.append((m.id, "minStudentsProposed must be >= 1"))
        if m.maxStudentsProposed < m.minStudentsProposed:
            report.append((m.id, "maxStudentsProposed < minStudentsProposed"))
        if m.capacity < 1:
            report.append((m.id, "capacity must be >= 1"))
        h = m.history
        if min(h.yearsPartnership, h.totalMissions, h.missionsWithDifficulties) < 0:
            report.append((m.id, "negative history counter"))
        if h.missionsWithDifficulties > h.totalMissions:
            report.append((m.id, "missionsWithDifficulties > totalMissions"))
        if not m.annotated() and not m.rawText:
            report.append((m.id, "no annotations and no rawText"))

    training_ids = store.university.training_ids()
    course_modules: dict[str, str] = {}
    for module_id, course in store.university.courses():
        if course.id in course_modules:
            report.append((course.id, f"course appears in modules "
                                      f"{course_modules[course.id]} and {module_id}"))
        course_modules[course.id] = module_id
        if course.hours <= 0:
            report.append((course.id, "hours must be positive"))
        if course.ects < 0:
            report.append((course.id, "ects negative"))
        if course.coefficient <= 0:
            report.append((course.id, "coefficient must be positive"))
        for kw in course.keywords:
            if kw not in concept_cat:
                report.append((course.id, f"unresolved keyword concept {kw}"))
    for p in store.university.partnerships:
        dep_ids = {d.id for d in store.university.departments}
        if p.departmentId not in dep_ids:
            report.append((p.departmentId, "partnership references unknown department"))
        if p.companyId not in company_ids:
            report.append((p.companyId, "partnership references unknown company"))

    student_ids = set()
    for s in store.students:
        if s.id in student_ids:
            report.append((s.id, "duplicate student id"))
        student_ids.add(s.id)
        check_kind_id(s.id, "student")
        if s.administrative.age <= 0:
            report.append((s.id, "age must be positive"))
        if not s.administrative.email:
            report.append((s.id, "email empty"))
        if s.status not in STATUSES:
            report.append((s.id, f"unknown status {s.status!r}"))
        if s.role is not None and s.role != "Delegate":
            report.append((s.id, f"unknown role {s.role!r}"))
        if s.evaluationRecord is not None:
            ev = s.evaluationRecord
            for name, v in [("oralPresentation", ev.oralPresentation),
                            ("qualityOfWork", ev.qualityOfWork),
                            ("behavior", ev.behavior)]:
                if not _score_ok(v):
                    report.append((s.id, f"{name} value out of [0,20]"))
        if s.candidateRecord is not None:
            cr = s.candidateRecord
            for name, v in [("experienceQuality", cr.experienceQuality),
                            ("projectManagementKnowledge", cr.projectManagementKnowledge),
                            ("cvOverallRating", cr.cvOverallRating),
                            ("autonomy", cr.autonomy)]:
                if not _score_ok(v):
                    report.append((s.id, f"{name} value out of [0,20]"))
        if s.interests.minSalary < 0:
            report.append((s.id, "minSalary negative"))
        for kw in s.interests.missionKeywords:
            if concept_cat.get(kw) not in ("SkillKeyword", "ActivityArea"):
                report.append((s.id, f"interest keyword {kw} does not resolve to a "
                                     "SkillKeyword/ActivityArea concept"))
        for cid in s.interests.preferredCompanies:
            if cid not in company_ids:
                report.append((s.id, f"unresolved preferred company {cid}"))
        if s.academic.trainingId and s.academic.trainingId not in training_ids:
            report.append((s.id, f"unresolved trainingId {s.academic.trainingId}"))

    seen_marks = set()
    for mk in store.marks:
        mark_id = f"mark:{mk.studentId}:{mk.courseId}"
        if (mk.studentId, mk.courseId) in seen_marks:
            report.append((mark_id, "duplicate mark for (student, course)"))
        seen_marks.add((mk.studentId, mk.courseId))
        if not _score_ok(mk.value):
            report.append((mark_id, "value out of [0,20]"))
        if mk.studentId not in student_ids:
            report.append((mark_id, f"unresolved studentId {mk.studentId}"))
        if mk.courseId not in course_modules:
            report.append((mark_id, f"unresolved courseId {mk.courseId}"))

    for p in store.pastPlacements:
        pid = f"placement:{p.missionId}:{p.studentId}:{p.year}"
        if p.missionId not in mission_ids:
            report.append((pid, f"unresolved missionId {p.missionId}"))
        if p.studentId not in student_ids:
            report.append((pid, f"unresolved studentId {p.studentId}"))
        if p.outcome not in OUTCOMES:
            report.append((pid, f"unknown outcome {p.outcome!r}"))
        if p.year < 0:
            report.append((pid, "year negative"))

    for i, c in enumerate(store.constraints):
        cid = f"constraint:{i}"
        if (c.missionId is None) == (c.companyId is None):
            report.append((cid, "exactly one of missionId/companyId must be set"))
        if c.missionId is not None and c.missionId not in mission_ids:
            report.append((cid, f"unresolved missionId {c.missionId}"))
        if c.companyId is not None and c.companyId not in company_ids:
            report.append((cid, f"unresolved companyId {c.companyId}"))
        if c.minProposed < 0:
            report.append((cid, "minProposed negative"))
        if c.maxProposed < c.minProposed:
            report.append((cid, "maxProposed < minProposed"))

    return report


# ---------------------------------------------------------------------------
# Triple export / import
#
# One line per (subject, predicate, object), tab separated, sorted. Predicates
# are dotted field paths with list indices ("tasks[0].label"). Values are
# rendered raw with backslash escapes; numeric fields are recovered on import
# from the schema (leaf field name determines the type).

_INT_FIELDS = frozenset({
    "employeeCount", "months", "durationWeeks", "minStudentsProposed",
    "maxStudentsProposed", "capacity", "yearsPartnership", "totalMissions",
    "missionsWithDifficulties", "age", "year", "sinceYear", "minProposed",
    "maxProposed",
})
_NUM_FIELDS = frozenset({
    "value", "hours", "ects", "coefficient", "minSalary", "oralPresentation",
    "qualityOfWork", "behavior", "experienceQuality",
    "projectManagementKnowledge", "cvOverallRating", "autonomy",
})


def _fmt_value(pred: str, val) -> str:
    leaf = pred.rsplit(".", 1)[-1].split("[", 1)[0]
    if leaf in _NUM_FIELDS and isinstance(val, (int, float)):
        return repr(float(val))
    return str(val)


def _esc(v) -> str:
    s = str(v)
    return (s.replace("\\", "\\\\").replace("\t", "\\t")
             .replace("\n", "\\n").replace("\r", "\\r"))


def _unesc(s: str) -> str:
    out = []
    it = iter(range(len(s)))
    i = 0
    while i < len(s):
        ch = s[i]
        if ch == "\\" and i + 1 < len(s):
            nxt = s[i + 1]
            out.append({"\\": "\\", "t": "\t", "n": "\n", "r": "\r"}.get(nxt, nxt))
            i += 2
        else:
            out.append(ch)
            i += 1
    return "".join(out)


def _flatten(prefix: str, value, out: list[tuple[str, object]]):
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    elif value is None:
        pass
    else:
        out.append((prefix, value))


def export_triples(store: InstanceStore) -> str:
    """Deterministic line-oriented dump; refuses invalid stores."""
    report = validate_store(store)
    if report:
        raise InvalidStoreError(report)
    doc = store_to_doc(store)
    lines: list[str] = []

    def emit(subject: str, sub_doc, kind: str | None):
        flat: list[tuple[str, object]] = []
        _flatten("", sub_doc, flat)
        if kind is not None:
            flat.append(("type", kind))
        for pred, val in flat:
            lines.append(
                f"{_esc(subject)}\t{_esc(pred)}\t{_esc(_fmt_value(pred, val))}")

    if doc["lexicon"]["version"]:
        emit("lexicon", {"version": doc["lexicon"]["version"]}, None)
    for e in doc["lexicon"]["entries"]:
        emit(e["id"], {k: v for k, v in e.items() if k != "id"}, "concept")
    for kind, key in [("company", "companies"), ("mission", "missions"),
                      ("student", "students")]:
        for d in doc[key]:
            emit(d["id"], {k: v for k, v in d.items() if k != "id"}, kind)
    if doc["university"]["departments"] or doc["university"]["partnerships"]:
        emit("university", doc["university"], None)
    for d in doc["marks"]:
        emit(f"mark:{d['studentId']}:{d['courseId']}", d, None)
    for d in doc["pastPlacements"]:
        emit(f"placement:{d['missionId']}:{d['studentId']}:{d['year']}", d, None)
    for i, d in enumerate(doc["constraints"]):
        emit(f"constraint:{i}", d, None)

    lines.sort()
    return "".join(line + "\n" for line in lines)


_PATH_SEG = re.compile(r"([^.\[\]]+)((?:\[\d+\])*)")


def _set_path(root: dict, path: str, value):
    node = root
    segments = path.split(".")
    for si, seg in enumerate(segments):
        m = _PATH_SEG.fullmatch(seg)
        if not m:
            raise StoreFormatError(f"bad predicate path {path!r}")
        name, idx_part = m.group(1), m.group(2)
        indices = [int(x) for x in re.findall(r"\[(\d+)\]", idx_part)]
        last_seg = si == len(segments) - 1
        if not indices:
            if last_seg:
                node[name] = value
            else:
                node = node.setdefault(name, {})
        else:
            container = node.setdefault(name, [])
            for ii, idx in enumerate(indices):
                last_idx = ii == len(indices) - 1
                while len(container) <= idx:
                    container.append(None)
                if last_seg and last_idx:
                    container[idx] = value
                else:
                    if container[idx] is None:
                        container[idx] = [] if not last_idx else {}
                    container = container[idx]
                    node = container  # dict when last_idx, list otherwise


def _coerce(pred: str, raw: str):
    leaf = pred.rsplit(".", 1)[-1]
    leaf = leaf.split("[", 1)[0]
    if leaf in _INT_FIELDS:
        return int(raw)
    if leaf in _NUM_FIELDS:
        return float(raw)
    return raw


def import_triples(text: str) -> InstanceStore:
    """Inverse of export_triples."""
    subjects: dict[str, list[tuple[str, str]]] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line:
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise StoreFormatError(f"line {lineno}: expected 3 tab-separated fields")
        subj, pred, obj = (_unesc(p) for p in parts)
        subjects.setdefault(subj, []).append((pred, obj))

    doc: dict = {"lexicon": {"version": "", "entries": []}, "companies": [],
                 "missions": [], "students": [], "university": {},
                 "marks": [], "pastPlacements": [], "constraints": []}
    constraint_rows: list[tuple[int, dict]] = []
    for subj, preds in subjects.items():
        body: dict = {}
        kind = None
        for pred, obj in preds:
            if pred == "type":
                kind = obj
            else:
                _set_path(body, pred, _coerce(pred, obj))
        if subj == "lexicon":
            doc["lexicon"]["version"] = body.get("version", "")
        elif subj == "university":
            doc["university"] = body
        elif subj.startswith("mark:"):
            doc["marks"].append(body)
        elif subj.startswith("placement:"):
            doc["pastPlacements"].append(body)
        elif subj.startswith("constraint:"):
            constraint_rows.append((int(subj.split(":", 1)[1]), body))
        elif kind == "concept":
            doc["lexicon"]["entries"].append({"id": subj, **body})
        elif kind == "company":
            doc["companies"].append({"id": subj, **body})
        elif kind == "mission":
            doc["missions"].append({"id": subj, **body})
        elif kind == "student":
            doc["students"].append({"id": subj, **body})
        else:
            raise StoreFormatError(f"subject {subj!r} has no type triple")

    doc["constraints"] = [b for _, b in sorted(constraint_rows)]
    for key in ("companies", "missions", "students"):
        doc[key].sort(key=lambda d: d["id"])
    doc["lexicon"]["entries"].sort(key=lambda d: d["id"])
    doc["marks"].sort(key=lambda d: (d["studentId"], d["courseId"]))
    doc["pastPlacements"].sort(
        key=lambda d: (d["missionId"], d["studentId"], d["year"]))
    return store_from_doc(doc)
