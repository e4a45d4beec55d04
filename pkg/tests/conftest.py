import json
import pathlib
import random
from datetime import date

import pytest

from internmatch import ontology
from internmatch.ontology import (Academic, Administrative, CandidateRecord,
                                  Company, Competency, ConceptEntry, Course,
                                  Department, InstanceStore, Interests,
                                  Lexicon, Mark, Mission, MissionHistory,
                                  Module, Partnership, PastPlacement,
                                  StudentProfile, Task, TeachingUnit,
                                  Training, University)

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture(scope="session")
def demo_store_path():
    return FIXTURES / "demo_store.json"


@pytest.fixture()
def demo_store(demo_store_path):
    return ontology.load_store(demo_store_path)


@pytest.fixture(scope="session")
def golden_corpus():
    with open(FIXTURES / "golden_corpus.json", encoding="utf-8") as fh:
        return json.load(fh)["postings"]


def tiny_lexicon() -> Lexicon:
    return Lexicon(version="test-1", entries=[
        ConceptEntry("a1", "develop", "Action", ["developing"]),
        ConceptEntry("a2", "analyze", "Action", ["analyse"]),
        ConceptEntry("d1", "dashboard", "DomainAction", ["dashboards"]),
        ConceptEntry("d2", "database", "DomainAction", []),
        ConceptEntry("s1", "sales", "ActivityArea", []),
        ConceptEntry("s2", "finance", "ActivityArea", ["banking"]),
        ConceptEntry("k1", "python", "SkillKeyword", []),
    ])


@pytest.fixture()
def lexicon():
    return tiny_lexicon()


def tiny_store() -> InstanceStore:
    """A minimal consistent store: 1 company, 1 mission, 1 student, 1 course."""
    lex = tiny_lexicon()
    uni = University(departments=[Department(
        id="dep1", label="CS", trainings=[Training(
            id="tr1", label="Data", teachingUnits=[TeachingUnit(
                id="u1", modules=[Module(
                    id="mod1", courses=[
                        Course(id="crs1", label="BI", keywords=["a1", "d1"],
                               hours=30, ects=3, coefficient=2.0),
                        Course(id="crs2", label="DB", keywords=["a2", "d2"],
                               hours=30, ects=3, coefficient=1.0),
                    ])])])])])
    return InstanceStore(
        lexicon=lex,
        companies=[Company(id="c1", name="Acme", employeeCount=10)],
        missions=[Mission(id="m1", companyId="c1", location="Lyon",
                          competencies=[Competency("a1", "d1")],
                          activityAreas=["s1"], capacity=2,
                          minStudentsProposed=1, maxStudentsProposed=2,
                          rawText="develop a sales dashboard")],
        students=[StudentProfile(
            id="stu1",
            administrative=Administrative(firstName="Lea", lastName="Martin",
                                          email="lea@example.org", age=22),
            academic=Academic(degree="MSc", trainingId="tr1"),
            candidateRecord=CandidateRecord(autonomy=15.0),
            interests=Interests())],
        university=uni,
        marks=[Mark("stu1", "crs1", 16.0), Mark("stu1", "crs2", 12.0)],
    )


@pytest.fixture()
def small_store():
    return tiny_store()


def random_valid_store(rng: random.Random) -> InstanceStore:
    """Randomized but internally consistent store for round-trip tests."""
    categories = {"Action": "a", "DomainAction": "d",
                  "ActivityArea": "ar", "SkillKeyword": "k"}
    entries = []
    for cat, prefix in categories.items():
        for i in range(rng.randint(1, 3)):
            cid = f"{prefix}{i}"
            entries.append(ConceptEntry(cid, f"{prefix}word{i}", cat,
                                        [f"{prefix}syn{i}"] if rng.random() < 0.5
                                        else []))
    lex = Lexicon(entries=entries, version=f"v{rng.randint(1, 9)}")
    actions = [e.id for e in entries if e.category == "Action"]
    domains = [e.id for e in entries if e.category == "DomainAction"]
    areas = [e.id for e in entries if e.category == "ActivityArea"]
    skills = [e.id for e in entries if e.category == "SkillKeyword"]

    companies = [Company(id=f"co{i}", name=f"Company {i}\twith\ttabs" if i == 0
                         else f"Company {i}", importance="big",
                         employeeCount=rng.randint(0, 500))
                 for i in range(rng.randint(1, 3))]
    courses = [Course(id=f"crs{i}", label=f"Course {i}",
                      keywords=rng.sample(actions + domains,
                                          k=min(2, len(actions + domains))),
                      hours=float(rng.randint(10, 40)), ects=float(rng.randint(0, 6)),
                      coefficient=float(rng.randint(1, 3)), teacherId="t1")
               for i in range(rng.randint(1, 3))]
    uni = University(
        departments=[Department(id="dep1", label="Dept",
                                trainings=[Training(
                                    id="tr1", label="Training",
                                    teachingUnits=[TeachingUnit(
                                        id="u1", modules=[Module(id="mod1",
                                                                 courses=courses)])])])],
        partnerships=[Partnership("dep1", companies[0].id, 2020)]
        if rng.random() < 0.5 else [])

    missions = []
    for i in range(rng.randint(1, 3)):
        comps = [Competency(rng.choice(actions), rng.choice(domains))
                 for _ in range(rng.randint(0, 2))]
        mission_areas = sorted(set(rng.sample(areas, k=rng.randint(0, len(areas)))))
        missions.append(Mission(
            id=f"m{i}", companyId=rng.choice(companies).id,
            location=rng.choice(["Lyon", "Paris", ""]),
            competencies=comps, activityAreas=mission_areas,
            experienceRequired=ontology.Experience("some", rng.randint(0, 12)),
            project=f"project {i}",
            tasks=[Task("t", date(2026, 1, 1), date(2026, 6, 1))]
            if rng.random() < 0.5 else [],
            durationWeeks=rng.randint(4, 26),
            history=MissionHistory(rng.randint(0, 5), 3, rng.randint(0, 3)),
            minStudentsProposed=1, maxStudentsProposed=rng.randint(1, 3),
            capacity=rng.randint(1, 4),
            rawText="free text" if not comps and not mission_areas else
            rng.choice(["", "raw text"])))

    students = []
    for i in range(rng.randint(1, 4)):
        students.append(StudentProfile(
            id=f"stu{i}",
            administrative=Administrative(firstName=f"F{i}", lastName="L",
                                          email=f"s{i}@example.org",
                                          age=rng.randint(18, 30)),
            academic=Academic(degree="MSc", trainingId="tr1"),
            status=rng.choice(list(ontology.STATUSES)),
            role="Delegate" if rng.random() < 0.2 else None,
            evaluationRecord=ontology.EvaluationRecord(12.0, 13.5, 14.0)
            if rng.random() < 0.5 else None,
            candidateRecord=CandidateRecord(10.0, 11.0, 12.0, 13.0)
            if rng.random() < 0.7 else None,
            interests=Interests(
                missionKeywords=rng.sample(skills + areas,
                                           k=rng.randint(0, 2)),
                preferredLocations=["Lyon"] if rng.random() < 0.5 else [],
                minSalary=float(rng.randint(0, 1200)),
                preferredCompanies=[companies[0].id] if rng.random() < 0.3 else [])))

    marks = []
    for s in students:
        for c in rng.sample(courses, k=rng.randint(0, len(courses))):
            marks.append(Mark(s.id, c.id, float(rng.randint(0, 20))))

    placements = []
    if missions and students and rng.random() < 0.7:
        placements.append(PastPlacement(missions[0].id, students[0].id,
                                        rng.choice(list(ontology.OUTCOMES)),
                                        2024))

    constraints = []
    if rng.random() < 0.5:
        constraints.append(ontology.UniversityConstraint(
            missionId=missions[0].id, minProposed=0, maxProposed=3))

    store = InstanceStore(lexicon=lex, companies=companies, missions=missions,
                          students=students, university=uni, marks=marks,
                          pastPlacements=placements, constraints=constraints)
    assert ontology.validate_store(store) == []
    return store
