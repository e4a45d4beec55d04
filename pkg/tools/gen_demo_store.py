#!/usr/bin/env python3
"""Regenerate fixtures/demo_store.json (deterministic).

The demo cohort: 30 students, 12 missions in three themes (BI/analytics,
web/mobile development, data engineering/ML), 8 past placements.
"""

import random
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from internmatch.ontology import (dump_json, store_from_doc, store_to_doc,
                                  validate_store)

LEXICON = {
    "version": "demo-1",
    "entries": [
        {"id": "act-develop", "label": "develop", "category": "Action",
         "synonyms": ["developing", "developed", "développer"]},
        {"id": "act-design", "label": "design", "category": "Action",
         "synonyms": ["designing"]},
        {"id": "act-analyze", "label": "analyze", "category": "Action",
         "synonyms": ["analyse", "analyzing", "analyser"]},
        {"id": "act-test", "label": "test", "category": "Action",
         "synonyms": ["testing", "tester"]},
        {"id": "act-manage", "label": "manage", "category": "Action",
         "synonyms": ["managing", "gérer"]},
        {"id": "act-deploy", "label": "deploy", "category": "Action",
         "synonyms": ["deploying", "déployer"]},
        {"id": "act-optimize", "label": "optimize", "category": "Action",
         "synonyms": ["optimise", "optimizing"]},
        {"id": "act-maintain", "label": "maintain", "category": "Action",
         "synonyms": ["maintaining"]},
        {"id": "act-write", "label": "write", "category": "Action",
         "synonyms": ["writing", "rédiger"]},
        {"id": "act-migrate", "label": "migrate", "category": "Action",
         "synonyms": ["migrating"]},
        {"id": "dom-dashboard", "label": "dashboard", "category": "DomainAction",
         "synonyms": ["dashboards", "tableau de bord"]},
        {"id": "dom-database", "label": "database", "category": "DomainAction",
         "synonyms": ["databases", "base de données"]},
        {"id": "dom-webapp", "label": "web application", "category": "DomainAction",
         "synonyms": ["website", "web site", "application web"]},
        {"id": "dom-api", "label": "rest api", "category": "DomainAction",
         "synonyms": ["api", "apis"]},
        {"id": "dom-pipeline", "label": "data pipeline", "category": "DomainAction",
         "synonyms": ["pipeline", "pipelines", "etl pipeline"]},
        {"id": "dom-model", "label": "prediction model", "category": "DomainAction",
         "synonyms": ["machine learning model", "model", "models"]},
        {"id": "dom-report", "label": "report", "category": "DomainAction",
         "synonyms": ["reports", "reporting tool", "rapports"]},
        {"id": "dom-network", "label": "network", "category": "DomainAction",
         "synonyms": ["networks"]},
        {"id": "dom-mobile", "label": "mobile application", "category": "DomainAction",
         "synonyms": ["mobile app", "android app"]},
        {"id": "dom-campaign", "label": "campaign", "category": "DomainAction",
         "synonyms": ["campaigns", "marketing campaign", "campagnes"]},
        {"id": "area-sales", "label": "sales", "category": "ActivityArea",
         "synonyms": ["sale"]},
        {"id": "area-finance", "label": "finance", "category": "ActivityArea",
         "synonyms": ["financial", "banking"]},
        {"id": "area-marketing", "label": "marketing", "category": "ActivityArea",
         "synonyms": []},
        {"id": "area-logistics", "label": "logistics", "category": "ActivityArea",
         "synonyms": ["supply chain"]},
        {"id": "area-health", "label": "healthcare", "category": "ActivityArea",
         "synonyms": ["health care", "medical", "santé"]},
        {"id": "area-energy", "label": "energy", "category": "ActivityArea",
         "synonyms": []},
        {"id": "area-retail", "label": "retail", "category": "ActivityArea",
         "synonyms": ["e-commerce", "ecommerce"]},
        {"id": "area-education", "label": "education", "category": "ActivityArea",
         "synonyms": ["e-learning"]},
        {"id": "skill-python", "label": "python", "category": "SkillKeyword",
         "synonyms": []},
        {"id": "skill-java", "label": "java", "category": "SkillKeyword",
         "synonyms": []},
        {"id": "skill-sql", "label": "sql", "category": "SkillKeyword",
         "synonyms": []},
        {"id": "skill-excel", "label": "excel", "category": "SkillKeyword",
         "synonyms": []},
        {"id": "skill-statistics", "label": "statistics", "category": "SkillKeyword",
         "synonyms": ["statistical"]},
        {"id": "skill-communication", "label": "communication",
         "category": "SkillKeyword", "synonyms": []},
        {"id": "skill-cloud", "label": "cloud", "category": "SkillKeyword",
         "synonyms": ["aws", "azure"]},
        {"id": "skill-security", "label": "security", "category": "SkillKeyword",
         "synonyms": ["cybersecurity"]},
    ],
}

MISSION_TEXTS = {
    # theme A: BI / analytics
    "m01": ("co1", "Lyon", "Develop a sales dashboard for the regional team."),
    "m02": ("co1", "Paris", "Analyze the customer database and write monthly reports."),
    "m03": ("co2", "Lyon", "The intern will analyze statistical reports in banking."),
    "m04": ("co2", "Grenoble", "Develop dashboards, write SQL reports, and manage "
                               "the customer database for a retail chain."),
    # theme B: web / mobile development
    "m05": ("co3", "Lyon", "Design and deploy a REST API for the finance department."),
    "m06": ("co3", "Paris", "Test the mobile app used by retail stores."),
    "m07": ("co4", "Villeurbanne", "Internship in e-commerce: build and test the website."),
    "m08": ("co4", "Lyon", "Design an android app for the education sector."),
    # theme C: data engineering / ML
    "m09": ("co5", "Grenoble", "Deploy a machine learning model for energy forecasting."),
    "m10": ("co5", "Lyon", "Maintain and optimize the data pipeline."),
    "m11": ("co6", "Paris", "Analyze energy consumption and develop a prediction model."),
    "m12": ("co6", "Lyon", "Maintain the data pipeline and deploy a prediction "
                           "model for the energy team."),
}

COMPANIES = [
    ("co1", "Helios Analytics", "regional leader", 250),
    ("co2", "Banque du Rhône", "major partner", 1200),
    ("co3", "Webforge", "startup", 40),
    ("co4", "Shoply", "scale-up", 150),
    ("co5", "GridSense", "major partner", 600),
    ("co6", "Voltaia", "regional leader", 300),
]

COURSES = [
    # (id, label, keywords, hours, ects, coefficient, module)
    ("c01", "Business Intelligence", ["act-develop", "dom-dashboard", "area-sales"], 30, 3, 2.0, "mo1"),
    ("c02", "Databases", ["act-analyze", "dom-database", "skill-sql"], 40, 4, 3.0, "mo1"),
    ("c03", "Reporting", ["act-write", "dom-report"], 20, 2, 1.0, "mo1"),
    ("c06", "Machine Learning", ["act-deploy", "dom-model", "skill-python"], 40, 4, 3.0, "mo2"),
    ("c07", "Data Engineering", ["act-maintain", "dom-pipeline", "skill-cloud"], 30, 3, 2.0, "mo2"),
    ("c09", "Statistics", ["act-analyze", "skill-statistics"], 30, 3, 2.0, "mo2"),
    ("c04", "Web Development", ["act-design", "dom-webapp", "dom-api"], 40, 4, 3.0, "mo3"),
    ("c05", "Mobile Development", ["act-test", "dom-mobile"], 30, 3, 2.0, "mo3"),
    ("c12", "Cloud Computing", ["act-migrate", "dom-api", "skill-cloud"], 30, 3, 2.0, "mo3"),
    ("c08", "Project Management", ["act-manage", "skill-communication"], 20, 2, 1.0, "mo4"),
    ("c10", "Network Security", ["dom-network", "skill-security"], 30, 3, 2.0, "mo4"),
    ("c11", "Marketing Analytics", ["act-optimize", "dom-campaign", "area-marketing"], 30, 3, 2.0, "mo4"),
]

FIRST_NAMES = ["Lea", "Hugo", "Emma", "Lucas", "Chloe", "Nathan", "Ines",
               "Louis", "Jade", "Gabriel", "Lina", "Arthur", "Zoe", "Jules",
               "Eva", "Adam", "Nora", "Theo", "Mila", "Paul", "Rose", "Tom",
               "Anna", "Leo", "Alice", "Noah", "Lise", "Max", "Camille", "Yanis"]


def build_doc():
    rng = random.Random(7)
    missions = []
    for mid, (company, location, text) in MISSION_TEXTS.items():
        risky = mid == "m02"
        missions.append({
            "id": mid, "companyId": company, "location": location,
            "competencies": [], "activityAreas": [],
            "experienceRequired": {"description": "none required", "months": 0},
            "project": f"Internship project {mid}",
            "tasks": [{"label": "main task", "startDate": "2026-04-01",
                       "endDate": "2026-08-31"}],
            "durationWeeks": 20,
            "history": {"yearsPartnership": rng.randint(1, 8),
                        "totalMissions": 4 if risky else rng.randint(0, 6),
                        "missionsWithDifficulties": 2 if risky else 0},
            "minStudentsProposed": 1, "maxStudentsProposed": 3,
            "capacity": 3, "rawText": text,
        })

    modules = {"mo1": [], "mo2": [], "mo3": [], "mo4": []}
    for cid, label, keywords, hours, ects, coeff, module in COURSES:
        modules[module].append({"id": cid, "label": label, "keywords": keywords,
                                "hours": float(hours), "ects": float(ects),
                                "coefficient": coeff,
                                "teacherId": f"t-{cid[1:]}"})
    university = {
        "departments": [{
            "id": "d1", "label": "Computer Science",
            "trainings": [
                {"id": "t1", "label": "Data Science",
                 "teachingUnits": [{"id": "u1", "label": "Data Core",
                                    "modules": [{"id": "mo1", "label": "Analytics",
                                                 "courses": modules["mo1"]},
                                                {"id": "mo2", "label": "Advanced Data",
                                                 "courses": modules["mo2"]}]}]},
                {"id": "t2", "label": "Software Engineering",
                 "teachingUnits": [{"id": "u2", "label": "Software Core",
                                    "modules": [{"id": "mo3", "label": "Applications",
                                                 "courses": modules["mo3"]},
                                                {"id": "mo4", "label": "Transverse",
                                                 "courses": modules["mo4"]}]}]},
            ]}],
        "partnerships": [{"departmentId": "d1", "companyId": c[0],
                          "sinceYear": 2018 + i} for i, c in enumerate(COMPANIES)],
    }

    data_courses = ["c01", "c02", "c03", "c06", "c07", "c09", "c08", "c11"]
    soft_courses = ["c04", "c05", "c12", "c10", "c08", "c02", "c03", "c11"]

    students, marks = [], []
    for i in range(30):
        sid = f"s{i + 1:02d}"
        is_data = i % 2 == 0
        training = "t1" if is_data else "t2"
        base = rng.uniform(9.0, 15.0)
        course_ids = data_courses if is_data else soft_courses
        for cid in course_ids:
            value = round(min(20.0, max(4.0, base + rng.uniform(-3.0, 4.0))), 1)
            marks.append({"studentId": sid, "courseId": cid, "value": value})
        interests = {"missionKeywords": [], "preferredLocations": [],
                     "minSalary": 0.0, "preferredCompanies": []}
        if i % 3 == 0:
            interests["missionKeywords"] = (["area-sales", "skill-sql"] if is_data
                                            else ["area-retail", "skill-cloud"])
            interests["preferredLocations"] = ["Lyon"]
        if i % 5 == 0:
            interests["preferredCompanies"] = ["co1" if is_data else "co3"]
        student = {
            "id": sid,
            "administrative": {"firstName": FIRST_NAMES[i],
                               "lastName": f"Martin-{i + 1:02d}",
                               "phone": f"+33 6 00 00 {i + 1:02d} 00",
                               "address": "Lyon, France",
                               "email": f"{FIRST_NAMES[i].lower()}.martin{i + 1:02d}@univ.example",
                               "nationality": "FR",
                               "age": 21 + (i % 4)},
            "academic": {"degree": "MSc", "academicYear": "2025-2026",
                         "trainingId": training},
            "status": ["InitialTraining", "ContinuousTraining",
                       "VAE"][0 if i % 7 else (1 if i % 2 else 2)],
            "candidateRecord": {
                "experienceQuality": round(rng.uniform(8, 18), 1),
                "projectManagementKnowledge": round(rng.uniform(8, 18), 1),
                "cvOverallRating": round(rng.uniform(8, 18), 1),
                "autonomy": round(rng.uniform(8, 19), 1)},
            "interests": interests,
        }
        if i % 4 == 0:
            student["evaluationRecord"] = {
                "oralPresentation": round(rng.uniform(10, 18), 1),
                "qualityOfWork": round(rng.uniform(10, 18), 1),
                "behavior": round(rng.uniform(10, 18), 1)}
        if i == 2:
            student["role"] = "Delegate"
        students.append(student)

    placements = [
        {"missionId": "m01", "studentId": "s01", "outcome": "Success", "year": 2025},
        {"missionId": "m03", "studentId": "s02", "outcome": "Success", "year": 2025},
        {"missionId": "m05", "studentId": "s03", "outcome": "Success", "year": 2024},
        {"missionId": "m07", "studentId": "s04", "outcome": "Success", "year": 2025},
        {"missionId": "m09", "studentId": "s05", "outcome": "Success", "year": 2024},
        {"missionId": "m11", "studentId": "s06", "outcome": "Success", "year": 2025},
        {"missionId": "m02", "studentId": "s07", "outcome": "Difficulty", "year": 2024},
        {"missionId": "m06", "studentId": "s08", "outcome": "Difficulty", "year": 2025},
    ]

    constraints = [
        {"companyId": f"co{i}", "minProposed": 0, "maxProposed": 3}
        for i in range(1, 7)
    ]
    constraints.append({"missionId": "m01", "minProposed": 1, "maxProposed": 3})

    return {
        "lexicon": LEXICON,
        "companies": [{"id": c, "name": n, "importance": imp,
                       "employeeCount": emp} for c, n, imp, emp in COMPANIES],
        "missions": missions,
        "students": students,
        "university": university,
        "marks": marks,
        "pastPlacements": placements,
        "constraints": constraints,
    }


def main():
    doc = build_doc()
    store = store_from_doc(doc)
    report = validate_store(store)
    if report:
        for entity, violation in report:
            print(f"VIOLATION {entity}: {violation}")
        raise SystemExit(1)
    out = Path(__file__).resolve().parents[1] / "fixtures" / "demo_store.json"
    out.parent.mkdir(exist_ok=True)
    out.write_text(dump_json(store_to_doc(store)), encoding="utf-8")
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
