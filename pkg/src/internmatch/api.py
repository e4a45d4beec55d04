"""HTTP service (JSON over /v1) wrapping the engine.

Responses that the CLI can also produce are serialized with the same
canonical JSON dump, so the two interfaces return byte-identical bodies.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from . import annotate as annotation
from . import engine
from . import match as matching
from . import rounds as rounds_mod
from .config import Config, ConfigError
from .engine import PipelineError
from .ontology import (InstanceStore, StoreFormatError, dump_json,
                       store_from_doc, store_to_doc, validate_store)


class ApiError(Exception):
    def __init__(self, status: int, code: str, message: str, details=None):
        self.status = status
        self.code = code
        self.message = message
        self.details = details or {}


@dataclass
class AppState:
    config: Config = field(default_factory=Config)
    store: InstanceStore = field(default_factory=InstanceStore)
    rounds: dict[str, rounds_mod.RoundState] = field(default_factory=dict)
    rounds_dir: str | None = None

    def next_round_id(self) -> str:
        existing = set(self.rounds)
        if self.rounds_dir:
            existing.update(rounds_mod.list_rounds(self.rounds_dir))
        i = 1
        while f"r{i:03d}" in existing:
            i += 1
        return f"r{i:03d}"

    def round(self, round_id: str) -> rounds_mod.RoundState:
        if round_id in self.rounds:
            return self.rounds[round_id]
        if self.rounds_dir:
            try:
                state = rounds_mod.load_round(round_id, self.rounds_dir)
            except rounds_mod.RoundNotFound:
                pass
            else:
                self.rounds[round_id] = state
                return state
        raise ApiError(404, "not_found", f"unknown round {round_id}")

    def persist(self, state: rounds_mod.RoundState):
        if self.rounds_dir:
            rounds_mod.persist_round(state, self.rounds_dir)


def _json(doc, status: int = 200) -> Response:
    return Response(content=dump_json(doc), status_code=status,
                    media_type="application/json")


def create_app(config: Config | None = None,
               store: InstanceStore | None = None,
               rounds_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="internmatch", docs_url=None, redoc_url=None)
    state = AppState(config=config or Config(),
                     store=store or InstanceStore(),
                     rounds_dir=rounds_dir)
    app.state.engine_state = state

    @app.exception_handler(ApiError)
    async def _api_error(_req: Request, exc: ApiError):
        return JSONResponse(status_code=exc.status,
                            content={"code": exc.code, "message": exc.message,
                                     "details": exc.details})

    def require_mutable(round_state):
        if round_state.status == rounds_mod.PUBLISHED:
            raise ApiError(409, "round_published",
                           f"round {round_state.roundId} is published")

    # ----- store -----

    @app.post("/v1/store/import")
    async def store_import(request: Request):
        doc = await request.json()
        try:
            state.store = store_from_doc(doc)
        except StoreFormatError as exc:
            raise ApiError(422, "store_format", str(exc))
        report = validate_store(state.store)
        return _json({"imported": True,
                      "report": [list(r) for r in report]})

    @app.get("/v1/store/export")
    async def store_export():
        return _json(store_to_doc(state.store))

    @app.get("/v1/store/validate")
    async def store_validate():
        report = validate_store(state.store)
        return _json({"report": [list(r) for r in report]})

    # ----- annotation -----

    @app.post("/v1/missions/annotate")
    async def missions_annotate(request: Request):
        body = await request.json()
        if "rawText" in body:
            text = body["rawText"]
        elif "missionId" in body:
            mission = state.store.mission(body["missionId"])
            if mission is None:
                raise ApiError(404, "not_found",
                               f"unknown mission {body['missionId']}")
            text = mission.rawText
        else:
            raise ApiError(422, "bad_request", "need rawText or missionId")
        result = annotation.extract_concepts(annotation.tokenize(text),
                                             state.store.lexicon)
        return _json({
            "competencies": [{"action": c.action, "domainAction": c.domainAction}
                             for c in result.competencies],
            "activityAreas": list(result.activityAreas),
            "unmatchedKeywords": list(result.unmatchedKeywords),
            "evidence": [{"conceptId": e.conceptId, "start": e.start,
                          "end": e.end} for e in result.evidence],
        })

    # ----- rounds -----

    def round_summary(rs: rounds_mod.RoundState) -> dict:
        plan = rs.currentPlan
        assigned_counts: dict[str, int] = {}
        assigned_students: set[str] = set()
        if plan:
            for sid, mid in plan["assignment"].items():
                if mid is not None:
                    assigned_counts[mid] = assigned_counts.get(mid, 0) + 1
                    assigned_students.add(sid)
        missions = []
        for m in engine.annotated_missions(rs.store):
            lo, hi = engine._bounds_for_mission(rs.store, m)
            missions.append({
                "id": m.id, "companyId": m.companyId,
                "cluster": rs.clusterModel.cluster_of(m.id),
                "capacity": m.capacity,
                "minProposed": lo, "maxProposed": hi,
                "assignedCount": assigned_counts.get(m.id, 0),
            })
        students = sorted(s.id for s in rs.store.students)
        return {
            "roundId": rs.roundId,
            "status": rs.status,
            "k": rs.clusterModel.k,
            "kEffective": rs.clusterModel.kEffective,
            "missions": missions,
            "overrides": dict(rs.overrides),
            "unassignedStudents": sorted(set(students) - assigned_students)
            if plan else students,
            "currentPlan": plan,
        }

    @app.post("/v1/rounds")
    async def rounds_create():
        try:
            rs = rounds_mod.build_round(state.next_round_id(), state.store,
                                        state.config)
        except PipelineError as exc:
            raise ApiError(422, "pipeline", str(exc))
        state.rounds[rs.roundId] = rs
        state.persist(rs)
        return _json(round_summary(rs), status=201)

    @app.get("/v1/rounds/{round_id}")
    async def rounds_get(round_id: str):
        return _json(round_summary(state.round(round_id)))

    @app.get("/v1/rounds/{round_id}/missions/{mission_id}/candidates")
    async def round_candidates(round_id: str, mission_id: str,
                               limit: int | None = None, locale: str = "en"):
        rs = state.round(round_id)
        if mission_id not in rs.rankings:
            raise ApiError(404, "not_found", f"unknown mission {mission_id}")
        doc = engine.ranked_list_doc(rs.rankings[mission_id], rs.store,
                                     rs.knowledgeBase, state.config,
                                     limit, locale)
        return _json(doc)

    @app.get("/v1/rounds/{round_id}/students/{student_id}/missions")
    async def round_student_missions(round_id: str, student_id: str,
                                     limit: int | None = None,
                                     locale: str = "en"):
        rs = state.round(round_id)
        student = rs.store.student(student_id)
        if student is None:
            raise ApiError(404, "not_found", f"unknown student {student_id}")
        ranking = matching.rank_missions(student,
                                         engine.annotated_missions(rs.store),
                                         rs.knowledgeBase, rs.store,
                                         state.config.matchWeights)
        doc = engine.mission_ranking_doc(ranking, rs.store, rs.knowledgeBase,
                                         state.config, limit, locale)
        return _json(doc)

    @app.post("/v1/rounds/{round_id}/overrides")
    async def round_overrides(round_id: str, request: Request):
        rs = state.round(round_id)
        require_mutable(rs)
        body = await request.json()
        student_id = body.get("studentId")
        if student_id is None or rs.store.student(student_id) is None:
            raise ApiError(404, "not_found", f"unknown student {student_id}")
        mission_id = body.get("missionId")
        if mission_id is None:
            rs.overrides.pop(student_id, None)
        else:
            if rs.store.mission(mission_id) is None:
                raise ApiError(404, "not_found", f"unknown mission {mission_id}")
            rs.overrides[student_id] = mission_id
        state.persist(rs)
        return _json({"overrides": dict(rs.overrides)})

    @app.post("/v1/rounds/{round_id}/assign")
    async def round_assign(round_id: str, request: Request):
        rs = state.round(round_id)
        require_mutable(rs)
        body = {}
        if int(request.headers.get("content-length") or 0) > 0:
            body = await request.json()
        cfg = state.config
        if "matchWeights" in body or "objectiveWeights" in body:
            cfg = Config.from_doc({**state.config.to_doc(),
                                   **({"matchWeights": body["matchWeights"]}
                                      if "matchWeights" in body else {}),
                                   **({"objective": body["objectiveWeights"]}
                                      if "objectiveWeights" in body else {})})
            if "matchWeights" in body:
                rs.rankings = engine.build_rankings(rs.store, rs.knowledgeBase,
                                                    cfg)
        ga_params = None
        if "gaParams" in body:
            ga_params = type(cfg.ga).from_doc({**cfg.ga.to_doc(),
                                               **body["gaParams"]})
        try:
            doc = rs.run_assignment(cfg, ga_params)
        except ConfigError as exc:
            raise ApiError(422, "config", str(exc))
        state.persist(rs)
        return _json(doc)

    @app.post("/v1/rounds/{round_id}/publish")
    async def round_publish(round_id: str):
        rs = state.round(round_id)
        require_mutable(rs)
        rs.publish()
        state.persist(rs)
        return _json(round_summary(rs))

    # ----- config -----

    @app.get("/v1/config")
    async def config_get():
        return _json(state.config.to_doc())

    @app.put("/v1/config")
    async def config_put(request: Request):
        doc = await request.json()
        try:
            state.config = Config.from_doc(doc)
        except ConfigError as exc:
            raise ApiError(422, "config", str(exc))
        return _json(state.config.to_doc())

    return app
