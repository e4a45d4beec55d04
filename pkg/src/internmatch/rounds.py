"""Assignment round state and atomic file persistence."""

from __future__ import annotations

import os
import tempfile
from dataclasses import dataclass, field

import json

from . import engine, match as matching
from .cluster import ClusterModel
from .config import Config
from .ontology import InstanceStore, dump_json, store_from_doc, store_to_doc

DRAFT = "Draft"
COMPUTED = "Computed"
PUBLISHED = "Published"


class RoundNotFound(KeyError):
    pass


class RoundPublished(RuntimeError):
    pass


@dataclass
class RoundState:
    roundId: str
    store: InstanceStore
    clusterModel: ClusterModel
    knowledgeBase: matching.KnowledgeBase
    rankings: dict[str, matching.RankedList]
    currentPlan: dict | None = None  # plan document, incl. violations/arguments
    overrides: dict[str, str | None] = field(default_factory=dict)
    status: str = COMPUTED

    def ensure_mutable(self):
        if self.status == PUBLISHED:
            raise RoundPublished(f"round {self.roundId} is published")

    def set_override(self, student_id: str, mission_id: str | None,
                     clear: bool = False):
        self.ensure_mutable()
        if clear:
            self.overrides.pop(student_id, None)
        else:
            self.overrides[student_id] = mission_id

    def run_assignment(self, config: Config, ga_params=None) -> dict:
        self.ensure_mutable()
        doc = engine.run_assignment(self.store, self.knowledgeBase,
                                    self.rankings, config, ga_params,
                                    self.overrides)
        self.currentPlan = doc
        return doc

    def publish(self):
        self.ensure_mutable()
        self.status = PUBLISHED

    def to_doc(self) -> dict:
        return {
            "roundId": self.roundId,
            "status": self.status,
            "storeSnapshot": store_to_doc(self.store),
            "clusterModel": self.clusterModel.to_doc(),
            "knowledgeBase": self.knowledgeBase.to_doc(),
            "rankings": {
                mid: {"missionId": r.missionId,
                      "entries": [{"studentId": sid, "score": sc.to_doc()}
                                  for sid, sc in r.entries]}
                for mid, r in self.rankings.items()},
            "currentPlan": self.currentPlan,
            "overrides": dict(self.overrides),
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "RoundState":
        rankings = {}
        for mid, r in doc["rankings"].items():
            entries = []
            for e in r["entries"]:
                s = e["score"]
                w = s["weights"]
                entries.append((e["studentId"], matching.MatchScore(
                    total=s["total"], skillCos=s["skillCos"],
                    prototypeCos=s["prototypeCos"],
                    interestScore=s["interestScore"],
                    weights=(w["alpha"], w["beta"], w["gamma"]))))
            rankings[mid] = matching.RankedList(missionId=r["missionId"],
                                                entries=entries)
        return cls(
            roundId=doc["roundId"],
            store=store_from_doc(doc["storeSnapshot"]),
            clusterModel=ClusterModel.from_doc(doc["clusterModel"]),
            knowledgeBase=matching.KnowledgeBase.from_doc(doc["knowledgeBase"]),
            rankings=rankings,
            currentPlan=doc.get("currentPlan"),
            overrides=dict(doc.get("overrides", {})),
            status=doc["status"],
        )


def build_round(round_id: str, store: InstanceStore, config: Config) -> RoundState:
    model = engine.build_cluster_model(store, config)
    kb = matching.build_knowledge_base(store, model)
    rankings = engine.build_rankings(store, kb, config)
    return RoundState(roundId=round_id, store=store, clusterModel=model,
                      knowledgeBase=kb, rankings=rankings, status=COMPUTED)


def _round_path(rounds_dir: str, round_id: str) -> str:
    return os.path.join(rounds_dir, f"{round_id}.json")


def persist_round(state: RoundState, rounds_dir: str) -> str:
    """Write-then-rename so a crash never corrupts the last good snapshot."""
    os.makedirs(rounds_dir, exist_ok=True)
    path = _round_path(rounds_dir, state.roundId)
    fd, tmp = tempfile.mkstemp(dir=rounds_dir, prefix=f".{state.roundId}.",
                               suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(dump_json(state.to_doc()))
            fh.flush()
            os.fsync(fh.fileno())
        os.replace(tmp, path)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)
    return path


def load_round(round_id: str, rounds_dir: str) -> RoundState:
    path = _round_path(rounds_dir, round_id)
    if not os.path.exists(path):
        raise RoundNotFound(round_id)
    with open(path, encoding="utf-8") as fh:
        return RoundState.from_doc(json.load(fh))


def list_rounds(rounds_dir: str) -> list[str]:
    if not os.path.isdir(rounds_dir):
        return []
    return sorted(os.path.splitext(f)[0] for f in os.listdir(rounds_dir)
                  if f.endswith(".json") and not f.startswith("."))
