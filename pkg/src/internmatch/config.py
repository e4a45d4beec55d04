"""Runtime configuration: scoring weights, GA defaults, clustering, paths."""

from __future__ import annotations

from dataclasses import dataclass, field

from .arguments import ArgumentThresholds
from .assign import GaParams, ObjectiveWeights


class ConfigError(ValueError):
    pass


@dataclass
class Config:
    matchWeights: tuple[float, float, float] = (0.6, 0.2, 0.2)
    objective: ObjectiveWeights = field(default_factory=ObjectiveWeights)
    ga: GaParams = field(default_factory=GaParams)
    thresholds: ArgumentThresholds = field(default_factory=ArgumentThresholds)
    clusterK: int | None = None  # None -> choose_k over [kMin, kMax]
    kMin: int = 2
    kMax: int = 8
    clusterSeed: int = 0
    roundsDir: str = "rounds"
    listen: str = "127.0.0.1:8000"

    def validate(self):
        alpha, beta, gamma = self.matchWeights
        if min(alpha, beta, gamma) < 0 or abs(alpha + beta + gamma - 1.0) > 1e-9:
            raise ConfigError("matchWeights must be non-negative and sum to 1")
        if self.clusterK is not None and self.clusterK < 1:
            raise ConfigError("clusterK must be >= 1")
        if not (1 <= self.kMin <= self.kMax):
            raise ConfigError("need 1 <= kMin <= kMax")
        for name in ("crossoverRate", "geneSwapProb"):
            if not (0.0 <= getattr(self.ga, name) <= 1.0):
                raise ConfigError(f"ga.{name} must be in [0,1]")
        if self.ga.populationSize < 2:
            raise ConfigError("ga.populationSize must be >= 2")
        th = self.thresholds
        for name, hi in [("theta1", 1.0), ("theta3Proto", 1.0),
                         ("theta3Risk", 1.0), ("theta5", 1.0),
                         ("theta6Skill", 1.0), ("theta2Mark", 20.0),
                         ("theta4", 20.0), ("theta6Autonomy", 20.0)]:
            v = getattr(th, name)
            if not (0.0 <= v <= hi):
                raise ConfigError(f"thresholds.{name} out of [0,{hi}]")

    def to_doc(self) -> dict:
        alpha, beta, gamma = self.matchWeights
        return {
            "matchWeights": {"alpha": alpha, "beta": beta, "gamma": gamma},
            "objective": self.objective.to_doc(),
            "ga": self.ga.to_doc(),
            "thresholds": self.thresholds.to_doc(),
            "clusterK": self.clusterK,
            "kMin": self.kMin,
            "kMax": self.kMax,
            "clusterSeed": self.clusterSeed,
            "roundsDir": self.roundsDir,
            "listen": self.listen,
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "Config":
        known = {"matchWeights", "objective", "ga", "thresholds", "clusterK",
                 "kMin", "kMax", "clusterSeed", "roundsDir", "listen"}
        extra = sorted(set(doc) - known)
        if extra:
            raise ConfigError(f"unknown config keys {extra}")
        cfg = cls()
        if "matchWeights" in doc:
            w = doc["matchWeights"]
            cfg.matchWeights = (w["alpha"], w["beta"], w["gamma"])
        if "objective" in doc:
            cfg.objective = ObjectiveWeights.from_doc(doc["objective"])
        if "ga" in doc:
            cfg.ga = GaParams.from_doc(doc["ga"])
        if "thresholds" in doc:
            cfg.thresholds = ArgumentThresholds.from_doc(doc["thresholds"])
        for key in ("clusterK", "kMin", "kMax", "clusterSeed",
                    "roundsDir", "listen"):
            if key in doc:
                setattr(cfg, key, doc[key])
        cfg.validate()
        return cfg
