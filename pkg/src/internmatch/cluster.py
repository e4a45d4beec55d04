"""Spherical k-means over sparse concept vectors, plus k selection.

Distance is 1 - cosine. Seeding is k-means++ driven by an explicit integer
seed, so runs are reproducible. Empty clusters get one farthest-point
re-seed attempt; after that the model is accepted with fewer effective
clusters and a degenerate flag.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from . import vsm

MAX_ITER = 100


class ClusteringError(ValueError):
    pass


@dataclass
class ClusterModel:
    k: int
    centroids: list[dict]
    members: dict[int, list[str]]
    seed: int
    inertia: float
    kEffective: int
    degenerate: bool = False
    # inertia after each assignment step; reseed iteration indices recorded
    inertiaHistory: list[float] = field(default_factory=list)
    reseedIterations: list[int] = field(default_factory=list)

    def cluster_of(self, item_id: str) -> int | None:
        for idx, ids in self.members.items():
            if item_id in ids:
                return idx
        return None

    def to_doc(self) -> dict:
        return {
            "k": self.k,
            "kEffective": self.kEffective,
            "seed": self.seed,
            "degenerate": self.degenerate,
            "inertia": self.inertia,
            "centroids": [vsm.to_doc(c) for c in self.centroids],
            "members": {str(i): sorted(ids) for i, ids in self.members.items()},
        }

    @classmethod
    def from_doc(cls, doc: dict) -> "ClusterModel":
        return cls(k=doc["k"], kEffective=doc["kEffective"], seed=doc["seed"],
                   degenerate=doc["degenerate"], inertia=doc["inertia"],
                   centroids=[dict(c) for c in doc["centroids"]],
                   members={int(i): list(ids)
                            for i, ids in doc["members"].items()})


def _dist(u, v) -> float:
    return 1.0 - vsm.cosine(u, v)


def _plus_plus_seeds(ids, vectors, k: int, rng: random.Random) -> list[dict]:
    first = ids[rng.randrange(len(ids))]
    centroids = [dict(vectors[first])]
    while len(centroids) < k:
        dists = [min(_dist(vectors[i], c) for c in centroids) ** 2 for i in ids]
        total = sum(dists)
        if total == 0:
            # all points coincide with a centroid; fall back to round-robin
            centroids.append(dict(vectors[ids[len(centroids) % len(ids)]]))
            continue
        r = rng.random() * total
        acc = 0.0
        for i, d in zip(ids, dists):
            acc += d
            if acc >= r:
                centroids.append(dict(vectors[i]))
                break
        else:
            centroids.append(dict(vectors[ids[-1]]))
    return centroids


def kmeans(vectors: dict, k: int, seed: int) -> ClusterModel:
    """vectors: missionId -> ConceptVector (all non-empty)."""
    ids = sorted(vectors)
    n = len(ids)
    if k < 1:
        raise ClusteringError("k must be >= 1")
    if k > n:
        raise ClusteringError(f"k={k} exceeds number of vectors ({n})")
    for i in ids:
        if not vectors[i]:
            raise ClusteringError(f"empty vector for mission {i}")

    unit_vecs = {i: vsm.unit(vectors[i]) for i in ids}
    rng = random.Random(seed)
    centroids = [vsm.unit(c) for c in _plus_plus_seeds(ids, unit_vecs, k, rng)]

    assignment: dict[str, int] = {}
    history: list[float] = []
    reseeds: list[int] = []
    degenerate = False

    for iteration in range(MAX_ITER):
        new_assignment = {}
        inertia = 0.0
        for i in ids:
            best_idx, best_d = 0, float("inf")
            for ci, cen in enumerate(centroids):
                d = _dist(unit_vecs[i], cen)
                if d < best_d - 1e-15:
                    best_idx, best_d = ci, d
            new_assignment[i] = best_idx
            inertia += best_d
        history.append(inertia)

        empty = [ci for ci in range(k)
                 if not any(a == ci for a in new_assignment.values())]
        if empty:
            if not reseeds:
                # single farthest-point re-seed attempt, then redo assignment
                reseeds.append(iteration)
                farthest = max(ids, key=lambda i: (
                    _dist(unit_vecs[i], centroids[new_assignment[i]]), i))
                centroids[empty[0]] = dict(unit_vecs[farthest])
                assignment = new_assignment
                continue
            degenerate = True

        if new_assignment == assignment:
            assignment = new_assignment
            break
        assignment = new_assignment

        # update step: mean of member unit vectors, renormalized
        for ci in range(k):
            member_ids = [i for i in ids if assignment[i] == ci]
            if not member_ids:
                continue
            acc: dict = {}
            for i in member_ids:
                for key, w in unit_vecs[i].items():
                    acc[key] = acc.get(key, 0.0) + w
            mean = {key: w / len(member_ids) for key, w in acc.items()}
            normalized = vsm.unit(mean)
            if normalized:
                centroids[ci] = normalized

    members: dict[int, list[str]] = {ci: [] for ci in range(k)}
    for i in ids:
        members[assignment[i]].append(i)
    k_effective = sum(1 for ids_ in members.values() if ids_)
    if k_effective < k:
        degenerate = True
    inertia = sum(_dist(unit_vecs[i], centroids[assignment[i]]) for i in ids)

    return ClusterModel(k=k, centroids=centroids, members=members, seed=seed,
                        inertia=inertia, kEffective=k_effective,
                        degenerate=degenerate, inertiaHistory=history,
                        reseedIterations=reseeds)


def assign_to_cluster(vector: dict, model: ClusterModel) -> tuple[int, float]:
    if not vector:
        raise ClusteringError("cannot classify an empty vector")
    best_idx, best_sim = 0, -1.0
    for ci, cen in enumerate(model.centroids):
        sim = vsm.cosine(vector, cen)
        if sim > best_sim + 1e-15:
            best_idx, best_sim = ci, sim
    return best_idx, max(best_sim, 0.0)


def _silhouette(ids, unit_vecs, assignment, k: int) -> float:
    if k <= 1:
        return 0.0
    dist = {}
    for a in ids:
        for b in ids:
            if a < b:
                dist[(a, b)] = _dist(unit_vecs[a], unit_vecs[b])

    def d(a, b):
        return dist[(a, b)] if a < b else dist[(b, a)]

    scores = []
    for i in ids:
        own = [j for j in ids if assignment[j] == assignment[i] and j != i]
        # singleton clusters use a(i) = 0, so a far-away singleton scores 1
        a = sum(d(i, j) for j in own) / len(own) if own else 0.0
        b = float("inf")
        for ci in range(k):
            if ci == assignment[i]:
                continue
            others = [j for j in ids if assignment[j] == ci]
            if others:
                b = min(b, sum(d(i, j) for j in others) / len(others))
        if b == float("inf"):
            scores.append(0.0)
            continue
        denom = max(a, b)
        scores.append(0.0 if denom == 0 else (b - a) / denom)
    return sum(scores) / len(scores)


def choose_k(vectors: dict, k_min: int, k_max: int, seed: int) -> int:
    n = len(vectors)
    if not (1 <= k_min <= k_max <= n):
        raise ClusteringError(f"need 1 <= kMin <= kMax <= {n}")
    ids = sorted(vectors)
    unit_vecs = {i: vsm.unit(vectors[i]) for i in ids}
    best_k, best_score = k_min, -float("inf")
    for k in range(k_min, k_max + 1):
        model = kmeans(vectors, k, seed)
        assignment = {i: ci for ci, ids_ in model.members.items() for i in ids_}
        score = _silhouette(ids, unit_vecs, assignment, k)
        if score > best_score + 1e-12:
            best_k, best_score = k, score
    return best_k
