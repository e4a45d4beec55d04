import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from internmatch import vsm
from internmatch.cluster import (ClusterModel, ClusteringError,
                                 assign_to_cluster, choose_k, kmeans)


def two_blob_vectors():
    """Two clearly separated groups in concept space."""
    return {
        "m1": {"a": 1.0, "b": 1.0},
        "m2": {"a": 1.0, "b": 0.9},
        "m3": {"x": 1.0, "y": 1.0},
        "m4": {"x": 0.9, "y": 1.0},
    }


def best_two_partition(vectors):
    """Exhaustive oracle: minimal-inertia 2-partition with spherical centroids."""
    ids = sorted(vectors)
    units = {i: vsm.unit(vectors[i]) for i in ids}

    def inertia(group):
        acc = {}
        for i in group:
            for k, w in units[i].items():
                acc[k] = acc.get(k, 0.0) + w
        cen = vsm.unit({k: w / len(group) for k, w in acc.items()})
        return sum(1.0 - vsm.cosine(units[i], cen) for i in group)

    best = None
    for r in range(1, len(ids)):
        for left in itertools.combinations(ids, r):
            right = [i for i in ids if i not in left]
            total = inertia(list(left)) + inertia(right)
            if best is None or total < best[0] - 1e-12:
                best = (total, frozenset(left))
    return best


class TestKmeans:
    def test_two_blobs_match_exhaustive_oracle(self):
        vectors = two_blob_vectors()
        oracle_inertia, oracle_left = best_two_partition(vectors)
        model = kmeans(vectors, k=2, seed=0)
        groups = {frozenset(ids) for ids in model.members.values() if ids}
        assert groups == {oracle_left,
                          frozenset(set(vectors) - oracle_left)}
        assert model.inertia == pytest.approx(oracle_inertia, abs=1e-9)

    def test_k_equals_n_singletons(self):
        vectors = {"m1": {"a": 1.0}, "m2": {"b": 1.0}, "m3": {"c": 1.0}}
        model = kmeans(vectors, k=3, seed=1)
        sizes = sorted(len(ids) for ids in model.members.values())
        assert sizes == [1, 1, 1]
        assert model.inertia == pytest.approx(0.0, abs=1e-12)
        assert not model.degenerate

    def test_duplicates_trigger_reseed_then_degenerate(self):
        vectors = {f"m{i}": {"a": 1.0} for i in range(4)}
        model = kmeans(vectors, k=2, seed=0)
        assert model.degenerate
        assert model.kEffective == 1
        assert len(model.reseedIterations) <= 1

    def test_inertia_history_monotone(self):
        rng = random.Random(5)
        vectors = {f"m{i}": {f"c{rng.randrange(6)}": rng.random() + 0.1,
                             f"d{rng.randrange(6)}": rng.random() + 0.1}
                   for i in range(20)}
        model = kmeans(vectors, k=3, seed=2)
        hist = model.inertiaHistory
        for j, (a, b) in enumerate(zip(hist, hist[1:])):
            if j in model.reseedIterations:
                continue  # a re-seed may move inertia either way
            assert b <= a + 1e-9

    def test_deterministic(self):
        vectors = two_blob_vectors()
        a = kmeans(vectors, k=2, seed=7)
        b = kmeans(vectors, k=2, seed=7)
        assert a.to_doc() == b.to_doc()

    def test_partition_property(self):
        vectors = two_blob_vectors()
        model = kmeans(vectors, k=2, seed=3)
        seen = sorted(i for ids in model.members.values() for i in ids)
        assert seen == sorted(vectors)

    def test_rejects_bad_k(self):
        vectors = {"m1": {"a": 1.0}}
        with pytest.raises(ClusteringError):
            kmeans(vectors, k=0, seed=0)
        with pytest.raises(ClusteringError):
            kmeans(vectors, k=2, seed=0)

    def test_rejects_empty_vector(self):
        with pytest.raises(ClusteringError):
            kmeans({"m1": {}}, k=1, seed=0)

    def test_model_doc_round_trip(self):
        model = kmeans(two_blob_vectors(), k=2, seed=0)
        again = ClusterModel.from_doc(model.to_doc())
        assert again.to_doc() == model.to_doc()


class TestAssign:
    def test_nearest_centroid(self):
        model = kmeans(two_blob_vectors(), k=2, seed=0)
        idx, sim = assign_to_cluster({"a": 1.0, "b": 1.0}, model)
        assert idx == model.cluster_of("m1")
        assert sim > 0.99

    def test_tie_goes_to_lowest_index(self):
        model = ClusterModel(k=2, centroids=[{"a": 1.0}, {"b": 1.0}],
                             members={0: ["m1"], 1: ["m2"]}, seed=0,
                             inertia=0.0, kEffective=2)
        idx, sim = assign_to_cluster({"a": 1.0, "b": 1.0}, model)
        assert idx == 0
        assert sim == pytest.approx(2 ** -0.5)

    def test_empty_vector_rejected(self):
        model = kmeans(two_blob_vectors(), k=2, seed=0)
        with pytest.raises(ClusteringError):
            assign_to_cluster({}, model)


class TestChooseK:
    def test_planted_two_clusters(self):
        rng = random.Random(3)
        vectors = {}
        for ci, axes in enumerate([("a", "b"), ("x", "y")]):
            for j in range(5):
                vectors[f"m{ci}{j}"] = {axes[0]: 1.0,
                                        axes[1]: 0.9 + 0.02 * rng.random()}
        assert choose_k(vectors, 2, 4, seed=0) == 2

    def test_planted_three_clusters(self):
        rng = random.Random(11)
        vectors = {}
        for ci, axis in enumerate(["a", "b", "c"]):
            for j in range(4):
                vectors[f"m{ci}{j}"] = {axis: 1.0,
                                        f"n{ci}{j}": 0.05 * rng.random()}
        assert choose_k(vectors, 2, 4, seed=0) == 3

    def test_identical_vectors_pick_smallest(self):
        vectors = {f"m{i}": {"a": 1.0} for i in range(5)}
        assert choose_k(vectors, 1, 3, seed=0) == 1

    def test_three_orthogonal(self):
        vectors = {"m1": {"a": 1.0}, "m2": {"b": 1.0}, "m3": {"c": 1.0}}
        assert choose_k(vectors, 2, 3, seed=0) == 3

    def test_bounds_checked(self):
        with pytest.raises(ClusteringError):
            choose_k(two_blob_vectors(), 3, 2, seed=0)
        with pytest.raises(ClusteringError):
            choose_k(two_blob_vectors(), 1, 9, seed=0)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=0, max_value=10_000), st.integers(2, 4))
def test_random_instances_stay_consistent(seed, k):
    rng = random.Random(seed)
    n = rng.randint(k, 12)
    vectors = {f"m{i}": {f"c{rng.randrange(5)}": rng.random() + 0.05,
                         f"c{rng.randrange(5)}": rng.random() + 0.05}
               for i in range(n)}
    model = kmeans(vectors, k=k, seed=seed)
    assert sorted(i for ids in model.members.values() for i in ids) == \
        sorted(vectors)
    assert model.kEffective <= k
    assert model.inertia >= -1e-12
    if model.kEffective < k:
        assert model.degenerate
