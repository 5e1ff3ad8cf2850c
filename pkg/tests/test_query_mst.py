from itertools import combinations

import pytest

from src.config import MstQueryConfig
from src.errors import BadParameters, NotAnMst, PreconditionUnmet
from src.exact import exact_mst
from src.generators import gen_path_metric, gen_random_metric, gen_star_metric
from src.oracle import CountingOracle
from src.query import (Skeleton, build_ctree_forest, estimate_tsp_with_mst, light_peel, max_k_extension,
                       nice_paths, partition_segments, reorganize_estimate, spider_walk_report,
                       weighted_mm_estimate, zeta)
from src.query.light import CTreeForest, extended_top
from src.tree import RootedTree, tree_from_parents
from src.verify import run_verify


def mst_tree(metric) -> RootedTree:
    return exact_mst(metric).witness


def union_weight(tree: RootedTree, paths) -> int:
    edges = {c for p in paths for c in p[1:]}
    return sum(tree.weight[c] for c in edges)


class TestLightPeel:
    def test_path(self):
        peel = light_peel(mst_tree(gen_path_metric(10)), 3)
        assert peel.light == [7]
        assert peel.hanging == {6: [7]}
        assert peel.top.vertices == list(range(7))
        assert peel.n_light[6] == 3
        assert peel.n_light[0] == 0
        assert peel.top_leaf_count() == 1

    def test_star(self, star_metric):
        peel = light_peel(mst_tree(star_metric), 1)
        assert peel.light == [1, 2, 3, 4, 5]
        assert peel.top.vertices == [0]
        assert peel.n_light == {0: 5}

    def test_light_subtree_includes_parent_edge(self):
        peel = light_peel(mst_tree(gen_path_metric(10)), 3)
        sub = peel.light_subtree(7)
        assert sub.edges == [7, 8, 9]
        assert sub.top == 6

    def test_bad_ell(self, path_tree):
        with pytest.raises(BadParameters):
            light_peel(path_tree, 0)


class TestSegments:
    def test_path(self):
        tree = mst_tree(gen_path_metric(10))
        segments = partition_segments(light_peel(tree, 3))
        assert segments.paths == [[0], [1, 2, 3, 4, 5], [6]]
        assert sorted(s.edges for s in segments.segments) == [[1, 2, 3, 4, 5], [6], [7, 8, 9]]
        assert segments.standalone == 1

    def test_star_light_subtrees_stand_alone(self, star_metric):
        segments = partition_segments(light_peel(mst_tree(star_metric), 1))
        assert segments.standalone == 5
        assert sorted(s.edges for s in segments.segments) == [[1], [2], [3], [4], [5]]

    def test_giant_vertex_is_a_single_path(self):
        tree = tree_from_parents([0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1], [1] * 13)
        segments = partition_segments(light_peel(tree, 1))
        assert segments.giant == [1]
        assert [1] in segments.paths

    @pytest.mark.parametrize("seed", range(6))
    @pytest.mark.parametrize("ell", [1, 2, 3, 5])
    def test_segments_partition_the_tree(self, seed, ell):
        tree = mst_tree(gen_random_metric(14, seed, ("graphic", "weighted-closure")[seed % 2]))
        segments = partition_segments(light_peel(tree, ell))
        owned = [c for s in segments.segments for c in s.edge_ids]
        assert sorted(owned) == sorted(tree.weight)
        covered = [v for p in segments.paths for v in p]
        assert sorted(covered) == light_peel(tree, ell).top.vertices


class TestExtensionsAndCTrees:
    @pytest.mark.parametrize("seed", range(5))
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_extension_is_heaviest_union_of_nice_paths(self, seed, k):
        tree = mst_tree(gen_random_metric(10, seed, "weighted-closure"))
        peel = light_peel(tree, 3)
        candidates = [p for v in peel.top.vertices for p in nice_paths(peel, v)]
        best = max((union_weight(tree, pick) for pick in combinations(candidates, min(k, len(candidates)))),
                   default=0)
        extension = max_k_extension(peel, k)
        assert extension.weight == best
        assert sum(tree.weight[c] for c in extension.edges) == best
        extended = extended_top(peel, extension)
        assert extended.weight() == peel.top.weight() + best

    @pytest.mark.parametrize("seed", range(5))
    def test_ctrees_are_heaviest_and_independent(self, seed):
        tree = mst_tree(gen_random_metric(11, seed, "euclidean-rounded"))
        peel = light_peel(tree, 4)
        forest = build_ctree_forest(peel, 2)
        assert forest.is_independent()
        assert forest.roots == [tree.parent[u] for u in peel.light]
        for u, weight in zip(peel.light, forest.weights):
            through = [p for p in nice_paths(peel, tree.parent[u]) if p[1] == u]
            best = max(union_weight(tree, pick) for pick in combinations(through, min(2, len(through))))
            assert weight == best
        assert all(count <= 2 for count in forest.leaf_counts())

    def test_bad_k_and_c(self, path_tree):
        peel = light_peel(path_tree, 1)
        with pytest.raises(BadParameters):
            max_k_extension(peel, -1)
        with pytest.raises(BadParameters):
            build_ctree_forest(peel, 0)


class TestSkeleton:
    def test_star_skeleton(self, star_metric):
        forest = build_ctree_forest(light_peel(mst_tree(star_metric), 1), 1)
        skeleton = Skeleton(forest)
        assert skeleton.root == 6
        assert skeleton.home == {1: 0, 2: 0, 3: 0, 4: 0, 5: 0}
        rooted = skeleton.rooted()
        assert all(rooted.parent[v] == 6 for v in range(1, 6))
        w = skeleton.weight_matrix(star_metric)
        assert skeleton.order() == [6, 1, 2, 3, 4, 5]
        assert list(w[0, 1:]) == [1] * 5
        assert w[1, 2] == 2
        assert skeleton.mst_weight() == 5

    def test_zeta_on_star(self, star_metric):
        forest = build_ctree_forest(light_peel(mst_tree(star_metric), 1), 1)
        result = zeta(forest, 0, 1, CountingOracle(star_metric))
        assert result.value == 0
        assert result.queries == 3

    @pytest.mark.parametrize("seed", range(6))
    def test_zeta_query_bound(self, seed):
        metric = gen_random_metric(14, seed, "weighted-closure")
        c = 2
        forest = build_ctree_forest(light_peel(mst_tree(metric), 3), c)
        oracle = CountingOracle(metric)
        for i, j in combinations(range(len(forest.trees)), 2):
            result = zeta(forest, i, j, oracle)
            assert result.value >= 0
            assert result.queries <= 16 * c * c

    def test_weighted_matching_inputs(self, star_metric):
        peel = light_peel(mst_tree(star_metric), 1)
        forest = build_ctree_forest(peel, 1)
        oracle = CountingOracle(star_metric)
        assert weighted_mm_estimate(forest, 0.9, 0.05, oracle).value == 0
        with pytest.raises(BadParameters):
            weighted_mm_estimate(CTreeForest(peel.tree, [], 1), 0.9, 0.05, oracle)
        with pytest.raises(BadParameters):
            weighted_mm_estimate(forest, 1.0, 0.05, oracle)

    def test_star_walk_is_long(self, star_metric):
        forest = build_ctree_forest(light_peel(mst_tree(star_metric), 1), 1)
        report = spider_walk_report(forest, 0.1, CountingOracle(star_metric))
        assert report.decision == "WalkLong"
        assert report.stage == "matching"
        assert not report.short

    def test_walk_suites(self):
        report = run_verify("fast", seeds=range(6), suites=["walk_matching", "walk_bridge"])
        assert report.passed

    def test_walk_suites_check_non_metric_skeletons(self):
        report = run_verify("fast", seeds=range(12), suites=["walk_matching", "walk_bridge"])
        matching, bridge = report.suites
        assert report.passed
        assert (matching.skipped, bridge.skipped) == (0, 0)
        assert matching.checks == 3 * 12
        assert bridge.checks == 2 * 12


class TestReorganize:
    def test_star(self, star_metric):
        forest = build_ctree_forest(light_peel(mst_tree(star_metric), 1), 4)
        estimate = reorganize_estimate(forest, 0.02, CountingOracle(star_metric))
        assert estimate.branch == "reorg-walk-long"
        assert estimate.value == 10

    def test_light_forest_is_rejected(self):
        metric = gen_path_metric(10)
        forest = build_ctree_forest(light_peel(mst_tree(metric), 3), 1)
        with pytest.raises(PreconditionUnmet):
            reorganize_estimate(forest, 0.02, CountingOracle(metric))


class TestMstGivenEstimator:
    def test_star(self, star_metric):
        estimate = estimate_tsp_with_mst(CountingOracle(star_metric), mst_tree(star_metric),
                                         MstQueryConfig.desk(6))
        assert estimate.branch == "reorg-walk-long"
        assert estimate.value == 10
        assert estimate.sandwich(10)

    def test_path(self):
        metric = gen_path_metric(10)
        estimate = estimate_tsp_with_mst(CountingOracle(metric), mst_tree(metric), MstQueryConfig.desk(10))
        assert estimate.branch == "top-heavy"
        assert estimate.value == 18
        assert "step1" in estimate.breakdown

    def test_two_vertices(self):
        metric = gen_path_metric(2)
        estimate = estimate_tsp_with_mst(CountingOracle(metric), mst_tree(metric))
        assert estimate.branch == "trivial"
        assert estimate.value == 2

    def test_wrong_tree_size(self, path_tree):
        with pytest.raises(BadParameters):
            estimate_tsp_with_mst(CountingOracle(gen_path_metric(6)), path_tree)

    def test_non_mst_is_detected(self):
        tree = RootedTree(0, {0: None, 2: 0, 4: 2, 5: 4, 3: 5, 1: 3}, {2: 2, 4: 2, 5: 1, 3: 2, 1: 2})
        with pytest.raises(NotAnMst):
            estimate_tsp_with_mst(CountingOracle(gen_path_metric(6)), tree, MstQueryConfig.desk(6, ell=1))

    def test_deterministic_for_a_seed(self):
        metric = gen_random_metric(12, 4, "euclidean-rounded")
        tree = mst_tree(metric)
        a = estimate_tsp_with_mst(CountingOracle(metric), tree, seed=9)
        b = estimate_tsp_with_mst(CountingOracle(metric), tree, seed=9)
        assert (a.value, a.branch, a.distinct_queries) == (b.value, b.branch, b.distinct_queries)

    def test_sandwich(self):
        report = run_verify("fast", seeds=range(8), suites=["query_mst_sandwich"])
        assert report.passed
        assert report.suites[0].checks == 8

    @pytest.mark.slow
    def test_sandwich_on_a_hundred_instances(self):
        report = run_verify("full", suites=["query_mst_sandwich"])
        assert report.passed
        assert report.suites[0].checks == 100
