from fractions import Fraction

import pytest

from src.cover import (build_eulerian, cov, cov_set, cover_advantage, covers_subtree, estimate_segment_adv,
                       eulerian_to_tour, mean_eulerian_weight, query_candidates, tour_from_advantage,
                       tour_split)
from src.errors import BadParameters, NotEulerian
from src.exact import exact_mst, exact_tsp, tour_cost
from src.generators import gen_cycle_metric, gen_path_metric, gen_random_metric
from src.oracle import CountingOracle
from src.tree import SubTree, tree_from_parents


@pytest.fixture
def ring_path():
    """12 环上的 MST: 路径 0-1-...-11"""
    return tree_from_parents([0] + list(range(11)), [1] * 12)


class TestCoverSets:
    def test_cov_is_tree_path(self, path_tree):
        assert cov(path_tree, 0, 3) == {1, 2, 3}
        assert cov(path_tree, 2, 1) == {2}

    def test_cov_set_restricted_to_subtree(self, path_tree):
        sub = SubTree(path_tree, [1])
        assert cov_set(path_tree, [(0, 3), (2, 3)]) == {1, 2, 3}
        assert cov_set(path_tree, [(0, 3), (2, 3)], sub) == {1}

    def test_covers_subtree(self, path_tree):
        sub = path_tree.whole()
        assert covers_subtree(sub, [(0, 2), (1, 3)])
        assert not covers_subtree(sub, [(0, 2)])


class TestEulerian:
    def test_empty_set_doubles_the_tree(self, path_tree):
        graph = build_eulerian(path_tree, [])
        assert graph.weight() == 6
        assert graph.is_eulerian()

    def test_tree_edges_are_rejected(self, path_tree):
        with pytest.raises(BadParameters):
            build_eulerian(path_tree, [(2, 1, 1)])

    @pytest.mark.parametrize("seed", range(3))
    def test_parity_rule_keeps_degrees_even(self, seed):
        m = gen_random_metric(10, seed, "weighted-closure")
        tree = exact_mst(m).witness
        tree_pairs = {(min(c, p), max(c, p)) for c, p, _ in tree.edges()}
        extra = [(u, v, int(m.dist[u, v])) for u in range(10) for v in range(u + 1, 10)
                 if (u, v) not in tree_pairs and (u + v + seed) % 3 == 0]
        graph = build_eulerian(tree, extra)
        assert graph.is_eulerian()
        tour = eulerian_to_tour(graph)
        assert sorted(tour) == list(range(10))
        assert tour_cost(m, tour) <= graph.weight()

    def test_odd_multigraph_is_rejected(self, path_tree):
        graph = build_eulerian(path_tree, [])
        graph.tree_multiplicity[1] = 1
        with pytest.raises(NotEulerian):
            eulerian_to_tour(graph)

    def test_mean_weight_over_subsets(self, path_tree):
        assert mean_eulerian_weight(path_tree, [(0, 2, 2), (1, 3, 2)]) == Fraction(13, 2)


class TestTours:
    def test_closing_chord_gives_optimal_tour(self, ring_path):
        m = gen_cycle_metric(12)
        result = tour_from_advantage(ring_path, [(0, 11, 1)], m)
        assert result.cost == 12 == exact_tsp(m).value
        assert result.subsets_tried == 2
        assert sorted(result.tour) == list(range(12))

    def test_cost_within_twice_mst_minus_advantage(self, ring_path):
        m = gen_cycle_metric(12)
        report = cover_advantage(ring_path, ring_path.whole(), CountingOracle(m))
        result = tour_from_advantage(ring_path, report.witness, m)
        assert result.cost <= 2 * ring_path.total_weight() - report.value

    def test_tour_split(self, path_tree):
        e0, e1, f0, f1 = tour_split(path_tree.whole(), [0, 1, 2, 3])
        assert e0 == [(0, 1), (1, 2), (2, 3)]
        assert e1 == [(3, 0)]
        assert f0 == [(0, 3)]
        assert f1 == [(3, 0)]
        assert covers_subtree(path_tree.whole(), e0)
        assert covers_subtree(path_tree.whole(), e1)

    def test_tour_split_without_odd_vertices(self, path_tree):
        assert tour_split(SubTree(path_tree, [], [2]), [0, 1, 2, 3]) == ([], [], [], [])


class TestAdvantage:
    def test_query_candidates(self, path_tree):
        oracle = CountingOracle(gen_path_metric(4))
        edges = query_candidates(path_tree.whole(), oracle, "special")
        assert [(u, v) for u, v, _ in edges] == [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
        assert oracle.distinct_count == 5
        assert all(w == abs(u - v) for u, v, w in edges)

    def test_ring_advantage(self, ring_path):
        oracle = CountingOracle(gen_cycle_metric(12))
        report = cover_advantage(ring_path, ring_path.whole(), oracle)
        assert report.value == 10
        assert report.witness == [(0, 11, 1)]
        assert report.exact
        assert report.queries == 66

    def test_special_restriction_queries_fewer_pairs(self, ring_path):
        oracle = CountingOracle(gen_cycle_metric(12))
        report = cover_advantage(ring_path, ring_path.whole(), oracle, "special")
        assert report.value == 10
        assert report.queries == 21

    def test_mst_has_no_advantage_on_its_own_path(self, path_tree):
        report = cover_advantage(path_tree, path_tree.whole(), CountingOracle(gen_path_metric(4)))
        assert report.value == 0
        assert report.witness == []


class TestSegmentEstimate:
    def test_large_advantage(self, ring_path):
        report = estimate_segment_adv([ring_path.whole()], 0.1, CountingOracle(gen_cycle_metric(12)))
        assert report.at_least
        assert report.exhaustive
        assert report.estimate == pytest.approx(10 / 11)

    def test_no_advantage(self, path_tree):
        report = estimate_segment_adv([path_tree.whole()], 0.1, CountingOracle(gen_path_metric(4)))
        assert report.decision == "AtMost"
        assert report.estimate == 0

    def test_empty_segments(self):
        report = estimate_segment_adv([], 0.1, CountingOracle(gen_path_metric(4)))
        assert report.decision == "AtMost"
        assert report.queries == 0

    @pytest.mark.parametrize("eps", [0, 1, 1.5])
    def test_bad_eps(self, eps, path_tree):
        with pytest.raises(BadParameters):
            estimate_segment_adv([path_tree.whole()], eps, CountingOracle(gen_path_metric(4)))

    def test_sampled_estimate_counts_draws(self, ring_path):
        segments = [SubTree(ring_path, [c]) for c in range(1, 12)]
        report = estimate_segment_adv(segments, 0.5, CountingOracle(gen_cycle_metric(12)), samples=5, seed=3)
        assert not report.exhaustive
        assert report.samples == 5
        assert report.estimate >= 0
