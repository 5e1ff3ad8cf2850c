import networkx as nx
import numpy as np
import pytest

from src.config import G1Config
from src.errors import BadParameters, PromiseViolated, TooLarge
from src.exact import exact_tsp
from src.exact.matching import max_matching_pairs
from src.generators import gen_cycle_metric, gen_one_two_metric, gen_path_metric, gen_random_metric, gen_star_metric
from src.metric import weight_one_graph
from src.oracle import CountingOracle
from src.query import (bfs, degree1_test, estimate_tsp_g1, extract_induced_paths, greedy_proper_tour, local,
                       matching_size_estimate, out_reach, proper_tour_cost, reconfig_cost)
from src.query.matching_estimate import GreedyMatchingOracle
from src.verify import run_verify


def g1_of(metric) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(metric.n))
    g.add_edges_from((u, v) for u, v, _ in weight_one_graph(metric).edges)
    return g


class TestLocal:
    def test_path_end_is_light(self):
        result = local(0, 2, CountingOracle(gen_path_metric(10)))
        assert result.success
        assert result.vertices == frozenset({0, 1})
        assert result.edges == [(0, 1)]
        assert result.witness == (1, 2)
        assert result.explored == 4

    def test_path_middle_is_not_light(self):
        assert not local(10, 2, CountingOracle(gen_path_metric(20))).success

    def test_small_component_breaks_the_promise(self):
        with pytest.raises(PromiseViolated):
            local(0, 3, CountingOracle(gen_one_two_metric(8, [(0, 1)])))

    @pytest.mark.parametrize("s", [0, 5, 6])
    def test_bad_size(self, s):
        with pytest.raises(BadParameters):
            local(0, s, CountingOracle(gen_path_metric(10)))

    @pytest.mark.parametrize("seed", range(6))
    def test_success_is_cut_by_its_witness_alone(self, seed):
        metric = gen_random_metric(12, seed, "graphic")
        g1 = g1_of(metric)
        oracle = CountingOracle(metric)
        for v in range(12):
            for s in (1, 2, 3):
                result = local(v, s, oracle)
                if not result.success:
                    continue
                assert v in result.vertices
                assert len(result.vertices) <= s
                leaving = [(a, b) for a, b in g1.edges() if (a in result.vertices) != (b in result.vertices)]
                assert len(leaving) == 1
                assert set(leaving[0]) == set(result.witness)
                assert result.witness[0] in result.vertices

    def test_out_reach_and_reconfiguration(self):
        oracle = CountingOracle(gen_path_metric(10))
        assert out_reach(0, {0, 1}, oracle) == 2
        assert out_reach(1, {0, 1}, oracle) == 1
        rc = reconfig_cost({0, 1}, oracle)
        assert rc.exact
        assert rc.value >= 0
        with pytest.raises(BadParameters):
            out_reach(0, range(10), oracle)

    def test_reconfiguration_bounds_suite(self):
        report = run_verify("fast", seeds=range(8), suites=["reconfiguration_bounds"])
        assert report.passed
        assert report.suites[0].checks >= 8


class TestBfs:
    def test_cycle_neighbourhood_is_a_path(self):
        result = bfs(0, 3, 400, 20.0, CountingOracle(gen_cycle_metric(20)))
        assert result.success
        assert result.path == [3, 2, 1, 0, 19, 18, 17]
        assert result.interface == (3, 17)
        assert sorted(result.support) == sorted(result.path_edges())

    def test_budget_of_one_row_aborts(self):
        result = bfs(0, 3, 19, 20.0, CountingOracle(gen_cycle_metric(20)))
        assert result.aborted
        assert not result.success
        assert result.queries <= 19

    def test_star_fails_without_abort(self, star_metric):
        result = bfs(0, 2, 100, 20.0, CountingOracle(star_metric))
        assert not result.success
        assert not result.aborted

    def test_too_many_vertices_fails(self):
        result = bfs(0, 3, 400, 2.0, CountingOracle(gen_cycle_metric(20)))
        assert not result.success

    def test_bad_parameters(self):
        oracle = CountingOracle(gen_cycle_metric(10))
        with pytest.raises(BadParameters):
            bfs(0, 0, 100, 20.0, oracle)
        with pytest.raises(BadParameters):
            bfs(0, 2, 8, 20.0, oracle)

    @pytest.mark.parametrize("seed", range(4))
    def test_tree_edges_are_weight_one(self, seed):
        metric = gen_random_metric(14, seed, "graphic")
        for v in range(0, 14, 3):
            result = bfs(v, 2, 14 * 14, 20.0, CountingOracle(metric))
            for child, parent in result.parent.items():
                if parent is not None:
                    assert metric(child, parent) == 1
                    assert result.level[child] == result.level[parent] + 1

    @pytest.mark.parametrize("seed", range(6))
    def test_queried_pairs_stay_near_the_tree(self, seed):
        metric = gen_random_metric(14, seed, "graphic")
        for v in range(14):
            result = bfs(v, 2, 14 * 14, 20.0, CountingOracle(metric))
            for u, asked in result.probes.items():
                assert u not in result.parent
                reach = min(metric(u, t) for t in result.parent)
                for x in asked:
                    for y in asked:
                        if x != y:
                            assert metric(x, y) >= reach - 1


class TestDegreeOne:
    def test_path_has_enough_leaves(self):
        report = degree1_test(0.1, CountingOracle(gen_path_metric(10)))
        assert report.at_least
        assert report.exhaustive
        assert report.hits == 2

    def test_cycle_has_none(self):
        report = degree1_test(0.1, CountingOracle(gen_cycle_metric(10)))
        assert report.decision == "AtMost"
        assert report.hits == 0

    def test_sampled(self):
        report = degree1_test(0.1, CountingOracle(gen_path_metric(10)), seed=1, samples=3)
        assert not report.exhaustive
        assert report.samples == 3

    def test_isolated_vertex_breaks_the_promise(self):
        with pytest.raises(PromiseViolated):
            degree1_test(0.1, CountingOracle(gen_one_two_metric(4, [(0, 1)])))


class TestMatching:
    @pytest.mark.parametrize("seed", range(5))
    def test_local_oracle_is_a_maximal_matching(self, seed):
        metric = gen_random_metric(12, seed, "graphic")
        g1 = g1_of(metric)
        local_oracle = GreedyMatchingOracle(CountingOracle(metric), range(12), np.random.default_rng(seed))
        chosen = [(min(a, b), max(a, b)) for a, b in g1.edges()
                  if local_oracle.edge_in_matching((min(a, b), max(a, b)))]
        used = [v for e in chosen for v in e]
        assert len(used) == len(set(used))
        assert all(a in used or b in used for a, b in g1.edges())
        assert all(local_oracle.vertex_matched(v) == (v in used) for v in range(12))

    def test_exhaustive_estimate(self, cycle_metric):
        estimate = matching_size_estimate(range(12), 0.1, CountingOracle(cycle_metric), samples=12)
        assert estimate.exhaustive
        assert 4 <= estimate.value <= 6

    def test_sampled_estimate(self, cycle_metric):
        estimate = matching_size_estimate(range(12), 0.1, CountingOracle(cycle_metric), seed=2, samples=5)
        assert not estimate.exhaustive
        assert estimate.samples == 5
        assert 0 <= estimate.value <= 6

    def test_budget_stops_sampling(self, cycle_metric):
        estimate = matching_size_estimate(range(12), 0.1, CountingOracle(cycle_metric), samples=5, budget=1)
        assert estimate.budget_exceeded
        assert estimate.value == 0

    def test_trivial_and_bad_inputs(self, cycle_metric):
        assert matching_size_estimate([3], 0.1, CountingOracle(cycle_metric)).value == 0
        with pytest.raises(BadParameters):
            matching_size_estimate(range(12), 0, CountingOracle(cycle_metric))

    @pytest.mark.slow
    def test_sampled_estimate_at_scale(self):
        n, eps, seeds = 1000, 0.05, range(20)
        within = 0
        for seed in seeds:
            metric = gen_random_metric(n, seed, "graphic")
            best = len(max_matching_pairs(n, weight_one_graph(metric).edges))
            estimate = matching_size_estimate(range(n), eps, CountingOracle(metric), seed=seed, samples=800)
            assert not estimate.exhaustive
            within += estimate.value <= best <= 2 * estimate.value + eps * n
        assert within >= 0.95 * len(seeds)


class TestInducedPaths:
    def test_branch_vertices_cut_paths(self):
        extraction = extract_induced_paths([[0, 1, 2, 3], [2, 4, 5]], 0.1, 1, 10)
        assert extraction.paths == [[0, 1], [4, 5]]
        assert extraction.dropped_short == 1
        assert extraction.covered_edges == 2
        assert extraction.bad_paths == 0

    def test_cycle_is_broken_at_smallest_vertex(self):
        assert extract_induced_paths([[0, 1, 2, 3, 0]], 0.1, 1, 10).paths == [[1, 2, 3]]

    def test_proper_tour(self):
        oracle = CountingOracle(gen_path_metric(4))
        tour = proper_tour_cost([[0, 1], [2, 3]], oracle)
        assert tour.cost == 6
        assert tour.exact
        assert sorted(tour.tour) == [0, 1, 2, 3]
        assert tour.queries == 6

    def test_greedy_tour_is_an_upper_bound(self):
        paths = [[0, 1], [5, 6], [2, 3, 4], [7]]
        metric = gen_cycle_metric(8)
        exact = proper_tour_cost(paths, CountingOracle(metric))
        greedy = greedy_proper_tour(paths, CountingOracle(metric))
        assert not greedy.exact
        assert greedy.cost >= exact.cost == 8

    def test_proper_tour_cap(self):
        with pytest.raises(TooLarge):
            proper_tour_cost([[v] for v in range(15)], CountingOracle(gen_path_metric(15)))

    @pytest.mark.parametrize("n,k", [(8, 1), (9, 2), (10, 3), (11, 4)])
    def test_cut_cycle_tour_is_short(self, n, k):
        metric = gen_cycle_metric(n)
        tsp = exact_tsp(metric).value
        rng = np.random.default_rng(n + k)
        cuts = sorted(rng.choice(np.arange(1, n), size=k - 1, replace=False).tolist())
        pieces = [list(range(a, b)) for a, b in zip([0] + cuts, cuts + [n])]
        paths = [pieces[i][::-1] if rng.integers(2) else pieces[i] for i in rng.permutation(k).tolist()]
        owner = {v: i for i, p in enumerate(paths) for v in p}
        ends = {v for p in paths for v in (p[0], p[-1])}
        for a, b in g1_of(metric).edges():
            if owner[a] != owner[b]:
                assert a in ends and b in ends
        eps = tsp / n - 1
        eps_edges = 1 - sum(len(p) - 1 for p in paths) / n
        tour = proper_tour_cost(paths, CountingOracle(metric))
        assert tour.cost == tsp == n
        assert tour.cost <= (1 + 3 * eps + 4 * eps_edges) * n + 2 * len(paths)


class TestG1Estimator:
    def test_cycle(self, cycle_metric):
        estimate = estimate_tsp_g1(CountingOracle(cycle_metric), G1Config.desk(12))
        assert estimate.branch == "tour-short"
        assert estimate.value == pytest.approx(1.9 * 12)
        assert estimate.details["proper_tour"] == 12
        assert estimate.details["completed_tour"] == 14
        assert estimate.sandwich(12)
        assert estimate.distinct_queries > 0

    def test_large_tour_factor_keeps_the_cycle_long(self, cycle_metric):
        estimate = estimate_tsp_g1(CountingOracle(cycle_metric), G1Config.desk(12, tour_factor=100.0))
        assert estimate.branch == "tour-long"
        assert estimate.value == 24

    @pytest.mark.parametrize("n", [8, 10, 13, 16])
    def test_hamiltonian_cycles_are_tight(self, n):
        estimate = estimate_tsp_g1(CountingOracle(gen_cycle_metric(n)), G1Config.desk(n), seed=n)
        assert estimate.branch == "tour-short"
        assert n <= estimate.value <= 2 * n
        assert estimate.value < 2 * n - 2

    @pytest.mark.parametrize("n", [6, 10, 14])
    def test_trees_return_the_degree_one_estimate(self, n):
        for metric in (gen_path_metric(n), gen_star_metric(n)):
            tsp = exact_tsp(metric).value
            estimate = estimate_tsp_g1(CountingOracle(metric), G1Config.desk(n))
            assert estimate.branch == "degree1"
            assert estimate.value == 2 * n
            assert tsp == 2 * n - 2
            assert estimate.sandwich(tsp)

    def test_path(self):
        estimate = estimate_tsp_g1(CountingOracle(gen_path_metric(10)), G1Config.desk(10))
        assert estimate.branch == "degree1"
        assert estimate.value == 20
        assert estimate.breakdown["degree1"] == 45

    def test_two_vertices(self):
        estimate = estimate_tsp_g1(CountingOracle(gen_path_metric(2)))
        assert estimate.branch == "trivial"
        assert estimate.value == 2

    def test_sandwich_and_graphic_bounds(self):
        report = run_verify("fast", seeds=range(6), suites=["query_g1_sandwich", "graphic_bounds"])
        assert report.passed

    def test_hamiltonian_suite(self):
        report = run_verify("fast", seeds=range(9), suites=["query_g1_hamiltonian"])
        assert report.passed
        assert report.suites[0].checks == 9 + 3

    @pytest.mark.slow
    def test_sandwich_on_a_hundred_instances(self):
        report = run_verify("full", suites=["query_g1_sandwich", "query_g1_hamiltonian", "reconfiguration_bounds"])
        g1, hamiltonian, _ = report.suites
        assert report.passed
        assert g1.checks == 100
        assert hamiltonian.checks >= 100
