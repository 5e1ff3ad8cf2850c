import numpy as np
import pytest

from src.errors import BadParameters
from src.exact import exact_mst, exact_tsp, tour_cost
from src.generators import (STYLES, InstanceSpec, gen_coi_graph, gen_multipass_family, gen_onepass_family,
                            gen_random_graph, gen_random_metric, gen_tsp_gadget, multipass_mst, onepass_mst)
from src.metric import Metric, metric_from_graph, validate_metric, weight_one_graph


class TestRandomInstances:
    @pytest.mark.parametrize("style", STYLES)
    def test_deterministic_and_valid(self, style):
        a = gen_random_metric(12, seed=3, style=style)
        b = gen_random_metric(12, seed=3, style=style)
        assert np.array_equal(a.dist, b.dist)
        assert validate_metric(a) == []

    def test_seed_changes_instance(self):
        a = gen_random_metric(12, seed=1, style="weighted-closure")
        b = gen_random_metric(12, seed=2, style="weighted-closure")
        assert not np.array_equal(a.dist, b.dist)

    @pytest.mark.parametrize("seed", range(5))
    def test_graphic_metrics_have_connected_g1(self, seed):
        m = gen_random_metric(15, seed=seed, style="graphic")
        assert weight_one_graph(m).is_connected()

    def test_unknown_style(self):
        with pytest.raises(BadParameters):
            gen_random_metric(5, seed=0, style="hyperbolic")

    def test_random_graph_is_connected(self):
        g = gen_random_graph(20, seed=4)
        assert g.is_connected()
        assert all(1 <= w <= 20 for _, _, w in g.edges)


class TestLowerBoundFamilies:
    @pytest.mark.parametrize("k,r", [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)])
    @pytest.mark.parametrize("which", ["Y", "N"])
    def test_onepass_closed_form(self, k, r, which):
        n = k * r + 2 * k * r
        m = gen_onepass_family(k, r, 1, n + 1, which)
        assert m.n == n
        assert exact_mst(m).value == onepass_mst(k, r, 1, n + 1, which)

    def test_onepass_rejects_small_l(self):
        with pytest.raises(BadParameters):
            gen_onepass_family(1, 2, 1, 6, "Y")

    @pytest.mark.parametrize("N,m", [(2, 2), (3, 2), (2, 3), (4, 3)])
    @pytest.mark.parametrize("which", ["Y", "N"])
    def test_multipass_closed_form(self, N, m, which):
        M = 2 * N * m
        metric = gen_multipass_family(N, m, M, which)
        assert validate_metric(metric) == []
        assert exact_mst(metric).value == multipass_mst(N, m, M, which)

    def test_gadget_mst_and_witness(self):
        gadget = gen_tsp_gadget([[1, 0], [0, 1]], 0, 0, 2, 100)
        metric = metric_from_graph(gadget.graph)
        assert gadget.n == 10
        assert exact_mst(metric).value == gadget.mst_weight()
        tour = gadget.witness_tour()
        assert sorted(tour) == list(range(gadget.n))
        assert tour_cost(metric, tour) <= gadget.witness_bound()

    def test_gadget_without_cross_edges_doubles(self):
        gadget = gen_tsp_gadget([[0, 0], [0, 1]], 0, 0, 1, 36)
        metric = metric_from_graph(gadget.graph)
        assert exact_tsp(metric).value == 2 * gadget.mst_weight()

    def test_gadget_cross_edge_in_row_beats_the_euler_tour(self):
        gadget = gen_tsp_gadget([[0, 1], [0, 0]], 0, 0, 1, 36)
        metric = metric_from_graph(gadget.graph)
        tour = [0, gadget.u(0, 0), gadget.u_prime(1, 0), 1, gadget.u_prime(0, 0), gadget.u(1, 0)]
        assert tour_cost(metric, tour) == 5 * 36 + 11
        assert exact_tsp(metric).value <= 5 * 36 + 11 < 2 * gadget.mst_weight()

    @pytest.mark.parametrize("r", [1, 2])
    def test_gadget_witness_cost(self, r):
        n = 2 + 4 * r
        gadget = gen_tsp_gadget([[1, 0], [0, 0]], 0, 0, r, n * n)
        cost = tour_cost(metric_from_graph(gadget.graph), gadget.witness_tour())
        assert cost == gadget.witness_bound() == 2 * n - 2 + (2 * r + 2) * n * n

    @pytest.mark.parametrize("X,L", [([[0, 2], [1, 0]], 100), ([[1, 0]], 100), ([[1, 0], [0, 1]], 35)])
    def test_gadget_rejects_bad_input(self, X, L):
        with pytest.raises(BadParameters):
            gen_tsp_gadget(X, 0, 0, 1, L)

    def test_coi_components(self):
        yes = gen_coi_graph(3, 4, "Y")
        no = gen_coi_graph(3, 4, "N")
        assert yes.component_count() == 4
        assert no.component_count() == 3 + 3


class TestInstanceSpec:
    def test_build_and_label(self):
        spec = InstanceSpec("multipass", N=2, m=3, M=12, which="N")
        m = spec.build()
        assert isinstance(m, Metric)
        assert m.n == 6
        assert spec.label() == "multipass-M12-N2-m3-whichN"

    def test_unknown_kind(self):
        with pytest.raises(BadParameters):
            InstanceSpec("lattice").build()
