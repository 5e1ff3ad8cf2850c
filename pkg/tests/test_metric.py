import numpy as np
import pytest

from src.errors import BadParameters, DisconnectedGraph
from src.metric import (Metric, WeightedGraph, as_metric, graph_of_metric, metric_from_graph, read_instance,
                        validate_metric, weight_one_graph, write_graph, write_metric)


class TestMetric:
    def test_table_is_read_only(self, path_metric):
        with pytest.raises(ValueError):
            path_metric.dist[0, 1] = 7
        assert path_metric(0, 5) == 5
        assert path_metric.diameter() == 5

    def test_shape_mismatch(self):
        with pytest.raises(BadParameters):
            Metric(3, np.zeros((2, 2), dtype=np.int64))

    def test_valid_metric_has_no_violations(self, random_metric):
        assert validate_metric(random_metric) == []

    def test_triangle_violation(self):
        m = Metric.from_table([[0, 1, 5], [1, 0, 1], [5, 1, 0]])
        kinds = {(v.kind, v.vertices) for v in validate_metric(m)}
        assert ("triangle", (0, 1, 2)) in kinds

    def test_asymmetry_and_zero_distance(self):
        m = Metric.from_table([[0, 1, 0], [2, 0, 1], [0, 1, 0]])
        kinds = {v.kind for v in validate_metric(m)}
        assert "asymmetric" in kinds
        assert "non-positive" in kinds


class TestWeightedGraph:
    @pytest.mark.parametrize("edges", [
        [(0, 0, 1)],
        [(0, 1, 1), (1, 0, 2)],
        [(0, 1, 0)],
        [(0, 5, 1)],
    ])
    def test_rejects_bad_edges(self, edges):
        with pytest.raises(BadParameters):
            WeightedGraph(3, edges)

    def test_closure_uses_shortest_paths(self):
        g = WeightedGraph(3, [(0, 1, 2), (1, 2, 3), (0, 2, 9)])
        m = metric_from_graph(g)
        assert m(0, 2) == 5
        assert validate_metric(m) == []

    def test_disconnected_closure(self):
        g = WeightedGraph(4, [(0, 1, 1), (2, 3, 1)])
        assert not g.is_connected()
        with pytest.raises(DisconnectedGraph):
            metric_from_graph(g)

    def test_complete_graph_of_metric(self, path_metric):
        g = graph_of_metric(path_metric)
        assert g.m == 15
        assert as_metric(g).dist.tolist() == path_metric.dist.tolist()

    def test_weight_one_graph(self, star_metric):
        g1 = weight_one_graph(star_metric)
        assert sorted((u, v) for u, v, _ in g1.edges) == [(0, v) for v in range(1, 6)]
        assert g1.unweighted


class TestInstanceFiles:
    def test_metric_file(self, tmp_path, random_metric):
        path = tmp_path / "m.txt"
        write_metric(random_metric, path)
        assert path.read_text().splitlines()[0] == "metric 9"
        back = read_instance(path)
        assert isinstance(back, Metric)
        assert np.array_equal(back.dist, random_metric.dist)

    def test_graph_file(self, tmp_path):
        g = WeightedGraph(4, [(0, 1, 3), (1, 2, 1), (2, 3, 7)])
        path = tmp_path / "g.txt"
        write_graph(g, path)
        back = read_instance(path)
        assert isinstance(back, WeightedGraph)
        assert back.edges == g.edges

    @pytest.mark.parametrize("text", [
        "",
        "metric 3\n1\n",
        "metric 3\n1\n2\n",
        "metric 3\n1\n2 x\n",
        "graph 3 2\n0 1 1\n",
        "tree 3\n",
    ])
    def test_malformed(self, tmp_path, text):
        path = tmp_path / "bad.txt"
        path.write_text(text)
        with pytest.raises(BadParameters):
            read_instance(path)
