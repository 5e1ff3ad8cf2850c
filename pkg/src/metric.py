from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence, Tuple, Union
import logging

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import shortest_path

from src.errors import BadParameters, DisconnectedGraph

logger = logging.getLogger(__name__)

MAX_VERTICES = 10_000

Edge = Tuple[int, int, int]


@dataclass(frozen=True, eq=False)
class Metric:
    """整数距离度量, 距离表对称且对角为零"""
    n: int
    dist: np.ndarray = field(repr=False)

    def __post_init__(self):
        table = np.asarray(self.dist, dtype=np.int64)
        if table.shape != (self.n, self.n):
            raise BadParameters(f"distance table must be {self.n}x{self.n}, got {table.shape}")
        if self.n > MAX_VERTICES:
            raise BadParameters(f"n={self.n} exceeds the supported maximum {MAX_VERTICES}")
        table = table.copy()
        table.setflags(write=False)
        object.__setattr__(self, "dist", table)

    @classmethod
    def from_table(cls, rows: Sequence[Sequence[int]]) -> "Metric":
        table = np.asarray(rows, dtype=np.int64)
        return cls(table.shape[0], table)

    def __call__(self, u: int, v: int) -> int:
        return int(self.dist[u, v])

    def diameter(self) -> int:
        return int(self.dist.max()) if self.n > 1 else 0


@dataclass
class WeightedGraph:
    """带正整数边权的无向图"""
    n: int
    edges: List[Edge] = field(default_factory=list)
    unweighted: bool = False

    def __post_init__(self):
        seen = set()
        for u, v, w in self.edges:
            if u == v:
                raise BadParameters(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise BadParameters(f"edge ({u}, {v}) out of range for n={self.n}")
            if w < 1:
                raise BadParameters(f"edge ({u}, {v}) has non-positive weight {w}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise BadParameters(f"duplicate edge {key}")
            seen.add(key)

    @property
    def m(self) -> int:
        return len(self.edges)

    def total_weight(self) -> int:
        return sum(w for _, _, w in self.edges)

    def adjacency(self) -> List[List[Tuple[int, int]]]:
        adj: List[List[Tuple[int, int]]] = [[] for _ in range(self.n)]
        for u, v, w in self.edges:
            adj[u].append((v, w))
            adj[v].append((u, w))
        return adj

    def component_count(self) -> int:
        parent = list(range(self.n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        count = self.n
        for u, v, _ in self.edges:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                count -= 1
        return count

    def is_connected(self) -> bool:
        return self.n <= 1 or self.component_count() == 1


def metric_from_graph(g: WeightedGraph) -> Metric:
    """由加权图的最短路距离构造度量"""
    if g.n == 1:
        return Metric(1, np.zeros((1, 1), dtype=np.int64))
    rows = [u for u, _, _ in g.edges]
    cols = [v for _, v, _ in g.edges]
    weights = [w for _, _, w in g.edges]
    adjacency = coo_matrix((weights, (rows, cols)), shape=(g.n, g.n)).tocsr()
    closure = shortest_path(adjacency, method="D", directed=False)
    if np.isinf(closure).any():
        u, v = np.argwhere(np.isinf(closure))[0]
        raise DisconnectedGraph(f"vertices {u} and {v} are not connected")
    logger.debug(f"Closed graph with n={g.n}, m={g.m} under shortest paths")
    return Metric(g.n, np.rint(closure).astype(np.int64))


def graph_of_metric(m: Metric) -> WeightedGraph:
    """度量对应的完全加权图"""
    iu, iv = np.triu_indices(m.n, k=1)
    edges = [(int(u), int(v), int(m.dist[u, v])) for u, v in zip(iu, iv)]
    return WeightedGraph(m.n, edges)


def weight_one_graph(m: Metric) -> WeightedGraph:
    """G1: 距离为 1 的点对组成的无权图 (离线计算, 不计查询)"""
    iu, iv = np.nonzero(np.triu(m.dist == 1, k=1))
    return WeightedGraph(m.n, [(int(u), int(v), 1) for u, v in zip(iu, iv)], unweighted=True)


@dataclass(frozen=True)
class Violation:
    kind: str
    vertices: Tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}{self.vertices}"


def validate_metric(m: Metric) -> List[Violation]:
    """检查度量的全部不变量, 返回违例列表"""
    d = m.dist
    violations: List[Violation] = []
    for u in range(m.n):
        if d[u, u] != 0:
            violations.append(Violation("nonzero-diagonal", (u,)))
    asym = np.argwhere(np.triu(d != d.T, k=1))
    violations.extend(Violation("asymmetric", (int(u), int(v))) for u, v in asym)
    off_diag = ~np.eye(m.n, dtype=bool)
    small = np.argwhere(np.triu((d < 1) & off_diag, k=1))
    violations.extend(Violation("non-positive", (int(u), int(v))) for u, v in small)
    for v in range(m.n):
        through = d[:, v][:, None] + d[v, :][None, :]
        bad = np.argwhere(np.triu(d > through, k=1))
        for u, w in bad:
            if v != u and v != w:
                violations.append(Violation("triangle", (int(u), v, int(w))))
    violations.sort(key=lambda x: (x.kind, x.vertices))
    return violations


def write_metric(m: Metric, path: Union[str, Path]) -> None:
    lines = [f"metric {m.n}"]
    for i in range(1, m.n):
        lines.append(" ".join(str(int(x)) for x in m.dist[i, :i]))
    Path(path).write_text("\n".join(lines) + "\n")


def write_graph(g: WeightedGraph, path: Union[str, Path]) -> None:
    lines = [f"graph {g.n} {g.m}"]
    lines.extend(f"{u} {v} {w}" for u, v, w in g.edges)
    Path(path).write_text("\n".join(lines) + "\n")


def _data_lines(text: str) -> List[str]:
    return [line.strip() for line in text.splitlines() if line.strip() and not line.startswith("#")]


def read_instance(path: Union[str, Path]) -> Union[Metric, WeightedGraph]:
    """读取 metric 或 graph 文件"""
    lines = _data_lines(Path(path).read_text())
    if not lines:
        raise BadParameters(f"empty instance file {path}")
    header = lines[0].split()
    try:
        if header[0] == "metric":
            n = int(header[1])
            if len(lines) < n:
                raise BadParameters(f"metric file {path} has {len(lines) - 1} rows, expected {n - 1}")
            table = np.zeros((n, n), dtype=np.int64)
            for i in range(1, n):
                values = [int(x) for x in lines[i].split()]
                if len(values) != i:
                    raise BadParameters(f"metric row {i} has {len(values)} entries, expected {i}")
                table[i, :i] = values
                table[:i, i] = values
            return Metric(n, table)
        if header[0] == "graph":
            n, count = int(header[1]), int(header[2])
            if len(lines) < count + 1:
                raise BadParameters(f"graph file {path} lists {len(lines) - 1} edges, expected {count}")
            edges = []
            for line in lines[1:1 + count]:
                u, v, w = (int(x) for x in line.split())
                edges.append((u, v, w))
            return WeightedGraph(n, edges)
    except BadParameters:
        raise
    except (IndexError, ValueError) as e:
        raise BadParameters(f"malformed instance file {path}: {str(e)}")
    raise BadParameters(f"unknown instance header {header[0]!r}")


def as_metric(instance: Union[Metric, WeightedGraph]) -> Metric:
    if isinstance(instance, Metric):
        return instance
    return metric_from_graph(instance)
