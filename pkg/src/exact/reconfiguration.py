"""轻子图的最优重构代价

重构 R 是 V(S) 上重数不超过 2 的连通多重图, 其代价为
    sum w(u, u') + 1/2 * sum_{奇度顶点 u} ord(u) - (|V(S)| - 1).
"""
from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, List, Sequence, Tuple
import logging

from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import minimum_spanning_tree
import numpy as np

from src.exact.result import ExactResult

logger = logging.getLogger(__name__)

EXACT_VERTEX_CAP = 6

DistanceFn = Callable[[int, int], int]
Multigraph = Dict[Tuple[int, int], int]


def reconfiguration_cost(vertices: Sequence[int], dist: DistanceFn, ord_values: Dict[int, int],
                         multigraph: Multigraph) -> Fraction:
    degree = {v: 0 for v in vertices}
    total = Fraction(0)
    for (u, v), mult in multigraph.items():
        total += mult * dist(u, v)
        degree[u] += mult
        degree[v] += mult
    odd = sum(ord_values[v] for v in vertices if degree[v] % 2)
    return total + Fraction(odd, 2) - (len(vertices) - 1)


def _spanning_tree(count: int, weights: np.ndarray) -> List[Tuple[int, int]]:
    """稠密权矩阵上的最小生成树边 (scipy)"""
    if count <= 1:
        return []
    shifted = np.where(np.eye(count, dtype=bool), 0, weights + 1)
    tree = minimum_spanning_tree(csr_matrix(shifted)).tocoo()
    return sorted((min(int(a), int(b)), max(int(a), int(b))) for a, b in zip(tree.row, tree.col))


def _exact(vertices: Sequence[int], dist: DistanceFn, ord_values: Dict[int, int]) -> ExactResult:
    k = len(vertices)
    pairs = sorted(combinations(range(k), 2), key=lambda ab: (dist(vertices[ab[0]], vertices[ab[1]]), ab))
    w = {(a, b): dist(vertices[a], vertices[b]) for a, b in pairs}
    ords = [ord_values[v] for v in vertices]
    best_cost, best_graph = None, None
    for subset in range(1 << len(pairs)):
        parent = list(range(k))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        degree = [0] * k
        chosen, single = [], 0
        for i, (a, b) in enumerate(pairs):
            if subset >> i & 1:
                chosen.append((a, b))
                degree[a] += 1
                degree[b] += 1
                single += w[(a, b)]
                parent[find(a)] = find(b)
        # 用双重边按 Kruskal 顺序连接剩余分量
        doubled = []
        for a, b in pairs:
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
                doubled.append((a, b))
        odd = sum(ords[i] for i in range(k) if degree[i] % 2)
        cost = single + 2 * sum(w[p] for p in doubled) + Fraction(odd, 2) - (k - 1)
        if best_cost is None or cost < best_cost:
            graph: Multigraph = {}
            for a, b in chosen:
                graph[_key(vertices[a], vertices[b])] = 1
            for a, b in doubled:
                graph[_key(vertices[a], vertices[b])] = 2
            best_cost, best_graph = cost, graph
    return ExactResult(best_cost, best_graph, True)


def _key(u: int, v: int) -> Tuple[int, int]:
    return (min(u, v), max(u, v))


def _heuristic(vertices: Sequence[int], dist: DistanceFn, ord_values: Dict[int, int]) -> ExactResult:
    k = len(vertices)
    w = np.array([[dist(vertices[a], vertices[b]) if a != b else 0 for b in range(k)] for a in range(k)],
                 dtype=np.int64)
    tree = _spanning_tree(k, w)
    graph: Multigraph = {_key(vertices[a], vertices[b]): 1 for a, b in tree}
    degree = [0] * k
    for a, b in tree:
        degree[a] += 1
        degree[b] += 1
    odd = [i for i in range(k) if degree[i] % 2]
    pairings = sorted((int(w[a, b]), a, b) for a, b in combinations(odd, 2))
    paired = set()
    for weight, a, b in pairings:
        if a in paired or b in paired:
            continue
        key = _key(vertices[a], vertices[b])
        if graph.get(key, 0) >= 2:
            continue
        if Fraction(weight) < Fraction(ord_values[vertices[a]] + ord_values[vertices[b]], 2):
            graph[key] = graph.get(key, 0) + 1
            paired.update((a, b))
    cost = reconfiguration_cost(vertices, dist, ord_values, graph)
    doubled = {_key(vertices[a], vertices[b]): 2 for a, b in tree}
    doubled_cost = reconfiguration_cost(vertices, dist, ord_values, doubled)
    if doubled_cost < cost:
        return ExactResult(doubled_cost, doubled, False)
    return ExactResult(cost, graph, False)


def exact_reconfiguration(vertices: Sequence[int], dist: DistanceFn, ord_values: Dict[int, int],
                          cap: int = EXACT_VERTEX_CAP) -> ExactResult:
    """最优重构 (|V(S)| <= cap 时精确, 否则为 MST 加贪心配对的上界)"""
    vertices = list(vertices)
    if len(vertices) <= 1:
        return ExactResult(Fraction(0), {}, True)
    if len(vertices) <= cap:
        return _exact(vertices, dist, ord_values)
    return _heuristic(vertices, dist, ord_values)
