from fractions import Fraction
from typing import Dict, List, Sequence, Tuple, Union
import logging

import networkx as nx

from src.errors import TooLarge
from src.exact.result import ExactResult
from src.metric import Metric, WeightedGraph, weight_one_graph
from src.tree import RootedTree

logger = logging.getLogger(__name__)

CARDINALITY_CAP = 60
WEIGHTED_CAP = 16

Number = Union[int, Fraction]


def _to_nx(n: int, edges) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from((u, v) for u, v, *_ in edges)
    return g


def max_matching_pairs(n: int, edges) -> List[Tuple[int, int]]:
    """最大基数匹配 (networkx 带花算法), 不设规模上限"""
    matching = nx.max_weight_matching(_to_nx(n, edges), maxcardinality=True)
    return sorted((min(u, v), max(u, v)) for u, v in matching)


def exact_max_matching(g: WeightedGraph) -> ExactResult:
    if g.n > CARDINALITY_CAP:
        raise TooLarge(f"exact maximum matching is capped at n={CARDINALITY_CAP}, got n={g.n}")
    pairs = max_matching_pairs(g.n, g.edges)
    return ExactResult(len(pairs), pairs)


def exact_max_weight_matching(n: int, edges: Sequence[Tuple[int, int, Number]]) -> ExactResult:
    """最大权匹配, 对顶点子集做位掩码 DP"""
    if n > WEIGHTED_CAP:
        raise TooLarge(f"exact weighted matching is capped at n={WEIGHTED_CAP}, got n={n}")
    weight: Dict[Tuple[int, int], Number] = {}
    for u, v, w in edges:
        key = (min(u, v), max(u, v))
        if w > weight.get(key, 0):
            weight[key] = w
    partners: List[List[Tuple[int, Number]]] = [[] for _ in range(n)]
    for (u, v), w in weight.items():
        partners[u].append((v, w))
        partners[v].append((u, w))
    best: List[Number] = [0] * (1 << n)
    choice: List[int] = [-1] * (1 << n)
    for mask in range(1, 1 << n):
        v = (mask & -mask).bit_length() - 1
        rest = mask ^ (1 << v)
        value, pick = best[rest], -1
        for u, w in partners[v]:
            if rest >> u & 1:
                candidate = w + best[rest ^ (1 << u)]
                if candidate > value:
                    value, pick = candidate, u
        best[mask], choice[mask] = value, pick
    pairs = []
    mask = (1 << n) - 1
    while mask:
        v = (mask & -mask).bit_length() - 1
        u = choice[mask]
        mask ^= 1 << v
        if u >= 0:
            pairs.append((min(u, v), max(u, v)))
            mask ^= 1 << u
    return ExactResult(best[(1 << n) - 1], sorted(pairs))


def ancestor_tree_matching(tree: RootedTree) -> List[Tuple[int, int]]:
    """自顶向下: 未匹配且祖先均已匹配的顶点与一个未匹配的孩子匹配

    结束时未匹配的顶点都没有孩子, 所以匹配大小至少为 (n - 叶子数) / 2.
    """
    matched = set()
    pairs = []
    for v in tree.preorder:
        if v in matched:
            continue
        free = [c for c in tree.children[v] if c not in matched]
        if free:
            matched.update((v, free[0]))
            pairs.append((min(v, free[0]), max(v, free[0])))
    return pairs


def g1_lower_bounds(m: Metric) -> Tuple[int, Fraction]:
    """(2n - 2MM(G1), n + L/2), L 为 G1 中度数为 1 的顶点数"""
    g1 = weight_one_graph(m)
    mm = len(max_matching_pairs(m.n, g1.edges))
    degree = [0] * m.n
    for u, v, _ in g1.edges:
        degree[u] += 1
        degree[v] += 1
    leaves = sum(1 for d in degree if d == 1)
    return 2 * m.n - 2 * mm, Fraction(m.n) + Fraction(leaves, 2)
