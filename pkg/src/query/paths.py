"""支撑路径的诱导子路径抽取与 Q-合规巡回"""
from dataclasses import dataclass, field
from typing import List, Sequence, Tuple
import logging
import math

import networkx as nx

from src.errors import TooLarge
from src.exact.tours import PROPER_TOUR_CAP, exact_proper_tour, expand_proper_tour, path_weight
from src.oracle import CountingOracle

logger = logging.getLogger(__name__)


@dataclass
class PathExtraction:
    paths: List[List[int]]
    bad_paths: int = 0
    dropped_short: int = 0
    covered_edges: int = 0
    meets_bound: bool = True
    min_length: float = 0.0
    branch_limit: float = 0.0


def support_graph(paths: Sequence[Sequence[int]]) -> nx.Graph:
    """Z: 全部支撑路径的并"""
    z = nx.Graph()
    for p in paths:
        z.add_nodes_from(p)
        z.add_edges_from(zip(p, p[1:]))
    return z


def _as_path(component: nx.Graph) -> List[int]:
    """度不超过 2 的连通分量排成顶点序列; 圈在最小编号处断开"""
    if component.number_of_nodes() == 1:
        return list(component.nodes)
    ends = sorted(v for v, d in component.degree() if d == 1)
    if not ends:
        cut = min(component.nodes)
        rest = component.copy()
        rest.remove_node(cut)
        return _as_path(rest) if rest.number_of_nodes() else []
    return list(nx.dfs_preorder_nodes(component, ends[0]))


def extract_induced_paths(paths: Sequence[Sequence[int]], eps_hat: float, h: int, n: int) -> PathExtraction:
    """坏路径 (度不为 2 的顶点多于 20 log n / eps_hat) 被整体丢弃, 其余在分叉顶点处切开,
    只保留长度超过 eps_hat^2 h / (20 log n)^2 的子路径"""
    z = support_graph(paths)
    log_n = math.log2(max(n, 2))
    branch_limit = 20 * log_n / eps_hat
    min_length = eps_hat ** 2 * h / (20 * log_n) ** 2
    good_vertices = set()
    bad = 0
    for p in paths:
        branching = sum(1 for v in set(p) if z.degree(v) != 2)
        if branching > branch_limit:
            bad += 1
        else:
            good_vertices.update(p)
    inner = [v for v in good_vertices if z.degree(v) <= 2]
    kept: List[List[int]] = []
    dropped = 0
    for comp in nx.connected_components(z.subgraph(inner)):
        path = _as_path(z.subgraph(comp).copy())
        if len(path) - 1 > min_length and len(path) > 1:
            kept.append(path)
        else:
            dropped += 1
    kept.sort()
    covered = sum(len(p) - 1 for p in kept)
    meets = covered >= (1 - 40 * eps_hat) * n
    logger.debug(f"Kept {len(kept)} induced paths covering {covered} edges, {bad} bad support paths")
    return PathExtraction(kept, bad, dropped, covered, meets, min_length, branch_limit)


def _oracle_dist(oracle: CountingOracle):
    def dist(u: int, v: int) -> int:
        return 0 if u == v else oracle.query(u, v)
    return dist


@dataclass
class ProperTour:
    cost: int
    order: List[Tuple[int, bool]]
    exact: bool
    queries: int
    tour: List[int] = field(default_factory=list)


def proper_tour_cost(paths: Sequence[Sequence[int]], oracle: CountingOracle) -> ProperTour:
    """最小 Q-合规巡回代价: 查询路径上的相邻点对与全部端点对后精确求解"""
    if len(paths) > PROPER_TOUR_CAP:
        raise TooLarge(f"exact proper tour is capped at {PROPER_TOUR_CAP} paths, got {len(paths)}")
    before = oracle.distinct_count
    result = exact_proper_tour(paths, _oracle_dist(oracle))
    return ProperTour(int(result.value), list(result.witness), True, oracle.distinct_count - before,
                      expand_proper_tour(paths, result.witness))


def greedy_proper_tour(paths: Sequence[Sequence[int]], oracle: CountingOracle) -> ProperTour:
    """从第一条路径出发, 每次接上出口最近的未用端点; 代价是最优值的上界"""
    before = oracle.distinct_count
    dist = _oracle_dist(oracle)
    if not paths:
        return ProperTour(0, [], False, 0)
    body = sum(path_weight(dist, p) for p in paths)
    order = [(0, False)]
    left = set(range(1, len(paths)))
    joins = 0
    exit_ = paths[0][-1]
    while left:
        best = None
        for i in sorted(left):
            for flipped in (False, True):
                entry = paths[i][-1] if flipped else paths[i][0]
                d = dist(exit_, entry)
                if best is None or d < best[0]:
                    best = (d, i, flipped)
        d, i, flipped = best
        joins += d
        order.append((i, flipped))
        left.discard(i)
        exit_ = paths[i][0] if flipped else paths[i][-1]
    joins += dist(exit_, paths[0][0])
    return ProperTour(body + joins, order, False, oracle.distinct_count - before,
                      expand_proper_tour(paths, order))
