"""覆盖优势工具: 覆盖集合, 欧拉多重图, 巡回构造与分段抽样估计"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple
import logging
import math

import networkx as nx
import numpy as np

from src.errors import BadParameters, NotEulerian
from src.exact.advantage import exact_cover_advantage
from src.exact.tours import tour_cost
from src.metric import Metric
from src.oracle import CountingOracle
from src.tree import RootedTree, SubTree

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]

EXHAUSTIVE_SUBSETS = 12
DEFAULT_SUBSETS = 32


def cov(tree: RootedTree, u: int, v: int) -> Set[int]:
    """边 (u, v) 覆盖的树边 (以子顶点表示)"""
    return set(tree.path_edges(u, v))


def cov_set(tree: RootedTree, edges: Iterable[Tuple[int, ...]], sub: Optional[SubTree] = None) -> Set[int]:
    covered: Set[int] = set()
    for e in edges:
        covered |= cov(tree, e[0], e[1])
    if sub is not None:
        covered &= sub.edge_ids
    return covered


@dataclass
class AdvantageReport:
    value: int
    witness: List[Edge]
    restriction: str
    exact: bool
    queries: int = 0


@dataclass
class EulerianMultigraph:
    """H_{T,E'}: 树边重数为 2 减去被 E' 覆盖次数的奇偶性, 另加 E' 中每条边一次"""
    vertices: List[int]
    tree_multiplicity: Dict[int, int]
    extra: List[Edge]
    tree: RootedTree = field(repr=False)

    def edges(self) -> List[Edge]:
        out = []
        for c, mult in sorted(self.tree_multiplicity.items()):
            out += [(c, self.tree.parent[c], self.tree.weight[c])] * mult
        return out + list(self.extra)

    def weight(self) -> int:
        return sum(w for _, _, w in self.edges())

    def degrees(self) -> Dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for u, v, _ in self.edges():
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_networkx(self) -> nx.MultiGraph:
        g = nx.MultiGraph()
        g.add_nodes_from(self.vertices)
        g.add_weighted_edges_from(self.edges())
        return g

    def is_eulerian(self) -> bool:
        if any(d % 2 for d in self.degrees().values()):
            return False
        return nx.is_connected(self.to_networkx())


def build_eulerian(tree: RootedTree, extra: Sequence[Edge]) -> EulerianMultigraph:
    tree_pairs = {(min(c, p), max(c, p)) for c, p, _ in tree.edges()}
    parity: Dict[int, int] = {c: 0 for c in tree.weight}
    for u, v, _ in extra:
        if (min(u, v), max(u, v)) in tree_pairs:
            raise BadParameters(f"({u}, {v}) is a tree edge")
        for c in tree.path_edges(u, v):
            parity[c] ^= 1
    multiplicity = {c: 2 - parity[c] for c in parity}
    return EulerianMultigraph(tree.vertices, multiplicity, list(extra), tree)


def eulerian_to_tour(graph: EulerianMultigraph) -> List[int]:
    """欧拉回路加首次访问捷径"""
    if not graph.is_eulerian():
        raise NotEulerian("multigraph has an odd-degree vertex or is disconnected")
    if len(graph.vertices) == 1:
        return list(graph.vertices)
    circuit = nx.eulerian_circuit(graph.to_networkx(), source=min(graph.vertices))
    tour, seen = [], set()
    for u, v in circuit:
        for x in (u, v):
            if x not in seen:
                seen.add(x)
                tour.append(x)
    return tour


@dataclass
class TourResult:
    tour: List[int]
    cost: int
    graph_weight: int
    subset: List[Edge]
    subsets_tried: int


def _dedupe(edges: Iterable[Edge]) -> List[Edge]:
    seen, out = set(), []
    for u, v, w in edges:
        key = (min(u, v), max(u, v))
        if key not in seen:
            seen.add(key)
            out.append((key[0], key[1], w))
    return sorted(out)


def tour_from_advantage(tree: RootedTree, chosen: Sequence[Edge], metric: Metric,
                        subsets: int = DEFAULT_SUBSETS, seed: int = 0) -> TourResult:
    """在 E* 的半密度子集上构造欧拉图并捷径, 返回最便宜的巡回

    |E*| <= 12 时枚举全部子集, 否则取空集, E* 本身与 subsets 个随机子集.
    """
    chosen = _dedupe(chosen)
    if len(chosen) <= EXHAUSTIVE_SUBSETS:
        picks = [[e for i, e in enumerate(chosen) if mask >> i & 1] for mask in range(1 << len(chosen))]
    else:
        rng = np.random.default_rng(seed)
        picks = [[], list(chosen)]
        for _ in range(subsets):
            keep = rng.random(len(chosen)) < 0.5
            picks.append([e for e, k in zip(chosen, keep) if k])
    best: Optional[TourResult] = None
    for pick in picks:
        graph = build_eulerian(tree, pick)
        tour = eulerian_to_tour(graph)
        cost = tour_cost(metric, tour)
        if best is None or cost < best.cost:
            best = TourResult(tour, cost, graph.weight(), pick, len(picks))
    return best


def mean_eulerian_weight(tree: RootedTree, chosen: Sequence[Edge]) -> Fraction:
    """E* 全部子集上 w(H_{T,E'}) 的平均值"""
    chosen = _dedupe(chosen)
    total = sum(build_eulerian(tree, [e for i, e in enumerate(chosen) if mask >> i & 1]).weight()
                for mask in range(1 << len(chosen)))
    return Fraction(total, 1 << len(chosen))


def tour_split(sub: SubTree, tour: Sequence[int]) -> Tuple[List[Tuple[int, int]], List[Tuple[int, int]],
                                                           List[Tuple[int, int]], List[Tuple[int, int]]]:
    """把巡回的边按 T' 奇度顶点交替分成 E0, E1, 并给出对应的奇度点配对 F0, F1"""
    odd = {v for v in sub.vertex_set if sub.degree(v) % 2}
    tour = list(tour)
    positions = [i for i, v in enumerate(tour) if v in odd]
    if not positions:
        return [], [], [], []
    start = positions[0]
    tour = tour[start:] + tour[:start]
    marks = [i for i, v in enumerate(tour) if v in odd]
    e_sets: List[List[Tuple[int, int]]] = [[], []]
    f_sets: List[List[Tuple[int, int]]] = [[], []]
    for idx, begin in enumerate(marks):
        end = marks[idx + 1] if idx + 1 < len(marks) else len(tour)
        segment = [(tour[j], tour[(j + 1) % len(tour)]) for j in range(begin, end)]
        e_sets[idx % 2] += segment
        f_sets[idx % 2].append((tour[begin], tour[end % len(tour)]))
    return e_sets[0], e_sets[1], f_sets[0], f_sets[1]


def covers_subtree(sub: SubTree, edges: Iterable[Tuple[int, int]]) -> bool:
    covered = 0
    for u, v in edges:
        covered |= sub.cover_mask(u, v)
    return covered == sub.full_mask()


def query_candidates(sub: SubTree, oracle: CountingOracle, restriction: str = "any",
                     among: Optional[Sequence[int]] = None) -> List[Edge]:
    """查询 (限制端点) x (among, 默认全部顶点) 的距离, 返回候选边"""
    anchors = sorted(sub.vertex_set) if restriction == "any" else sub.special_vertices()
    targets = list(range(oracle.n)) if among is None else sorted(among)
    if not anchors or not targets:
        return []
    table = oracle.query_block(anchors, targets)
    out, seen = [], set()
    for a_idx, u in enumerate(anchors):
        for t_idx, x in enumerate(targets):
            if u == x:
                continue
            key = (min(u, x), max(u, x))
            if key in seen:
                continue
            seen.add(key)
            out.append((key[0], key[1], int(table[a_idx, t_idx])))
    return out


def cover_advantage(tree: RootedTree, sub: SubTree, oracle: CountingOracle, restriction: str = "any",
                    check_mst: bool = False, among: Optional[Sequence[int]] = None) -> AdvantageReport:
    """查询 V(T') (或其特殊顶点) 到全部顶点 (或 among) 的距离后计算最优覆盖优势"""
    before = oracle.distinct_count
    candidates = query_candidates(sub, oracle, restriction, among)
    result = exact_cover_advantage(sub, candidates, restriction, check_mst=check_mst)
    return AdvantageReport(int(result.value), result.witness, restriction, result.exact,
                           oracle.distinct_count - before)


@dataclass
class SegmentReport:
    """分段优势估计: AtLeast 表示 sum adv >= eps * reference, AtMost 表示 <= 2 eps * reference"""
    decision: str
    estimate: float
    samples: int
    exhaustive: bool
    queries: int
    witnesses: List[Edge] = field(default_factory=list)

    @property
    def at_least(self) -> bool:
        return self.decision == "AtLeast"


def default_segment_samples(eps: float) -> int:
    return math.ceil(8 * math.log(40) / (eps * eps))


def estimate_segment_adv(segments: Sequence[SubTree], eps: float, oracle: CountingOracle,
                         restriction: str = "any", reference: Optional[int] = None,
                         samples: Optional[int] = None, seed: int = 0, check_mst: bool = False,
                         among: Optional[Callable[[SubTree], Sequence[int]]] = None) -> SegmentReport:
    """按权重比例抽样段, 用 adv(T')/w(T') 的均值估计 sum adv / reference, 阈值 1.5 eps"""
    if not 0 < eps < 1:
        raise BadParameters(f"eps must lie in (0, 1), got {eps}")
    before = oracle.distinct_count
    weighted = [s for s in segments if s.weight() > 0]
    total = sum(s.weight() for s in weighted)
    if reference is None:
        reference = weighted[0].tree.total_weight() if weighted else 0
    if not weighted or reference <= 0:
        return SegmentReport("AtMost", 0.0, 0, True, 0)
    count = samples if samples is not None else default_segment_samples(eps)
    cache: Dict[int, AdvantageReport] = {}

    def advantage(i: int) -> AdvantageReport:
        if i not in cache:
            segment = weighted[i]
            targets = among(segment) if among is not None else None
            cache[i] = cover_advantage(segment.tree, segment, oracle, restriction, check_mst, targets)
        return cache[i]

    if len(weighted) <= count:
        estimate = sum(advantage(i).value for i in range(len(weighted))) / reference
        exhaustive, drawn = True, len(weighted)
    else:
        rng = np.random.default_rng(seed)
        probs = np.array([s.weight() for s in weighted], dtype=float) / total
        picks = rng.choice(len(weighted), size=count, p=probs)
        ratio = np.mean([advantage(int(i)).value / weighted[int(i)].weight() for i in picks])
        estimate = float(ratio) * total / reference
        exhaustive, drawn = False, count
    decision = "AtLeast" if estimate >= 1.5 * eps else "AtMost"
    witnesses = [e for report in cache.values() for e in report.witness]
    logger.debug(f"Segment advantage estimate {estimate:.4f} over {drawn} draws -> {decision}")
    return SegmentReport(decision, estimate, drawn, exhaustive, oracle.distinct_count - before, witnesses)
