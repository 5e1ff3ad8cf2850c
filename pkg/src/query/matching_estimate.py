"""随机序贪心极大匹配的局部模拟与匹配大小估计

边的秩在首次出现时随机生成. 一条边属于贪心匹配当且仅当所有与之相邻且秩更小的
边都不在匹配中; 顶点被匹配当且仅当它的某条边在匹配中. G1 上的点对查询
通过距离是否等于 1 实现, 其他图由调用方给出邻居函数.
"""
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple
import logging
import math

import numpy as np

from src.errors import BadParameters, BudgetExceeded
from src.oracle import CountingOracle

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
Neighbours = Callable[[int], Sequence[int]]


@dataclass
class MatchingEstimate:
    value: int
    samples: int
    matched_samples: int
    exhaustive: bool
    queries: int
    budget_exceeded: bool = False


def default_matching_samples(eps: float) -> int:
    return math.ceil(2 * math.log(40) / (eps * eps))


def default_matching_budget(n: int, eps: float) -> int:
    return math.ceil(n ** 1.5 * math.log2(max(n, 2)) / (eps * eps))


class GreedyMatchingOracle:
    """图 G[S] 上随机序贪心匹配的局部查询, 默认 G 为 G1

    neighbours(u) 给出 u 在 S 内的邻居; 省略时通过整行查询距离是否为 1 得到.
    """

    def __init__(self, oracle: CountingOracle, vertices: Sequence[int], rng: np.random.Generator,
                 budget: Optional[int] = None, neighbours: Optional[Neighbours] = None):
        self.oracle = oracle
        self.vertices = np.array(sorted(set(vertices)), dtype=np.int64)
        self.rng = rng
        self.budget = budget
        self.neighbours = neighbours or self._g1_neighbours
        self._step = self.vertices.size if neighbours is None else 0
        self._start = oracle.distinct_count
        self._rank: Dict[Pair, float] = {}
        self._incident: Dict[int, List[Pair]] = {}
        self._matched: Dict[Pair, bool] = {}

    @property
    def spent(self) -> int:
        return self.oracle.distinct_count - self._start

    def _g1_neighbours(self, u: int) -> List[int]:
        row = self.oracle.query_row(u, self.vertices)
        return [x for x in self.vertices[row == 1].tolist() if x != u]

    def rank(self, e: Pair) -> float:
        if e not in self._rank:
            self._rank[e] = float(self.rng.random())
        return self._rank[e]

    def incident(self, u: int) -> List[Pair]:
        """u 的关联边, 按秩升序"""
        if u not in self._incident:
            if self.budget is not None and self.spent + self._step > self.budget:
                raise BudgetExceeded(f"matching estimate would exceed {self.budget} queries")
            edges = [(min(u, x), max(u, x)) for x in self.neighbours(u)]
            self._incident[u] = sorted(edges, key=self.rank)
        return self._incident[u]

    def _lower(self, e: Pair) -> List[Pair]:
        r = self.rank(e)
        around = {f for x in e for f in self.incident(x) if f != e and self.rank(f) < r}
        return sorted(around, key=self.rank)

    def edge_in_matching(self, e: Pair) -> bool:
        if e in self._matched:
            return self._matched[e]
        stack = [(e, self._lower(e), 0)]
        while stack:
            edge, lower, i = stack[-1]
            pushed = False
            while i < len(lower):
                f = lower[i]
                if f not in self._matched:
                    stack[-1] = (edge, lower, i)
                    stack.append((f, self._lower(f), 0))
                    pushed = True
                    break
                if self._matched[f]:
                    break
                i += 1
            if pushed:
                continue
            self._matched[edge] = i == len(lower)
            stack.pop()
        return self._matched[e]

    def vertex_matched(self, u: int) -> bool:
        return any(self.edge_in_matching(e) for e in self.incident(u))


def _greedy(edges: List[Pair], rng: np.random.Generator) -> List[Pair]:
    taken = set()
    pairs = []
    for k in rng.permutation(len(edges)).tolist():
        a, b = edges[k]
        if a not in taken and b not in taken:
            taken.update((a, b))
            pairs.append((a, b))
    return sorted(pairs)


def greedy_matching(vertices: Sequence[int], oracle: CountingOracle, rng: np.random.Generator,
                    neighbours: Optional[Neighbours] = None) -> List[Pair]:
    """取得全部边后按随机秩整体执行贪心; G1 情形一次查询 S x S"""
    members = sorted(set(vertices))
    if neighbours is not None:
        edges = sorted({(min(u, x), max(u, x)) for u in members for x in neighbours(u) if x != u})
        return _greedy(edges, rng)
    index = np.array(members, dtype=np.int64)
    table = oracle.query_block(index, index)
    ia, ib = np.nonzero(np.triu(table == 1, k=1))
    return _greedy([(members[a], members[b]) for a, b in zip(ia.tolist(), ib.tolist())], rng)


def matching_size_estimate(vertices: Sequence[int], eps: float, oracle: CountingOracle, seed: int = 0,
                           samples: Optional[int] = None, budget: Optional[int] = None,
                           neighbours: Optional[Neighbours] = None,
                           scale: Optional[int] = None) -> MatchingEstimate:
    """估计 G[S] 中某个极大匹配的大小, 使得 M <= MM <= 2M + eps*scale

    scale 默认取 oracle.n. 抽样估计减去 eps*scale/4 的偏移; 样本数不少于 |S| 时
    直接计算整个贪心匹配.
    """
    if eps <= 0:
        raise BadParameters(f"eps must be positive, got {eps}")
    members = sorted(set(vertices))
    n = oracle.n
    scale = n if scale is None else scale
    rng = np.random.default_rng(seed)
    before = oracle.distinct_count
    if len(members) < 2:
        return MatchingEstimate(0, 0, 0, True, 0)
    count = samples if samples is not None else default_matching_samples(eps)
    if count >= len(members):
        pairs = greedy_matching(members, oracle, rng, neighbours)
        return MatchingEstimate(len(pairs), len(members), 2 * len(pairs), True, oracle.distinct_count - before)
    limit = budget if budget is not None else default_matching_budget(n, eps)
    local = GreedyMatchingOracle(oracle, members, rng, limit, neighbours)
    picks = rng.choice(np.array(members), size=count, replace=True)
    matched, drawn, exceeded = 0, 0, False
    for u in picks.tolist():
        try:
            matched += local.vertex_matched(u)
        except BudgetExceeded:
            exceeded = True
            logger.warning(f"Matching estimate stopped after {drawn} of {count} samples: budget {limit} reached")
            break
        drawn += 1
    if drawn == 0:
        return MatchingEstimate(0, 0, 0, False, oracle.distinct_count - before, exceeded)
    raw = len(members) * matched / (2 * drawn)
    value = max(0, math.floor(raw - eps * scale / 4))
    return MatchingEstimate(value, drawn, matched, False, oracle.distinct_count - before, exceeded)
