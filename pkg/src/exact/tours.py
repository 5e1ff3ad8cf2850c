"""精确最短巡回: Held-Karp 子集动态规划及其变体"""
from typing import Callable, List, Sequence, Tuple, Union
import logging

import numpy as np

from src.errors import BadParameters, TooLarge
from src.exact.result import ExactResult
from src.metric import Metric
from src.tree import RootedTree, tree_from_parents

logger = logging.getLogger(__name__)

TSP_CAP = 18
MWC_CAP = 18
PROPER_TOUR_CAP = 14

INF = np.int64(1) << np.int64(60)

DistanceFn = Callable[[int, int], int]


def _held_karp(inner: np.ndarray, start: np.ndarray, end: np.ndarray,
               item_of: np.ndarray, items: int) -> Tuple[int, List[int]]:
    """按 popcount 分层的子集 DP

    状态 s 属于物品 item_of[s]; 每个物品恰好选一个状态访问一次.
    从仓库出发代价 start[s], 状态间转移 inner[s, t], 返回仓库 end[s].
    返回最优代价与状态序列.
    """
    states = len(item_of)
    if items == 0:
        return 0, []
    full = (1 << items) - 1
    dp = np.full((1 << items, states), INF, dtype=np.int64)
    for s in range(states):
        dp[1 << item_of[s], s] = start[s]
    all_masks = np.arange(1 << items)
    popcount = np.zeros(1 << items, dtype=np.int64)
    for b in range(items):
        popcount += (all_masks >> b) & 1
    members = [np.nonzero(item_of == j)[0] for j in range(items)]
    for size in range(1, items):
        masks = np.nonzero(popcount == size)[0]
        block = dp[masks]
        best = (block[:, :, None] + inner[None, :, :]).min(axis=1)
        for j in range(items):
            sel = ((masks >> j) & 1) == 0
            if not sel.any():
                continue
            targets = masks[sel] | (1 << j)
            cols = members[j]
            region = np.ix_(targets, cols)
            dp[region] = np.minimum(dp[region], best[np.ix_(np.nonzero(sel)[0], cols)])
    closing = dp[full] + end
    last = int(np.argmin(closing))
    cost = int(closing[last])
    order = [last]
    mask = full
    while len(order) < items:
        t = order[-1]
        prev = mask ^ (1 << item_of[t])
        candidates = dp[prev] + inner[:, t]
        s = int(np.argmin(np.where(dp[prev] < INF, candidates, INF)))
        order.append(s)
        mask = prev
    order.reverse()
    return cost, order


def exact_tsp(m: Metric) -> ExactResult:
    """最短哈密顿圈, 巡回从顶点 0 出发"""
    if m.n > TSP_CAP:
        raise TooLarge(f"exact TSP is capped at n={TSP_CAP}, got n={m.n}")
    if m.n <= 1:
        return ExactResult(0, [0] if m.n else [])
    d = m.dist
    rest = np.arange(1, m.n)
    cost, order = _held_karp(d[np.ix_(rest, rest)], d[0, rest], d[rest, 0],
                             np.arange(m.n - 1), m.n - 1)
    return ExactResult(cost, [0] + [int(rest[s]) for s in order])


def tour_cost(dist: Union[Metric, DistanceFn], tour: Sequence[int]) -> int:
    if len(tour) < 2:
        return 0
    return sum(int(dist(tour[i], tour[(i + 1) % len(tour)])) for i in range(len(tour)))


def exact_mst(m: Metric) -> ExactResult:
    """完全图上的 Prim 算法, 并列时取编号最小的顶点; 见证为以 0 为根的树"""
    n = m.n
    if n == 0:
        raise BadParameters("MST of an empty metric")
    d = m.dist
    in_tree = np.zeros(n, dtype=bool)
    key = np.full(n, INF, dtype=np.int64)
    parent = np.zeros(n, dtype=np.int64)
    key[0] = 0
    for _ in range(n):
        v = int(np.argmin(np.where(in_tree, INF, key)))
        in_tree[v] = True
        better = (~in_tree) & (d[v] < key)
        key[better] = d[v][better]
        parent[better] = v
    tree = tree_from_parents(parent.tolist(), key.tolist(), root=0)
    return ExactResult(int(key[1:].sum()), tree)


def exact_mwc(weights: np.ndarray, root: int) -> ExactResult:
    """骨架度量上的最小特殊游走代价

    游走从 root 出发并返回, 其余顶点各访问一次, 途中可免费经过 root,
    因此两点间的转移代价取 min(w(j,k), w(j,root)+w(root,k)).
    """
    w = np.asarray(weights, dtype=np.int64)
    size = w.shape[0]
    if size > MWC_CAP:
        raise TooLarge(f"exact special-walk cost is capped at {MWC_CAP} vertices, got {size}")
    rest = np.array([v for v in range(size) if v != root], dtype=np.int64)
    if rest.size == 0:
        return ExactResult(0, [])
    via_root = w[rest, root][:, None] + w[root, rest][None, :]
    inner = np.minimum(w[np.ix_(rest, rest)], via_root)
    cost, order = _held_karp(inner, w[root, rest], w[rest, root], np.arange(rest.size), rest.size)
    return ExactResult(cost, [int(rest[s]) for s in order])


def path_weight(dist: Union[Metric, DistanceFn], path: Sequence[int]) -> int:
    return sum(int(dist(path[i], path[i + 1])) for i in range(len(path) - 1))


def exact_proper_tour(paths: Sequence[Sequence[int]], dist: Union[Metric, DistanceFn]) -> ExactResult:
    """Q-合规巡回的最小代价: 枚举路径顺序与方向

    见证为 (路径编号, 是否反向) 序列, 第一条路径固定为正向.
    """
    q = len(paths)
    if q > PROPER_TOUR_CAP:
        raise TooLarge(f"exact proper tour is capped at {PROPER_TOUR_CAP} paths, got {q}")
    if q == 0:
        return ExactResult(0, [])
    body = sum(path_weight(dist, p) for p in paths)
    if q == 1:
        p = paths[0]
        closing = int(dist(p[-1], p[0])) if len(p) > 1 else 0
        return ExactResult(body + closing, [(0, False)])
    # 状态 2i 为正向 (入口 p[0], 出口 p[-1]), 2i+1 为反向
    entry, exit_ = [], []
    for p in paths[1:]:
        entry += [p[0], p[-1]]
        exit_ += [p[-1], p[0]]
    states = len(entry)
    inner = np.zeros((states, states), dtype=np.int64)
    for s in range(states):
        for t in range(states):
            if s // 2 != t // 2:
                inner[s, t] = dist(exit_[s], entry[t])
    first = paths[0]
    start = np.array([dist(first[-1], entry[t]) for t in range(states)], dtype=np.int64)
    end = np.array([dist(exit_[s], first[0]) for s in range(states)], dtype=np.int64)
    cost, order = _held_karp(inner, start, end, np.arange(states) // 2, q - 1)
    witness = [(0, False)] + [(s // 2 + 1, bool(s % 2)) for s in order]
    return ExactResult(body + cost, witness)


def expand_proper_tour(paths: Sequence[Sequence[int]], witness: Sequence[Tuple[int, bool]]) -> List[int]:
    tour: List[int] = []
    for index, flipped in witness:
        p = list(paths[index])
        tour += p[::-1] if flipped else p
    return tour


def mst_of_subset(m: Metric, vertices: Sequence[int]) -> Tuple[int, RootedTree]:
    """顶点子集上诱导度量的 MST (顶点按原编号)"""
    sub = Metric(len(vertices), m.dist[np.ix_(vertices, vertices)])
    result = exact_mst(sub)
    mapped = {vertices[c]: vertices[p] for c, p, _ in result.witness.edges()}
    weights = {vertices[c]: w for c, _, w in result.witness.edges()}
    mapped[vertices[0]] = None
    return result.value, RootedTree(vertices[0], mapped, weights)
