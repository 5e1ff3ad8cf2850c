"""实例生成器: 随机度量与下界构造族

顶点编号均从 0 开始. 下界族的参数约束在入口处检查, 违反时抛出 BadParameters.
"""
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np
from scipy.spatial.distance import pdist, squareform

from src.errors import BadParameters
from src.metric import Metric, WeightedGraph, metric_from_graph

logger = logging.getLogger(__name__)

STYLES = ("graphic", "weighted-closure", "euclidean-rounded")


def _random_tree_edges(rng: np.random.Generator, n: int) -> List[Tuple[int, int]]:
    """随机递归树: 顶点 v 连向 [0, v) 中的均匀随机父节点"""
    return [(int(rng.integers(0, v)), v) for v in range(1, n)]


def _extra_pairs(rng: np.random.Generator, n: int, count: int,
                 taken: Iterable[Tuple[int, int]]) -> List[Tuple[int, int]]:
    used = {(min(u, v), max(u, v)) for u, v in taken}
    limit = n * (n - 1) // 2
    out: List[Tuple[int, int]] = []
    attempts = 0
    while len(out) < count and len(used) < limit and attempts < 50 * (count + 1):
        attempts += 1
        u, v = (int(x) for x in rng.choice(n, size=2, replace=False))
        key = (min(u, v), max(u, v))
        if key not in used:
            used.add(key)
            out.append(key)
    return out


def gen_random_metric(n: int, seed: int, style: str = "graphic") -> Metric:
    """按风格生成随机度量, 结果只依赖于 (n, seed, style)"""
    if n < 2:
        raise BadParameters(f"random metrics need n >= 2, got {n}")
    if style not in STYLES:
        raise BadParameters(f"unknown metric style {style!r}, expected one of {STYLES}")
    rng = np.random.default_rng(seed)
    if style == "graphic":
        tree = _random_tree_edges(rng, n)
        chords = _extra_pairs(rng, n, math.ceil(n / 4), tree)
        edges = [(u, v, 1) for u, v in tree + chords]
        return metric_from_graph(WeightedGraph(n, edges, unweighted=True))
    if style == "weighted-closure":
        tree = _random_tree_edges(rng, n)
        extra = _extra_pairs(rng, n, n, tree)
        pairs = tree + extra
        weights = rng.integers(1, 21, size=len(pairs))
        edges = [(u, v, int(w)) for (u, v), w in zip(pairs, weights)]
        return metric_from_graph(WeightedGraph(n, edges))
    points = rng.integers(0, 101, size=(n, 2)).astype(float)
    table = np.ceil(squareform(pdist(points))).astype(np.int64)
    table = np.maximum(table, 1)
    np.fill_diagonal(table, 0)
    return Metric(n, table)


def gen_random_graph(n: int, seed: int, max_weight: int = 20, extra: Optional[int] = None) -> WeightedGraph:
    """随机连通加权图 (生成树加额外边), 作为图流输入"""
    if n < 2:
        raise BadParameters(f"random graphs need n >= 2, got {n}")
    rng = np.random.default_rng(seed)
    tree = _random_tree_edges(rng, n)
    pairs = tree + _extra_pairs(rng, n, n if extra is None else extra, tree)
    weights = rng.integers(1, max_weight + 1, size=len(pairs))
    return WeightedGraph(n, [(u, v, int(w)) for (u, v), w in zip(pairs, weights)])


def gen_onepass_family(k: int, r: int, p: int, L: int, which: str) -> Metric:
    """单遍 MST 下界族 w_Y / w_N, n = kr + 2krp

    顶点顺序: U (kr 个), 然后 S, 然后 T (各 krp 个).
    """
    if min(k, r, p) < 1:
        raise BadParameters(f"k, r, p must be positive, got k={k}, r={r}, p={p}")
    if which not in ("Y", "N"):
        raise BadParameters(f"which must be 'Y' or 'N', got {which!r}")
    n = k * r + 2 * k * r * p
    if L <= n:
        raise BadParameters(f"L={L} must exceed n={n}")
    dist = np.full((n, n), L, dtype=np.int64)
    u_count = k * r
    grid_i, grid_j = np.meshgrid(np.arange(1, k + 1), np.arange(1, r + 1), indexing="ij")
    if which == "Y":
        same_i = grid_i.ravel()[:, None] == grid_i.ravel()[None, :]
        offsets = np.abs(grid_j.ravel()[:, None] - grid_j.ravel()[None, :])
        dist[:u_count, :u_count] = np.where(same_i, offsets, L)

    i, j, ell = np.meshgrid(np.arange(1, k + 1), np.arange(1, r + 1), np.arange(1, p + 1), indexing="ij")
    s_index = (i * r * p + ell * r + j).ravel()
    t_index = (i * r * p + j * p + ell).ravel()
    group = k * r * p
    for start, index in ((u_count, s_index), (u_count + group, t_index)):
        block = np.minimum(L, np.abs(index[:, None] - index[None, :]))
        dist[start:start + group, start:start + group] = block
    np.fill_diagonal(dist, 0)
    logger.debug(f"Built one-pass family {which} with k={k}, r={r}, p={p}, L={L}, n={n}")
    return Metric(n, dist)


def onepass_mst(k: int, r: int, p: int, L: int, which: str) -> int:
    n = k * r + 2 * k * r * p
    joins = k + 1 if which == "Y" else k * r + 1
    return (n - 1) + (L - 1) * joins


def gen_multipass_family(N: int, m: int, M: int, which: str) -> Metric:
    """多遍 MST 下界族: m 组, 每组 N 个顶点, 最后一组为特殊组"""
    if N < 1 or m < 1:
        raise BadParameters(f"N and m must be positive, got N={N}, m={m}")
    if which not in ("Y", "N"):
        raise BadParameters(f"which must be 'Y' or 'N', got {which!r}")
    n = N * m
    if M < 2 * n:
        raise BadParameters(f"M={M} must be at least 2n={2 * n}")
    group = np.repeat(np.arange(m), N)
    dist = np.where(group[:, None] == group[None, :], 1, M).astype(np.int64)
    if which == "N":
        special = slice(n - N, n)
        dist[special, special] = M
    np.fill_diagonal(dist, 0)
    return Metric(n, dist)


def multipass_mst(N: int, m: int, M: int, which: str) -> int:
    if which == "Y":
        return m * (N - 1) + (m - 1) * M
    return (m - 1) * (N - 1) + (m + N - 2) * M


@dataclass
class TspGadget:
    """TSP 下界构造图及其顶点编号"""
    graph: WeightedGraph
    p: int
    r: int
    L: int
    i_star: int
    j_star: int

    @property
    def n(self) -> int:
        return self.graph.n

    def u(self, i: int, t: int) -> int:
        return 2 + i * self.r + t

    def u_prime(self, j: int, t: int) -> int:
        return 2 + self.p * self.r + j * self.r + t

    def mst_weight(self) -> int:
        return (self.n + 2 * self.r - 2) + (2 * self.r + 1) * self.L

    def witness_tour(self) -> List[int]:
        """X[i*][j*] = 1 时的之字形巡回, 代价不超过 2n-2+(2r+2)L"""
        r = self.r
        tour = [0]
        tour += [self.u(i, t) for i in range(self.p) if i != self.i_star for t in range(r)]
        for t in reversed(range(r)):
            tour.append(self.u(self.i_star, t))
            tour.append(self.u_prime(self.j_star, t))
        tour += [self.u_prime(j, t) for j in range(self.p) if j != self.j_star for t in range(r)]
        tour.append(1)
        return tour

    def witness_bound(self) -> int:
        return 2 * self.n - 2 + (2 * self.r + 2) * self.L


def gen_tsp_gadget(X: Sequence[Sequence[int]], i_star: int, j_star: int, r: int, L: int) -> TspGadget:
    """图 G_{X,i*,j*}: 两个星 (中心 u0, u0') 由权 L 的边相连, X 的 1 元素引入交叉边"""
    X = np.asarray(X, dtype=np.int64)
    if X.ndim != 2 or X.shape[0] != X.shape[1] or X.shape[0] < 1:
        raise BadParameters(f"X must be a non-empty square matrix, got shape {X.shape}")
    if not np.isin(X, (0, 1)).all():
        raise BadParameters("X must be binary")
    p = X.shape[0]
    if r < 1:
        raise BadParameters(f"r must be positive, got {r}")
    if not (0 <= i_star < p and 0 <= j_star < p):
        raise BadParameters(f"i*={i_star}, j*={j_star} out of range for p={p}")
    n = 2 + 2 * p * r
    if L < n * n:
        raise BadParameters(f"L={L} must be at least n^2={n * n}")
    heavy = L + 2

    def u(i, t):
        return 2 + i * r + t

    def u_prime(j, t):
        return 2 + p * r + j * r + t

    edges = [(0, 1, L)]
    for i in range(p):
        for t in range(r):
            edges.append((0, u(i, t), heavy if i == i_star else 1))
    for j in range(p):
        for t in range(r):
            edges.append((1, u_prime(j, t), heavy if j == j_star else 1))
    for i, j in zip(*np.nonzero(X)):
        for t in range(r):
            edges.append((u(i, t), u_prime(j, t), heavy))
            if t + 1 < r:
                edges.append((u(i, t), u_prime(j, t + 1), heavy))
    return TspGadget(WeightedGraph(n, edges), p, r, L, i_star, j_star)


def gen_coi_graph(N: int, m: int, which: str) -> WeightedGraph:
    """Y: m 个大小为 N 的团; N: m-1 个团加 N 个孤立点"""
    if N < 1 or m < 1:
        raise BadParameters(f"N and m must be positive, got N={N}, m={m}")
    if which not in ("Y", "N"):
        raise BadParameters(f"which must be 'Y' or 'N', got {which!r}")
    cliques = m if which == "Y" else m - 1
    edges = []
    for c in range(cliques):
        base = c * N
        for a in range(N):
            for b in range(a + 1, N):
                edges.append((base + a, base + b, 1))
    return WeightedGraph(N * m, edges, unweighted=True)


def gen_path_metric(n: int) -> Metric:
    idx = np.arange(n)
    return Metric(n, np.abs(idx[:, None] - idx[None, :]))


def gen_star_metric(n: int, cross: int = 2) -> Metric:
    """中心为 0 的星, 叶间距离为 cross (1 或 2)"""
    if cross not in (1, 2):
        raise BadParameters(f"star cross distance must be 1 or 2, got {cross}")
    dist = np.full((n, n), cross, dtype=np.int64)
    dist[0, :] = dist[:, 0] = 1
    np.fill_diagonal(dist, 0)
    return Metric(n, dist)


def gen_cycle_metric(n: int, chords: int = 0, seed: int = 0) -> Metric:
    """单位权哈密顿圈加随机弦的图度量"""
    if n < 3:
        raise BadParameters(f"cycles need n >= 3, got {n}")
    rng = np.random.default_rng(seed)
    ring = [(v, (v + 1) % n) for v in range(n)]
    extra = _extra_pairs(rng, n, chords, ring)
    return metric_from_graph(WeightedGraph(n, [(u, v, 1) for u, v in ring + extra], unweighted=True))


def gen_one_two_metric(n: int, ones: Iterable[Tuple[int, int]]) -> Metric:
    """给定距离为 1 的点对, 其余点对距离为 2"""
    dist = np.full((n, n), 2, dtype=np.int64)
    for u, v in ones:
        dist[u, v] = dist[v, u] = 1
    np.fill_diagonal(dist, 0)
    return Metric(n, dist)


@dataclass
class InstanceSpec:
    """实例描述: 族名加参数"""
    kind: str
    n: int = 0
    seed: int = 0
    style: str = "graphic"
    which: str = "Y"
    k: int = 0
    r: int = 0
    p: int = 0
    L: int = 0
    N: int = 0
    m: int = 0
    M: int = 0
    X: Optional[List[List[int]]] = None
    i_star: int = 0
    j_star: int = 0
    chords: int = 0

    def build(self) -> Union[Metric, WeightedGraph]:
        if self.kind == "random":
            return gen_random_metric(self.n, self.seed, self.style)
        if self.kind == "graph":
            return gen_random_graph(self.n, self.seed)
        if self.kind == "onepass":
            return gen_onepass_family(self.k, self.r, self.p, self.L, self.which)
        if self.kind == "multipass":
            return gen_multipass_family(self.N, self.m, self.M, self.which)
        if self.kind == "gadget":
            X = self.X if self.X is not None else np.eye(max(self.p, 1), dtype=int).tolist()
            return gen_tsp_gadget(X, self.i_star, self.j_star, self.r, self.L).graph
        if self.kind == "coi":
            return gen_coi_graph(self.N, self.m, self.which)
        if self.kind == "path":
            return gen_path_metric(self.n)
        if self.kind == "star":
            return gen_star_metric(self.n)
        if self.kind == "cycle":
            return gen_cycle_metric(self.n, self.chords, self.seed)
        raise BadParameters(f"unknown instance kind {self.kind!r}")

    def label(self) -> str:
        fields = {k: v for k, v in self.params().items() if v not in (0, None, "")}
        if self.kind != "random":
            fields.pop("style", None)
        if self.kind not in ("onepass", "multipass", "coi"):
            fields.pop("which", None)
        return self.kind + "".join(f"-{k}{v}" for k, v in sorted(fields.items()) if k != "X")

    def params(self) -> Dict[str, Any]:
        out = dict(self.__dict__)
        out.pop("kind")
        return out
