"""流式 MST: 半流精确基线与单遍 Õ(n/α) 空间估计"""
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple
import logging
import math

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import minimum_spanning_tree

from src.errors import BadParameters, DisconnectedGraph
from src.streaming.session import StorageRegistry, StreamSession
from src.utils.seeding import spawn_rngs

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]

EDGE_WORDS = 3


def minimum_forest(edges: Iterable[Edge]) -> List[Edge]:
    """边集上的最小生成森林 (Kruskal, scipy 实现)"""
    lightest: Dict[Tuple[int, int], int] = {}
    for u, v, w in edges:
        key = (min(u, v), max(u, v))
        if key not in lightest or w < lightest[key]:
            lightest[key] = w
    if not lightest:
        return []
    pairs = np.array(list(lightest), dtype=np.int64)
    labels, index = np.unique(pairs, return_inverse=True)
    index = index.reshape(-1, 2)
    weights = np.array(list(lightest.values()), dtype=np.int64)
    size = len(labels)
    graph = coo_matrix((weights, (index[:, 0], index[:, 1])), shape=(size, size)).tocsr()
    forest = minimum_spanning_tree(graph).tocoo()
    out = []
    for a, b in zip(forest.row, forest.col):
        u, v = int(labels[a]), int(labels[b])
        key = (min(u, v), max(u, v))
        out.append((key[0], key[1], lightest[key]))
    return sorted(out)


class SpanningForestSketch:
    """维护最小生成森林: 新边先缓冲, 缓冲满 (与森林同阶) 时合并压缩

    压缩等价于逐边插入并在成环时删去环上最重边.
    """

    def __init__(self, registry: StorageRegistry, name: str, vertex_count: int):
        self.capacity = max(vertex_count - 1, 1)
        self.forest = registry.list(f"{name}.forest", EDGE_WORDS)
        self.buffer = registry.list(f"{name}.buffer", EDGE_WORDS)
        self.compactions = 0

    def insert(self, u: int, v: int, w: int):
        self.buffer.append((u, v, w))
        if len(self.buffer) >= self.capacity:
            self.compact()

    def compact(self):
        if self.buffer:
            self.forest.replace(minimum_forest(list(self.forest) + list(self.buffer)))
            self.buffer.clear()
            self.compactions += 1

    def edges(self) -> List[Edge]:
        self.compact()
        return list(self.forest)

    def weight(self) -> int:
        return sum(w for _, _, w in self.edges())


def run_exact_mst_graphstream(session: StreamSession) -> int:
    """单遍图流上的精确 MST 权重"""
    sketch = SpanningForestSketch(session.storage, "mst", session.n)
    for u, v, w in session.stream():
        sketch.insert(u, v, w)
    edges = sketch.edges()
    if len(edges) != session.n - 1:
        raise DisconnectedGraph(f"stream spans {len(edges) + 1} vertices in one component, need {session.n}")
    logger.info(f"Exact streamed MST over n={session.n}: {sum(w for _, _, w in edges)}")
    return sum(w for _, _, w in edges)


@dataclass
class MstEstimate:
    value: float
    mst_prime: int
    diam: int
    w_double_prime: int
    sample_prime: List[int] = field(repr=False)
    sample_double: List[int] = field(repr=False)
    peak_words: int
    c_boost: float
    alpha: float
    n: int
    passes: int = 1

    def recompute(self) -> float:
        return self.mst_prime + self.c_boost * self.alpha * math.log2(max(self.n, 2)) * (
            self.diam + self.w_double_prime)


def run_onepass_mst_estimate(session: StreamSession, alpha: float, seed: int = 0,
                             c_boost: float = 100.0) -> MstEstimate:
    """单遍度量流 MST 估计: MST' + c_boost * α log n * (diam + W'')"""
    if not session.is_metric:
        raise BadParameters("the one-pass estimator reads a metric stream")
    if alpha <= 1:
        raise BadParameters(f"alpha must exceed 1, got {alpha}")
    n = session.n
    size = min(n, math.ceil(n / alpha))
    pick_prime, pick_double = spawn_rngs(seed, 2)
    v_prime = sorted(int(x) for x in pick_prime.choice(n, size=size, replace=False))
    v_double = sorted(int(x) for x in pick_double.choice(n, size=size, replace=False))

    registry = session.storage
    in_prime = registry.dict("sample_prime", 1)
    for v in v_prime:
        in_prime[v] = True
    reach = registry.dict("sample_double", 2)
    for v in v_double:
        reach[v] = 0 if v in in_prime else None
    registry.update("diam", 1)
    sketch = SpanningForestSketch(registry, "mst_prime", size)

    diam = 0
    for u, v, w in session.stream():
        if w > diam:
            diam = w
        u_in, v_in = u in in_prime, v in in_prime
        if u_in and v_in:
            sketch.insert(u, v, w)
        if v_in and u in reach and (reach[u] is None or w < reach[u]):
            reach[u] = w
        if u_in and v in reach and (reach[v] is None or w < reach[v]):
            reach[v] = w
    mst_prime = sketch.weight()
    w_double = sum(d for d in reach.values() if d is not None)
    estimate = MstEstimate(0.0, mst_prime, diam, w_double, v_prime, v_double, registry.peak,
                           c_boost, alpha, n, session.pass_count)
    estimate.value = estimate.recompute()
    logger.info(f"One-pass MST estimate {estimate.value:.1f} (MST'={mst_prime}, diam={diam}, W''={w_double})")
    return estimate
