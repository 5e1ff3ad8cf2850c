"""子程序 BFS(v, h, q, alpha): 检查 v 的 G1 邻域是否呈路径结构

第 i 层处理每个第 (i-1) 层顶点 v_j 时, 对每个未探索顶点 x, 先用已查询过 x 的
顶点集合 Q(x) 计算 X(v_j, x) = max_{v' in Q(x)} w(v', x) - w(v', v_j),
只有 X <= 1 时才查询 w(v_j, x).
"""
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple
import logging

import networkx as nx
import numpy as np

from src.errors import BadParameters
from src.oracle import CountingOracle

logger = logging.getLogger(__name__)

SUCCESS = "Success"
FAIL = "Fail"


@dataclass
class BfsResult:
    status: str
    parent: Dict[int, Optional[int]] = field(default_factory=dict)
    level: Dict[int, int] = field(default_factory=dict)
    path: List[int] = field(default_factory=list)
    support: List[Tuple[int, int]] = field(default_factory=list)
    interface: Tuple[int, ...] = ()
    queries: int = 0
    aborted: bool = False
    probes: Dict[int, Set[int]] = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.status == SUCCESS

    @property
    def vertices(self) -> Set[int]:
        return set(self.parent)

    def path_edges(self) -> List[Tuple[int, int]]:
        return [(min(a, b), max(a, b)) for a, b in zip(self.path, self.path[1:])]

    def subgraph(self) -> nx.Graph:
        """H_v: G1 在 V(T) 上的诱导子图"""
        g = nx.Graph()
        g.add_nodes_from(self.parent)
        g.add_edges_from(self.support)
        return g


def _root_path(parent: Dict[int, Optional[int]], v: int) -> List[int]:
    path = []
    while v is not None:
        path.append(v)
        v = parent[v]
    return path


def bfs(v: int, h: int, q: int, alpha: float, oracle: CountingOracle) -> BfsResult:
    n = oracle.n
    if h < 1:
        raise BadParameters(f"BFS depth must be at least 1, got {h}")
    if q < n - 1:
        raise BadParameters(f"BFS budget q={q} cannot cover the first stage of {n - 1} queries")
    before = oracle.distinct_count
    members: List[int] = [v]
    buffer = np.full((16, n), -1, dtype=np.int64)
    first = oracle.query_row(v)
    buffer[0] = first
    buffer[0, v] = 0
    parent: Dict[int, Optional[int]] = {v: None}
    level: Dict[int, int] = {v: 0}
    unexplored = np.ones(n, dtype=bool)
    unexplored[v] = False
    frontier = [int(x) for x in np.nonzero(first == 1)[0] if x != v]
    for x in frontier:
        parent[x], level[x] = v, 1
        unexplored[x] = False

    def spent() -> int:
        return oracle.distinct_count - before

    aborted = False
    for depth in range(2, h + 1):
        next_frontier: List[int] = []
        for vj in frontier:
            if not unexplored.any():
                break
            known = buffer[:len(members)]
            open_idx = np.nonzero(unexplored)[0]
            seen = known[:, open_idx] >= 0
            needed = np.nonzero(seen.any(axis=1))[0]
            rows = [members[i] for i in needed]
            if spent() + oracle.unseen(rows, [vj]) > q:
                aborted = True
                break
            to_vj = np.zeros(len(members), dtype=np.int64)
            if rows:
                to_vj[needed] = oracle.query_block(rows, [vj])[:, 0]
            diff = np.where(seen, known[:, open_idx] - to_vj[:, None], np.iinfo(np.int64).min)
            probe = open_idx[diff.max(axis=0) <= 1]
            probe = probe[probe != vj]
            if spent() + oracle.unseen([vj], probe) > q:
                aborted = True
                break
            row = np.full(n, -1, dtype=np.int64)
            if probe.size:
                row[probe] = oracle.query_row(vj, probe)
            if len(members) == buffer.shape[0]:
                buffer = np.vstack([buffer, np.full_like(buffer, -1)])
            buffer[len(members)] = row
            members.append(vj)
            for x in probe[row[probe] == 1].tolist():
                parent[x], level[x] = vj, depth
                unexplored[x] = False
                next_frontier.append(x)
        if aborted:
            break
        frontier = next_frontier
    probes = _probe_sets(members, buffer[:len(members)], parent)
    if aborted:
        logger.debug(f"BFS({v}) aborted after {spent()} queries")
        return BfsResult(FAIL, parent, level, queries=spent(), aborted=True, probes=probes)
    top = [x for x, d in level.items() if d == h]
    if len(parent) > alpha * h or len(top) != 2:
        return BfsResult(FAIL, parent, level, queries=spent(), probes=probes)
    left, right = _root_path(parent, top[0]), _root_path(parent, top[1])
    if set(left[:-1]) & set(right[:-1]):
        return BfsResult(FAIL, parent, level, queries=spent(), probes=probes)
    path = left + right[-2::-1]
    inside = sorted(parent)
    table = oracle.query_block(inside, inside)
    ia, ib = np.nonzero(np.triu(table == 1, k=1))
    support = [(inside[a], inside[b]) for a, b in zip(ia.tolist(), ib.tolist())]
    return BfsResult(SUCCESS, parent, level, path, support, (top[0], top[1]), spent(), False, probes)


def _probe_sets(members: List[int], known: np.ndarray, parent: Dict[int, Optional[int]]) -> Dict[int, Set[int]]:
    """Q(u): 对树外顶点 u, 已查询过 w(., u) 的树顶点"""
    out: Dict[int, Set[int]] = {}
    for col in np.nonzero((known >= 0).any(axis=0))[0].tolist():
        if col in parent:
            continue
        out[col] = {members[i] for i in np.nonzero(known[:, col] >= 0)[0].tolist()}
    return out
