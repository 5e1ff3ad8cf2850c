"""子程序 Local 与轻子图重构代价

Local(v, s) 以公平轮转的方式探索 G1 中 v 的邻域, 每次探索查询整行距离,
直到已探索顶点数达到 2s. 随后在已知子图上找桥, 取含 v 且完全被探索,
大小不超过 s 的最大一侧作为极大 s-轻子图.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Set
import logging

import networkx as nx
import numpy as np

from src.errors import BadParameters, PromiseViolated
from src.exact.reconfiguration import exact_reconfiguration, EXACT_VERTEX_CAP
from src.exact.result import ExactResult
from src.oracle import CountingOracle

logger = logging.getLogger(__name__)

SUCCESS = "Success"
FAIL = "Fail"


@dataclass
class LocalResult:
    status: str
    vertices: FrozenSet[int] = frozenset()
    edges: List[tuple] = field(default_factory=list)
    witness: Optional[tuple] = None
    explored: int = 0
    queries: int = 0

    @property
    def success(self) -> bool:
        return self.status == SUCCESS

    def subgraph(self) -> nx.Graph:
        """G1[S]"""
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(self.edges)
        return g


class _Explorer:
    """探索树: 每个结点的孩子按加入顺序排列, 子树上记录已探索数与未探索数"""

    def __init__(self, root: int):
        self.root = root
        self.parent: Dict[int, Optional[int]] = {root: None}
        self.children: Dict[int, List[int]] = {root: []}
        self.explored: Set[int] = set()
        self.done_below: Dict[int, int] = {root: 0}
        self.open_below: Dict[int, int] = {root: 1}

    def _ancestors(self, v: int):
        while v is not None:
            yield v
            v = self.parent[v]

    def add_child(self, v: int, child: int):
        self.parent[child] = v
        self.children[v].append(child)
        self.children[child] = []
        self.done_below[child] = 0
        self.open_below[child] = 1
        for a in self._ancestors(v):
            self.open_below[a] += 1

    def mark_explored(self, v: int):
        self.explored.add(v)
        for a in self._ancestors(v):
            self.done_below[a] += 1
            self.open_below[a] -= 1

    def next_vertex(self) -> Optional[int]:
        """逐层下降, 每层选已探索数最少且仍有未探索顶点的孩子子树"""
        if self.open_below[self.root] == 0:
            return None
        v = self.root
        while v in self.explored:
            open_children = [c for c in self.children[v] if self.open_below[c] > 0]
            v = min(open_children, key=lambda c: self.done_below[c])
        return v


def local(v: int, s: int, oracle: CountingOracle) -> LocalResult:
    """Local(v, s): 成功时返回包含 v 的极大 s-轻子图"""
    n = oracle.n
    if not 1 <= s or 2 * s >= n:
        raise BadParameters(f"Local needs 1 <= s < n/2, got s={s}, n={n}")
    before = oracle.distinct_count
    tree = _Explorer(v)
    known = nx.Graph()
    known.add_node(v)
    everything = np.arange(n)
    while len(tree.explored) < 2 * s:
        x = tree.next_vertex()
        if x is None:
            raise PromiseViolated(f"weight-1 component of {v} has only {len(tree.parent)} vertices")
        row = oracle.query_row(x, everything)
        for y in np.nonzero(row == 1)[0].tolist():
            known.add_edge(x, y)
            if y not in tree.parent:
                tree.add_child(x, y)
        tree.mark_explored(x)
    best = _largest_light_side(known, v, s, tree.explored)
    spent = oracle.distinct_count - before
    if best is None:
        return LocalResult(FAIL, explored=len(tree.explored), queries=spent)
    side, bridge = best
    edges = sorted((min(a, b), max(a, b)) for a, b in known.subgraph(side).edges())
    logger.debug(f"Local({v}, {s}) found a light subgraph of {len(side)} vertices")
    return LocalResult(SUCCESS, frozenset(side), edges, bridge, len(tree.explored), spent)


def _largest_light_side(known: nx.Graph, v: int, s: int, explored: Set[int]):
    """桥树上含 v 的一侧: 大小不超过 s 且全部已探索时取最大者"""
    bridges = list(nx.bridges(known))
    if not bridges:
        return None
    cut = known.copy()
    cut.remove_edges_from(bridges)
    comp_of: Dict[int, int] = {}
    members: List[Set[int]] = []
    for i, comp in enumerate(nx.connected_components(cut)):
        members.append(comp)
        for x in comp:
            comp_of[x] = i
    bridge_tree = nx.Graph()
    bridge_tree.add_nodes_from(range(len(members)))
    for a, b in bridges:
        bridge_tree.add_edge(comp_of[a], comp_of[b], bridge=(a, b))
    start = comp_of[v]
    rooted = nx.bfs_tree(bridge_tree, start)
    parent = {i: p for p, i in rooted.edges()}
    below_size = {i: len(c) for i, c in enumerate(members)}
    below_hidden = {i: len(c - explored) for i, c in enumerate(members)}
    order = list(nx.dfs_postorder_nodes(rooted, start))
    for i in order:
        if i in parent:
            below_size[parent[i]] += below_size[i]
            below_hidden[parent[i]] += below_hidden[i]
    total_size, total_hidden = below_size[start], below_hidden[start]
    best = None
    for i in order:
        if i not in parent:
            continue
        near_size = total_size - below_size[i]
        if near_size > s or total_hidden - below_hidden[i] > 0:
            continue
        if best is None or near_size > best[0]:
            a, b = bridge_tree.edges[parent[i], i]["bridge"]
            best = (near_size, i, (a, b) if comp_of[a] != i else (b, a))
    if best is None:
        return None
    _, cut_at, bridge = best
    far = nx.descendants(rooted, cut_at) | {cut_at}
    side = set().union(*(members[i] for i in rooted.nodes if i not in far))
    return side, bridge


def out_reach(u: int, S, oracle: CountingOracle) -> int:
    """ord(u) = min{w(u, u') | u' 不在 S 中}"""
    outside = np.array(sorted(set(range(oracle.n)) - set(S)), dtype=np.int64)
    if outside.size == 0:
        raise BadParameters("S covers every vertex")
    return int(oracle.query_row(u, outside).min())


def reconfig_cost(S, oracle: CountingOracle, cap: int = EXACT_VERTEX_CAP) -> ExactResult:
    """查询 V(S) x V 后计算最优重构代价 rc(S)"""
    members = sorted(S)
    table = oracle.query_block(members, np.arange(oracle.n))
    inside = np.zeros(oracle.n, dtype=bool)
    inside[members] = True
    if inside.all():
        raise BadParameters("S covers every vertex")
    ord_values = {u: int(table[i, ~inside].min()) for i, u in enumerate(members)}
    index = {u: i for i, u in enumerate(members)}

    def dist(a: int, b: int) -> int:
        return int(table[index[a], b])

    return exact_reconfiguration(members, dist, ord_values, cap)
