"""轻子树剥离, 分段, k-扩展与 c-树森林

顶点 v (非根) 是极大 ell-轻的, 当且仅当 |T_v| <= ell 且其父顶点的子树超过 ell 个顶点.
T^+_v 为 T_v 加上边 (v, parent(v)); 删去全部 T^+_v (保留父顶点) 得到上部树 T'.
"""
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple
import logging

from src.errors import BadParameters
from src.tree import RootedTree, SubTree

logger = logging.getLogger(__name__)

GIANT_FACTOR = 10


@dataclass
class LightPeel:
    tree: RootedTree
    ell: int
    light: List[int]
    top: SubTree
    hanging: Dict[int, List[int]]
    n_light: Dict[int, int]

    def light_subtree(self, u: int) -> SubTree:
        """T^+_u"""
        verts = self.tree.subtree_vertices(u)
        return SubTree(self.tree, verts, verts + [self.tree.parent[u]])

    def top_leaf_count(self) -> int:
        """T' 中除根以外的叶子数"""
        return sum(1 for v in self.top.vertices if v != self.tree.root and self.top.degree(v) == 1)


def light_peel(tree: RootedTree, ell: int) -> LightPeel:
    if ell < 1:
        raise BadParameters(f"ell must be positive, got {ell}")
    size = tree.size
    light = sorted(v for v in tree.vertices
                   if v != tree.root and size[v] <= ell and size[tree.parent[v]] > ell)
    hanging: Dict[int, List[int]] = {}
    for u in light:
        hanging.setdefault(tree.parent[u], []).append(u)
    below = set()
    for u in light:
        below.update(tree.subtree_vertices(u))
    top_vertices = [v for v in tree.vertices if v not in below]
    top = SubTree.from_vertices(tree, top_vertices)
    n_light = {v: sum(size[u] for u in hanging.get(v, [])) for v in top_vertices}
    logger.debug(f"Peeled {len(light)} maximal {ell}-light subtrees, top tree keeps {len(top_vertices)} vertices")
    return LightPeel(tree, ell, light, top, hanging, n_light)


@dataclass
class SegmentSet:
    """边不相交且覆盖全部树边的段; paths 为 T' 的路径划分"""
    segments: List[SubTree]
    paths: List[List[int]]
    giant: List[int] = field(default_factory=list)
    standalone: int = 0

    @property
    def vertex_counts(self) -> List[int]:
        return [len(s.vertex_set) for s in self.segments]


def _chunk(path: Sequence[int], n_light: Dict[int, int], ell: int) -> List[List[int]]:
    """自上而下累计 n_ell, 达到 ell 即切开; 最后一段可能不足 ell"""
    pieces, current, load = [], [], 0
    for v in path:
        current.append(v)
        load += n_light[v]
        if load >= ell:
            pieces.append(current)
            current, load = [], 0
    if current:
        pieces.append(current)
    return pieces


def partition_segments(peel: LightPeel) -> SegmentSet:
    """根, T' 的特殊顶点与巨型顶点 (n_ell >= 10 ell) 各自成为单点路径, 其轻子树各自成段;
    其余部分是竖直链, 按 n_ell 切成块, 每块连同悬挂的轻子树成段.
    每条路径顶端顶点到其父顶点的边并入该路径的段."""
    tree, ell, top = peel.tree, peel.ell, peel.top
    singles = set(top.special_vertices())
    singles.add(tree.root)
    giant = sorted(v for v in top.vertices if peel.n_light[v] >= GIANT_FACTOR * ell)
    singles.update(giant)
    paths: List[List[int]] = [[v] for v in sorted(singles)]
    for v in top.vertices:
        if v in singles:
            continue
        if tree.parent[v] not in singles:
            continue
        chain = [v]
        while True:
            below = [c for c in tree.children[chain[-1]] if c in top.vertex_set]
            if len(below) != 1 or below[0] in singles:
                break
            chain.append(below[0])
        paths += _chunk(chain, peel.n_light, ell)
    segments: List[SubTree] = []
    standalone = 0
    for path in sorted(paths):
        edges = set(path[1:])
        if tree.parent[path[0]] is not None:
            edges.add(path[0])
        if len(path) == 1 and path[0] in singles:
            for u in peel.hanging.get(path[0], []):
                segments.append(peel.light_subtree(u))
                standalone += 1
        else:
            for v in path:
                for u in peel.hanging.get(v, []):
                    edges.update(tree.subtree_vertices(u))
        if edges:
            segments.append(SubTree(tree, edges))
    logger.debug(f"Partitioned the tree into {len(segments)} segments from {len(paths)} top paths")
    return SegmentSet(segments, sorted(paths), giant, standalone)


def long_chains(tree: RootedTree, heads: Iterable[int]) -> List[Tuple[int, List[int]]]:
    """以 heads 为链首的长链剖分, 返回 (链权, 链上的边) 并按链权降序排列

    链首 h 的链从边 (h, parent(h)) 出发, 每步走向 (边权 + 向下最长链) 最大的孩子.
    """
    heads = list(heads)
    down: Dict[int, int] = {}
    heavy: Dict[int, int] = {}
    for h in heads:
        for v in reversed(tree.subtree_vertices(h)):
            best, pick = 0, None
            for c in tree.children[v]:
                value = tree.weight[c] + down[c]
                if pick is None or value > best:
                    best, pick = value, c
            down[v] = best
            if pick is not None:
                heavy[v] = pick
    chains: List[Tuple[int, int, List[int]]] = []
    stack = list(heads)
    while stack:
        h = stack.pop()
        edges = [h]
        v = h
        while v in heavy:
            for c in tree.children[v]:
                if c != heavy[v]:
                    stack.append(c)
            v = heavy[v]
            edges.append(v)
        chains.append((tree.weight[h] + down[h], tree.depth[h], edges))
    chains.sort(key=lambda x: (-x[0], x[1], x[2][0]))
    return [(value, edges) for value, _, edges in chains]


@dataclass
class Extension:
    edges: FrozenSet[int]
    weight: int
    chains: int


def max_k_extension(peel: LightPeel, k: int) -> Extension:
    """k 条 nice 路径之并的最大权: 取长链剖分中最重的 k 条链"""
    if k < 0:
        raise BadParameters(f"k must be nonnegative, got {k}")
    picked = long_chains(peel.tree, peel.light)[:k]
    edges = frozenset(e for _, chain in picked for e in chain)
    return Extension(edges, sum(value for value, _ in picked), len(picked))


def extended_top(peel: LightPeel, extension: Extension) -> SubTree:
    """T'' = T' 并上 k-扩展"""
    return SubTree(peel.tree, peel.top.edge_ids | extension.edges, peel.top.vertex_set)


def nice_paths(peel: LightPeel, v: int) -> List[List[int]]:
    """全部 v-nice 路径: 从 v 向下进入其某棵轻子树, 止于该子树的任一顶点"""
    out = []
    tree = peel.tree
    for u in peel.hanging.get(v, []):
        for x in tree.subtree_vertices(u):
            out.append(tree.path_vertices(v, x))
    return sorted(out)


@dataclass
class CTreeForest:
    """独立 c-树集合; 每棵树以某个极大轻顶点的父顶点为根"""
    tree: RootedTree
    trees: List[SubTree]
    c: int

    @property
    def roots(self) -> List[int]:
        return [f.top for f in self.trees]

    @property
    def weights(self) -> List[int]:
        return [f.weight() for f in self.trees]

    def total_weight(self) -> int:
        return sum(self.weights)

    def inner_vertices(self) -> List[int]:
        """森林中全部非根顶点"""
        return sorted(v for f in self.trees for v in f.vertex_set if v != f.top)

    def leaf_counts(self) -> List[int]:
        """每棵 c-树中没有孩子的顶点数"""
        out = []
        for f in self.trees:
            out.append(sum(1 for v in f.vertex_set
                           if not any(c in f.edge_ids for c in self.tree.children[v])))
        return out

    def is_independent(self) -> bool:
        owner: Dict[int, int] = {}
        for i, f in enumerate(self.trees):
            for e in f.edge_ids:
                if e in owner:
                    return False
                owner[e] = i
        inner = [(v, i) for i, f in enumerate(self.trees) for v in f.vertex_set if v != f.top]
        for a, i in inner:
            for b, j in inner:
                if i != j and self.tree.is_ancestor(a, b):
                    return False
        return True


def build_ctree_forest(peel: LightPeel, c: int) -> CTreeForest:
    """每棵轻子树 T^+_u 内取 c 条最重长链之并, 得到该子树中以 parent(u) 为根的最重 c-树"""
    if c < 1:
        raise BadParameters(f"c must be positive, got {c}")
    trees = []
    for u in peel.light:
        picked = long_chains(peel.tree, [u])[:c]
        trees.append(SubTree(peel.tree, {e for _, chain in picked for e in chain}))
    forest = CTreeForest(peel.tree, trees, c)
    logger.debug(f"Built {len(trees)} {c}-trees of total weight {forest.total_weight()}")
    return forest
