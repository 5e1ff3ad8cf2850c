from collections import deque
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple, Union
import logging

from src.errors import BadParameters

logger = logging.getLogger(__name__)


class RootedTree:
    """带父指针与边权的有根树

    树边用子顶点编号标识: 边 c 即 (c, parent[c]).
    """

    def __init__(self, root: int, parent: Dict[int, Optional[int]], weight: Dict[int, int]):
        if parent.get(root) is not None:
            raise BadParameters(f"root {root} must not have a parent")
        self.root = root
        self.parent: Dict[int, Optional[int]] = dict(parent)
        self.parent[root] = None
        self.weight: Dict[int, int] = {c: int(weight[c]) for c in self.parent if c != root}
        for c, w in self.weight.items():
            if w < 1:
                raise BadParameters(f"tree edge ({c}, {self.parent[c]}) has weight {w}")
        self.children: Dict[int, List[int]] = {v: [] for v in self.parent}
        for c, p in self.parent.items():
            if p is not None:
                if p not in self.children:
                    raise BadParameters(f"parent {p} of {c} is not a tree vertex")
                self.children[p].append(c)
        for v in self.children:
            self.children[v].sort()
        self._index()

    def _index(self):
        self.depth: Dict[int, int] = {self.root: 0}
        self.tin: Dict[int, int] = {}
        self.tout: Dict[int, int] = {}
        self.preorder: List[int] = []
        clock = 0
        stack = [(self.root, False)]
        while stack:
            v, done = stack.pop()
            if done:
                self.tout[v] = clock
                continue
            self.tin[v] = clock
            clock += 1
            self.preorder.append(v)
            stack.append((v, True))
            for c in reversed(self.children[v]):
                self.depth[c] = self.depth[v] + 1
                stack.append((c, False))
        if len(self.preorder) != len(self.parent):
            raise BadParameters("parent map is not a tree reachable from the root")
        self.size: Dict[int, int] = {}
        for v in reversed(self.preorder):
            self.size[v] = 1 + sum(self.size[c] for c in self.children[v])

    @classmethod
    def from_edges(cls, edges: Iterable[Tuple[int, int, int]], root: int,
                   vertices: Optional[Iterable[int]] = None) -> "RootedTree":
        """由无向边表构造, 以 root 为根"""
        adj: Dict[int, List[Tuple[int, int]]] = {}
        if vertices is not None:
            for v in vertices:
                adj.setdefault(v, [])
        adj.setdefault(root, [])
        edge_count = 0
        for u, v, w in edges:
            adj.setdefault(u, []).append((v, w))
            adj.setdefault(v, []).append((u, w))
            edge_count += 1
        if edge_count != len(adj) - 1:
            raise BadParameters(f"{edge_count} edges cannot form a spanning tree on {len(adj)} vertices")
        parent: Dict[int, Optional[int]] = {root: None}
        weight: Dict[int, int] = {}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for u, w in sorted(adj[v]):
                if u not in parent:
                    parent[u] = v
                    weight[u] = w
                    queue.append(u)
        if len(parent) != len(adj):
            raise BadParameters("edge set is not connected")
        return cls(root, parent, weight)

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def vertices(self) -> List[int]:
        return sorted(self.parent)

    def edges(self) -> List[Tuple[int, int, int]]:
        return [(c, self.parent[c], self.weight[c]) for c in sorted(self.weight)]

    def total_weight(self) -> int:
        return sum(self.weight.values())

    def degree(self, v: int) -> int:
        return len(self.children[v]) + (0 if v == self.root else 1)

    def leaves(self) -> List[int]:
        return [v for v in self.vertices if self.degree(v) <= 1]

    def neighbors(self, v: int) -> List[int]:
        out = list(self.children[v])
        if self.parent[v] is not None:
            out.append(self.parent[v])
        return out

    def is_ancestor(self, a: int, b: int) -> bool:
        """a 是否为 b 的祖先 (含 a == b)"""
        return self.tin[a] <= self.tin[b] and self.tout[b] <= self.tout[a]

    def lca(self, u: int, v: int) -> int:
        while not self.is_ancestor(u, v):
            u = self.parent[u]
        return u

    def path_edges(self, u: int, v: int) -> List[int]:
        """u 到 v 树路径上的边 (以子顶点表示)"""
        top = self.lca(u, v)
        out = []
        for x in (u, v):
            while x != top:
                out.append(x)
                x = self.parent[x]
        return out

    def path_vertices(self, u: int, v: int) -> List[int]:
        top = self.lca(u, v)
        left, right = [], []
        x = u
        while x != top:
            left.append(x)
            x = self.parent[x]
        x = v
        while x != top:
            right.append(x)
            x = self.parent[x]
        return left + [top] + right[::-1]

    def path_weight(self, u: int, v: int) -> int:
        return sum(self.weight[c] for c in self.path_edges(u, v))

    def subtree_vertices(self, v: int) -> List[int]:
        out, stack = [], [v]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(self.children[x])
        return out

    def whole(self) -> "SubTree":
        return SubTree(self, frozenset(self.weight), frozenset(self.parent))


class SubTree:
    """有根树 T 的连通子树 T', 以边集 (子顶点编号) 表示"""

    def __init__(self, tree: RootedTree, edges: Iterable[int], vertices: Optional[Iterable[int]] = None):
        self.tree = tree
        self.edge_ids: FrozenSet[int] = frozenset(edges)
        verts: Set[int] = set(vertices) if vertices is not None else set()
        for c in self.edge_ids:
            verts.add(c)
            verts.add(tree.parent[c])
        if not verts:
            raise BadParameters("a subtree needs at least one vertex")
        self.vertex_set: FrozenSet[int] = frozenset(verts)
        self.top = min(self.vertex_set, key=lambda v: (tree.depth[v], v))
        if len(self.vertex_set) != len(self.edge_ids) + 1:
            raise BadParameters("edge set is not a connected subtree")
        for v in self.vertex_set:
            if v != self.top and v not in self.edge_ids:
                raise BadParameters(f"vertex {v} is not connected to subtree top {self.top}")
        self._bits: Optional[Dict[int, int]] = None
        self._rootmask: Optional[Dict[int, int]] = None
        self._exit: Optional[Dict[int, int]] = None

    @classmethod
    def from_vertices(cls, tree: RootedTree, vertices: Iterable[int]) -> "SubTree":
        verts = set(vertices)
        top = min(verts, key=lambda v: (tree.depth[v], v))
        return cls(tree, [v for v in verts if v != top], verts)

    @property
    def vertices(self) -> List[int]:
        return sorted(self.vertex_set)

    @property
    def edges(self) -> List[int]:
        return sorted(self.edge_ids)

    def weight(self) -> int:
        return sum(self.tree.weight[c] for c in self.edge_ids)

    def degree(self, v: int) -> int:
        d = sum(1 for c in self.tree.children[v] if c in self.edge_ids)
        return d + (1 if v in self.edge_ids else 0)

    def special_vertices(self) -> List[int]:
        """度数不等于 2 的顶点"""
        return [v for v in self.vertices if self.degree(v) != 2]

    def union(self, other: "SubTree") -> "SubTree":
        return SubTree(self.tree, self.edge_ids | other.edge_ids, self.vertex_set | other.vertex_set)

    # 覆盖计算: 每条树边一个比特, rootmask[v] 为 top 到 v 的路径比特
    def edge_bits(self) -> Dict[int, int]:
        if self._bits is None:
            self._bits = {c: i for i, c in enumerate(self.edges)}
        return self._bits

    def bit_weights(self) -> List[int]:
        return [self.tree.weight[c] for c in self.edges]

    def _masks(self) -> Dict[int, int]:
        if self._rootmask is None:
            bits = self.edge_bits()
            mask = {self.top: 0}
            stack = [self.top]
            while stack:
                v = stack.pop()
                for c in self.tree.children[v]:
                    if c in self.edge_ids:
                        mask[c] = mask[v] | (1 << bits[c])
                        stack.append(c)
            self._rootmask = mask
        return self._rootmask

    def projection(self, x: int) -> int:
        """x 在 T' 上的投影: T' 中离 x 最近的顶点"""
        if x in self.vertex_set:
            return x
        if self._exit is None:
            exit_of = {v: v for v in self.vertex_set}
            queue = deque(self.vertex_set)
            while queue:
                v = queue.popleft()
                for u in self.tree.neighbors(v):
                    if u not in exit_of:
                        exit_of[u] = exit_of[v]
                        queue.append(u)
            self._exit = exit_of
        return self._exit[x]

    def cover_mask(self, u: int, v: int) -> int:
        """cov((u, v), T') 的比特表示"""
        masks = self._masks()
        return masks[self.projection(u)] ^ masks[self.projection(v)]

    def mask_edges(self, mask: int) -> List[int]:
        edges = self.edges
        out = []
        while mask:
            low = mask & -mask
            out.append(edges[low.bit_length() - 1])
            mask ^= low
        return out

    def mask_weight(self, mask: int) -> int:
        weights = self.bit_weights()
        total = 0
        while mask:
            low = mask & -mask
            total += weights[low.bit_length() - 1]
            mask ^= low
        return total

    def full_mask(self) -> int:
        return (1 << len(self.edge_ids)) - 1


def write_tree(tree: RootedTree, path: Union[str, Path]) -> None:
    lines = [f"{c} {p} {w}" for c, p, w in tree.edges()]
    Path(path).write_text("\n".join(lines) + "\n")


def read_tree(path: Union[str, Path]) -> RootedTree:
    """读取 `child parent weight` 格式的树文件"""
    parent: Dict[int, Optional[int]] = {}
    weight: Dict[int, int] = {}
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        c, p, w = (int(x) for x in line.split())
        parent[c] = p
        weight[c] = w
    roots = {p for p in parent.values() if p not in parent}
    if len(roots) != 1:
        raise BadParameters(f"tree file must have exactly one root, found {sorted(roots)}")
    root = roots.pop()
    parent[root] = None
    return RootedTree(root, parent, weight)


def tree_from_parents(parents: Sequence[int], weights: Sequence[int], root: int = 0) -> RootedTree:
    parent = {v: (None if v == root else int(parents[v])) for v in range(len(parents))}
    weight = {v: int(weights[v]) for v in range(len(parents)) if v != root}
    return RootedTree(root, parent, weight)
