"""c-树森林的骨架, 特殊游走检验与重组估计

骨架把森林之外的树边全部收缩, 各 c-树的根合并为超级根 r'. 诱导度量 w' 在非根
顶点间等于 w, 而 w'(r', v) = w(v, r_F), r_F 为 v 所在 c-树的根.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple
import logging
import math

import numpy as np

from src.cover import Edge, estimate_segment_adv
from src.errors import BadParameters, PreconditionUnmet
from src.estimate import Estimate
from src.exact.advantage import exact_cover_advantage
from src.oracle import CountingOracle
from src.query.light import CTreeForest
from src.query.matching_estimate import matching_size_estimate
from src.tree import RootedTree, SubTree
from src.utils.seeding import child_seed

logger = logging.getLogger(__name__)

WALK_SHORT = "WalkShort"
WALK_LONG = "WalkLong"

DistanceFn = Callable[[int, int], int]


class Skeleton:
    """森林的骨架 T' 与诱导度量 w'"""

    def __init__(self, forest: CTreeForest):
        self.forest = forest
        self.root = max(forest.tree.vertices) + 1
        self.home: Dict[int, int] = {}
        for f in forest.trees:
            for v in f.vertex_set:
                if v != f.top:
                    self.home[v] = f.top
        self.vertices: List[int] = sorted(self.home)

    def rooted(self) -> RootedTree:
        tree = self.forest.tree
        parent: Dict[int, Optional[int]] = {self.root: None}
        weight: Dict[int, int] = {}
        for v in self.vertices:
            p = tree.parent[v]
            parent[v] = self.root if p == self.home[v] else p
            weight[v] = tree.weight[v]
        return RootedTree(self.root, parent, weight)

    def distance(self, dist: DistanceFn, a: int, b: int) -> int:
        if a == b:
            return 0
        if a == self.root:
            return int(dist(b, self.home[b]))
        if b == self.root:
            return int(dist(a, self.home[a]))
        return int(dist(a, b))

    def order(self) -> List[int]:
        """权矩阵的行顺序: 超级根在下标 0"""
        return [self.root] + self.vertices

    def weight_matrix(self, dist: DistanceFn) -> np.ndarray:
        order = self.order()
        size = len(order)
        w = np.zeros((size, size), dtype=np.int64)
        for i in range(size):
            for j in range(i + 1, size):
                w[i, j] = w[j, i] = self.distance(dist, order[i], order[j])
        return w

    def mst_weight(self) -> int:
        return self.forest.total_weight()


@dataclass
class ZetaResult:
    value: int
    witness: List[Edge]
    exact: bool
    queries: int


def _skeleton_specials(skeleton: Skeleton) -> List[int]:
    out = set()
    for f in skeleton.forest.trees:
        for v in f.special_vertices():
            out.add(skeleton.root if v == f.top else v)
    return sorted(out)


def zeta(forest: CTreeForest, i: int, j: int, oracle: CountingOracle) -> ZetaResult:
    """两端点都是 F_i, F_j 特殊顶点的边集在 F_i 并 F_j (骨架中) 上的最大覆盖优势"""
    before = oracle.distinct_count
    pair = CTreeForest(forest.tree, [forest.trees[i], forest.trees[j]], forest.c)
    skeleton = Skeleton(pair)
    sub = skeleton.rooted().whole()
    specials = _skeleton_specials(skeleton)
    reals = [v for v in specials if v != skeleton.root]
    candidates: List[Edge] = []
    if reals:
        table = oracle.query_block(reals, reals)
        for a in range(len(reals)):
            for b in range(a + 1, len(reals)):
                candidates.append((reals[a], reals[b], int(table[a, b])))
    if skeleton.root in specials:
        for v in reals:
            candidates.append((skeleton.root, v, oracle.query(v, skeleton.home[v])))
    result = exact_cover_advantage(sub, candidates, "any")
    return ZetaResult(int(result.value), list(result.witness), result.exact, oracle.distinct_count - before)


class PairwiseZeta:
    """zeta 值缓存, 每个无序对只计算一次"""

    def __init__(self, forest: CTreeForest, oracle: CountingOracle):
        self.forest = forest
        self.oracle = oracle
        self._cache: Dict[Tuple[int, int], int] = {}

    def __call__(self, i: int, j: int) -> int:
        key = (min(i, j), max(i, j))
        if key not in self._cache:
            self._cache[key] = zeta(self.forest, key[0], key[1], self.oracle).value
        return self._cache[key]

    def __len__(self) -> int:
        return len(self._cache)


@dataclass
class WeightedMatchingEstimate:
    value: Fraction
    shifts: Dict[int, int]
    bands: Dict[Tuple[int, int], int]
    buckets: Dict[int, List[int]]
    band: int
    queries: int
    zeta_pairs: int = 0


def bucket_of(weight: int) -> int:
    """2^t <= weight < 2^(t+1)"""
    return int(weight).bit_length() - 1


def weighted_mm_estimate(forest: CTreeForest, alpha: float, eps_match: float, oracle: CountingOracle,
                         seed: int = 0, samples: Optional[int] = None) -> WeightedMatchingEstimate:
    """图 L 最大权匹配的下界估计 X

    按 w'_i 分桶, 对每对相差不超过 band 的桶在剪枝图 L' 上做无权匹配估计,
    Y_r = sum_t X_{t,t+r} 2^t, 返回 max_r Y_r / 2.
    """
    if not forest.trees:
        raise BadParameters("weighted matching estimate needs a nonempty forest")
    if not 0 < alpha < 1:
        raise BadParameters(f"alpha must lie in (0, 1), got {alpha}")
    before = oracle.distinct_count
    weights = forest.weights
    gap = 1 - alpha
    band = math.ceil(math.log2(1 / gap ** 2))
    zetas = PairwiseZeta(forest, oracle)

    def pruned_edge(i: int, j: int) -> bool:
        z = zetas(i, j)
        low, high = sorted((weights[i], weights[j]))
        return z >= gap * (low + high) and z < 2 * low + gap ** 3 * high

    buckets: Dict[int, List[int]] = {}
    for i, w in enumerate(weights):
        buckets.setdefault(bucket_of(w), []).append(i)
    shifts: Dict[int, int] = {}
    bands: Dict[Tuple[int, int], int] = {}
    draw = 0
    for t in sorted(buckets):
        for r in range(band + 1):
            if r and t + r not in buckets:
                continue
            group = buckets[t] + (buckets[t + r] if r else [])

            def neighbours(u: int, group=group) -> List[int]:
                return [v for v in group if v != u and pruned_edge(u, v)]

            estimate = matching_size_estimate(group, eps_match, oracle, seed=child_seed(seed, draw),
                                              samples=samples, neighbours=neighbours, scale=len(group))
            draw += 1
            bands[(t, t + r)] = estimate.value
            shifts[r] = shifts.get(r, 0) + estimate.value * 2 ** t
    value = Fraction(max(shifts.values(), default=0), 2)
    logger.debug(f"Weighted matching estimate {float(value):.2f} from {len(bands)} bands, {len(zetas)} zeta pairs")
    return WeightedMatchingEstimate(value, shifts, bands, buckets, band, oracle.distinct_count - before, len(zetas))


def default_alpha(eps: float) -> float:
    """alpha = 1 - eps, 在 1 - eps 舍入为 1 时取 1 - 2^-50"""
    alpha = 1 - eps
    return alpha if alpha < 1 else 1 - 2.0 ** -50


@dataclass
class WalkReport:
    decision: str
    stage: str
    special_advantage: float
    matching: Optional[Fraction]
    threshold: float
    queries: int
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def short(self) -> bool:
        return self.decision == WALK_SHORT


def spider_walk_report(forest: CTreeForest, eps: float, oracle: CountingOracle, alpha: Optional[float] = None,
                       eps_match: float = 0.05, seed: int = 0, segment_samples: Optional[int] = None,
                       matching_samples: Optional[int] = None) -> WalkReport:
    """判定 MWC(w') <= (2 - eps^4 / (2 log(1/eps))) MST(w') (WalkShort)
    或 MWC(w') >= (2 - c0 c eps) MST(w') (WalkLong)"""
    if not 0 < eps < 1:
        raise BadParameters(f"eps must lie in (0, 1), got {eps}")
    before = oracle.distinct_count
    alpha = default_alpha(eps) if alpha is None else alpha
    reference = forest.total_weight()
    inner = set(forest.inner_vertices())

    def among(sub: SubTree) -> List[int]:
        return sorted(inner | {sub.top})

    special = estimate_segment_adv(forest.trees, 2 * eps ** 4, oracle, "special", reference=reference,
                                   samples=segment_samples, seed=child_seed(seed, 0), among=among)
    if special.at_least:
        logger.debug(f"Special advantage {special.estimate:.3g} of MST(w') decides a short walk")
        return WalkReport(WALK_SHORT, "special-advantage", special.estimate, None, 2 * eps ** 4,
                          oracle.distinct_count - before)
    matching = weighted_mm_estimate(forest, alpha, eps_match, oracle, seed=child_seed(seed, 1),
                                    samples=matching_samples)
    threshold = eps ** 3 / math.log2(1 / eps) * reference
    decision = WALK_SHORT if matching.value >= threshold else WALK_LONG
    logger.debug(f"Weighted matching {float(matching.value):.2f} vs threshold {threshold:.3g} -> {decision}")
    return WalkReport(decision, "matching", special.estimate, matching.value, threshold,
                      oracle.distinct_count - before, {"bands": len(matching.bands), "band": matching.band})


def reorganize_estimate(forest: CTreeForest, eps: float, oracle: CountingOracle, c0: float = 100.0,
                        eps_match: float = 0.05, seed: int = 0, segment_samples: Optional[int] = None,
                        matching_samples: Optional[int] = None) -> Estimate:
    """森林权重至少 (1/2 + eps) MST 时的 TSP 估计"""
    mst = forest.tree.total_weight()
    if forest.total_weight() < (0.5 + eps) * mst:
        raise PreconditionUnmet(
            f"forest weight {forest.total_weight()} is below (1/2 + {eps}) * MST = {(0.5 + eps) * mst:.2f}")
    before_distinct, before_raw = oracle.distinct_count, oracle.raw_count
    eps1 = eps / 4
    eps2 = eps / (4 * forest.c * c0)
    details: Dict[str, object] = {"eps1": eps1, "eps2": eps2}

    def done(value, branch: str) -> Estimate:
        logger.info(f"Reorganization estimate: branch {branch}, value {float(value):.3f}")
        return Estimate(value=value, branch=branch, distinct_queries=oracle.distinct_count - before_distinct,
                        raw_queries=oracle.raw_count - before_raw, details=details)

    report = estimate_segment_adv(forest.trees, eps1, oracle, "special", reference=mst,
                                  samples=segment_samples, seed=child_seed(seed, 0))
    details["special_advantage"] = report.estimate
    if report.at_least:
        return done((2 - eps1 / 2) * mst, "reorg-advantage")
    walk = spider_walk_report(forest, eps2, oracle, eps_match=eps_match, seed=child_seed(seed, 1),
                              segment_samples=segment_samples, matching_samples=matching_samples)
    details.update(walk=walk.decision, walk_stage=walk.stage)
    if walk.short:
        return done((2 - eps2 ** 4 / (4 * math.log2(1 / eps2))) * mst, "reorg-walk-short")
    return done(2 * mst, "reorg-walk-long")
