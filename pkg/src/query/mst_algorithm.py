"""给定 MST 时的 TSP 估计

步骤: 上部树 T' 的特殊覆盖优势与权重, c-树森林的重组与特殊游走检验,
分段覆盖优势, k-扩展后的覆盖优势, 最后退回 2 MST.
"""
from typing import Dict, Optional
import logging
import math

from src.config import MstQueryConfig
from src.cover import cover_advantage, estimate_segment_adv
from src.errors import BadParameters
from src.estimate import Estimate
from src.oracle import CountingOracle
from src.query.light import (build_ctree_forest, extended_top, light_peel, max_k_extension,
                             partition_segments)
from src.query.skeleton import reorganize_estimate, spider_walk_report
from src.tree import RootedTree
from src.utils.seeding import spawn_rngs

logger = logging.getLogger(__name__)


def estimate_tsp_with_mst(oracle: CountingOracle, tree: RootedTree, cfg: Optional[MstQueryConfig] = None,
                          seed: int = 0, check_mst: bool = True) -> Estimate:
    """以 tree 为 MST, 返回满足 TSP <= value <= 2 TSP 的估计值

    check_mst 打开时, 查询到的点对若比树路径上的某条边更短则抛出 NotAnMst.
    """
    n = oracle.n
    if tree.n != n:
        raise BadParameters(f"tree has {tree.n} vertices but the metric has {n}")
    cfg = cfg or MstQueryConfig.desk(n)
    mst = tree.total_weight()
    eps = cfg.eps
    start_distinct, start_raw = oracle.distinct_count, oracle.raw_count
    details: Dict[str, object] = {"profile": cfg.profile, "mst": mst}

    def done(value, branch: str) -> Estimate:
        logger.info(f"MST-given estimate for n={n}: branch {branch}, value {float(value):.3f}")
        return Estimate(value=value, branch=branch, distinct_queries=oracle.distinct_count - start_distinct,
                        raw_queries=oracle.raw_count - start_raw, breakdown=dict(oracle.breakdown),
                        details=details)

    if n <= 2:
        return done(2 * mst, "trivial")
    rng_reorg, rng_walk, rng_segments = spawn_rngs(seed, 3)
    peel = light_peel(tree, cfg.ell)
    top = peel.top
    details.update(light=len(peel.light), top_weight=top.weight(), top_special=len(top.special_vertices()))

    with oracle.meter("step1"):
        adv_top = cover_advantage(tree, top, oracle, "special", check_mst=check_mst)
    details["top_advantage"] = adv_top.value
    if adv_top.value >= eps / 10 * mst:
        return done((2 - eps / 20) * mst, "top-advantage")
    if top.weight() >= (0.5 + eps) * mst:
        return done(2 * mst, "top-heavy")

    forest = build_ctree_forest(peel, cfg.c)
    forest_weight = forest.total_weight()
    details.update(ctrees=len(forest.trees), forest_weight=forest_weight)
    with oracle.meter("step2"):
        if forest_weight >= (0.5 + eps) * mst:
            result = reorganize_estimate(forest, eps, oracle, c0=cfg.c0, eps_match=cfg.eps_match,
                                         seed=int(rng_reorg.integers(2 ** 31)),
                                         segment_samples=cfg.segment_samples,
                                         matching_samples=cfg.matching_samples)
            details.update(result.details)
            return done(result.value, result.branch)
        if forest_weight > eps * mst:
            walk = spider_walk_report(forest, eps, oracle, alpha=cfg.alpha_match, eps_match=cfg.eps_match,
                                      seed=int(rng_walk.integers(2 ** 31)),
                                      segment_samples=cfg.segment_samples,
                                      matching_samples=cfg.matching_samples)
            details.update(walk=walk.decision, walk_stage=walk.stage)
            if walk.short:
                return done((2 - eps ** 5 / (2 * math.log2(1 / eps))) * mst, "spider-short")

    segments = partition_segments(peel)
    details["segments"] = len(segments.segments)
    with oracle.meter("step3"):
        report = estimate_segment_adv(segments.segments, eps / 1000, oracle, "any", reference=mst,
                                      samples=cfg.segment_samples, seed=int(rng_segments.integers(2 ** 31)),
                                      check_mst=check_mst)
    details.update(segment_advantage=report.estimate, segment_exhaustive=report.exhaustive)
    if report.at_least:
        return done((2 - eps / 2000) * mst, "segment-advantage")

    extension = max_k_extension(peel, cfg.k)
    extended = extended_top(peel, extension)
    details.update(extension_weight=extension.weight, extended_weight=extended.weight())
    with oracle.meter("step4"):
        adv_ext = cover_advantage(tree, extended, oracle, "special", check_mst=check_mst)
    details["extended_advantage"] = adv_ext.value
    if adv_ext.value >= eps / 10 * mst:
        return done((2 - eps / 20) * mst, "extension-advantage")
    if extended.weight() > (0.5 + eps) * mst:
        return done(2 * mst, "extension-heavy")
    return done(2 * mst, "fallback")
