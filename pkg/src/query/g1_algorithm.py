"""G1 连通承诺下的 TSP 估计

步骤: 度 1 顶点检验, 轻子图抽样与重构代价, BFS 抽样得到支撑路径,
孤立顶点上的匹配估计, e-块匹配, 以及诱导路径上的合规巡回.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Set, Tuple
import logging
import math

import networkx as nx
import numpy as np

from src.config import G1Config
from src.estimate import Estimate
from src.exact.matching import max_matching_pairs
from src.exact.tours import PROPER_TOUR_CAP
from src.oracle import CountingOracle
from src.query.bfs import BfsResult, bfs
from src.query.degree import degree1_test
from src.query.local import LocalResult, local, reconfig_cost
from src.query.matching_estimate import matching_size_estimate
from src.query.paths import extract_induced_paths, greedy_proper_tour, proper_tour_cost
from src.utils.seeding import spawn_rngs

logger = logging.getLogger(__name__)


def local_samples(n: int, cfg: G1Config) -> int:
    if cfg.local_samples is not None:
        return cfg.local_samples
    return min(n, math.ceil(1 / cfg.eps ** 2))


def bfs_samples(n: int, cfg: G1Config) -> int:
    if cfg.bfs_samples is not None:
        return cfg.bfs_samples
    return min(n, math.ceil(100 * n * math.log2(max(n, 2)) / cfg.h))


def _draw(rng: np.random.Generator, n: int, count: int) -> Tuple[List[int], bool]:
    """样本数不小于 n 时取全部顶点"""
    if count >= n:
        return list(range(n)), True
    return rng.integers(0, n, size=count).tolist(), False


@dataclass
class LightSurvey:
    successes: int
    draws: int
    gamma_mean: float
    subgraphs: List[frozenset] = field(default_factory=list)


def _survey_light(oracle: CountingOracle, cfg: G1Config, rng: np.random.Generator) -> LightSurvey:
    n = oracle.n
    s = min(cfg.ell, math.ceil(n / 2) - 1)
    picks, _ = _draw(rng, n, local_samples(n, cfg))
    owner: Dict[int, LocalResult] = {}
    gamma_of: Dict[frozenset, Fraction] = {}
    successes, gamma_total = 0, Fraction(0)
    for v in picks:
        if v not in owner:
            with oracle.meter("local"):
                result = local(v, s, oracle)
            if result.success:
                for u in result.vertices:
                    owner[u] = result
            else:
                owner[v] = result
        result = owner[v]
        if not result.success:
            continue
        successes += 1
        if result.vertices not in gamma_of:
            with oracle.meter("reconfig"):
                rc = reconfig_cost(result.vertices, oracle)
            gamma_of[result.vertices] = Fraction(rc.value) / len(result.vertices)
        gamma_total += gamma_of[result.vertices]
    mean = float(gamma_total / len(picks)) if picks else 0.0
    return LightSurvey(successes, len(picks), mean, list(gamma_of))


@dataclass
class PathSurvey:
    support_paths: List[List[int]]
    h_edges: Set[Tuple[int, int]]
    z_vertices: Set[int]
    chunk: Set[int]
    isolated: Set[int]
    draws: int


def _survey_paths(oracle: CountingOracle, cfg: G1Config, rng: np.random.Generator) -> PathSurvey:
    n = oracle.n
    picks, _ = _draw(rng, n, bfs_samples(n, cfg))
    cache: Dict[int, BfsResult] = {}
    for v in picks:
        if v not in cache:
            with oracle.meter("bfs"):
                cache[v] = bfs(v, cfg.h, cfg.q, cfg.alpha_bfs, oracle)
    paths, h_edges, z_vertices, chunk = [], set(), set(), set()
    for v in sorted(cache):
        result = cache[v]
        if not result.success:
            continue
        paths.append(result.path)
        z_vertices.update(result.path)
        h_edges.update(result.support)
        chunk.update(result.vertices - set(result.path))
    isolated = set(range(n)) - chunk - z_vertices
    return PathSurvey(paths, h_edges, z_vertices, chunk, isolated, len(picks))


def eblock_matching(n: int, edges) -> List[Tuple[int, int]]:
    """只用属于某个 e-块 (非桥边) 的边的最大匹配"""
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    bridges = {(min(a, b), max(a, b)) for a, b in nx.bridges(g)}
    inner = [(a, b) for a, b in g.edges() if (min(a, b), max(a, b)) not in bridges]
    return max_matching_pairs(n, inner)


def estimate_tsp_g1(oracle: CountingOracle, cfg: Optional[G1Config] = None, seed: int = 0) -> Estimate:
    """承诺 G1 连通时返回 TSP 的估计值, 满足 TSP <= value <= 2 TSP"""
    n = oracle.n
    cfg = cfg or G1Config.desk(n)
    start_distinct, start_raw = oracle.distinct_count, oracle.raw_count
    details: Dict[str, object] = {"profile": cfg.profile}

    def done(value, branch: str) -> Estimate:
        logger.info(f"G1 estimate for n={n}: branch {branch}, value {float(value):.3f}")
        return Estimate(value=value, branch=branch, distinct_queries=oracle.distinct_count - start_distinct,
                        raw_queries=oracle.raw_count - start_raw, breakdown=dict(oracle.breakdown),
                        details=details)

    if n <= 2:
        return done(2 * (n - 1), "trivial")
    rng_degree, rng_local, rng_bfs, rng_match = spawn_rngs(seed, 4)

    with oracle.meter("degree1"):
        report = degree1_test(cfg.eps / 40, oracle, seed=int(rng_degree.integers(2 ** 31)),
                              samples=cfg.degree1_samples)
    details["degree1_hits"] = report.hits
    if report.at_least:
        return done(2 * n, "degree1")

    survey = _survey_light(oracle, cfg, rng_local)
    details.update(local_successes=survey.successes, local_draws=survey.draws, gamma_mean=survey.gamma_mean)
    if survey.draws and survey.successes >= cfg.eps * survey.draws:
        if survey.gamma_mean <= cfg.eps / 80:
            return done((2 - cfg.eps / 20) * n, "light-cheap")
        return done(2 * n, "light-costly")

    paths = _survey_paths(oracle, cfg, rng_bfs)
    details.update(support_paths=len(paths.support_paths), isolated=len(paths.isolated), chunk=len(paths.chunk))
    eps_hat = cfg.eps_hat
    if len(paths.isolated) >= 10 * eps_hat * n:
        with oracle.meter("matching"):
            estimate = matching_size_estimate(sorted(paths.isolated), eps_hat / 100, oracle,
                                              seed=int(rng_match.integers(2 ** 31)),
                                              samples=cfg.matching_samples)
        details.update(matching=estimate.value, matching_exhaustive=estimate.exhaustive)
        if estimate.value <= eps_hat * n:
            return done(2 * n, "isolated-small")
        return done((2 - eps_hat / 200) * n, "isolated-large")
    if len(paths.chunk) >= 10 * eps_hat * n:
        with oracle.meter("eblock"):
            size = len(eblock_matching(n, paths.h_edges))
        details["eblock_matching"] = size
        if size <= 2 * eps_hat * n:
            return done(2 * n, "eblock-small")
        return done((2 - eps_hat) * n, "eblock-large")

    extraction = extract_induced_paths(paths.support_paths, eps_hat, cfg.h, n)
    details.update(induced_paths=len(extraction.paths), covered_edges=extraction.covered_edges,
                   extraction_bound=extraction.meets_bound)
    if not extraction.paths:
        return done(2 * n, "tour-long")
    with oracle.meter("proper_tour"):
        if len(extraction.paths) <= PROPER_TOUR_CAP:
            tour = proper_tour_cost(extraction.paths, oracle)
        else:
            tour = greedy_proper_tour(extraction.paths, oracle)
    # 未覆盖的顶点沿 G1 生成森林挂到巡回上, 每个至多加 2
    uncovered = n - len({v for p in extraction.paths for v in p})
    completed = tour.cost + 2 * uncovered
    details.update(proper_tour=tour.cost, proper_tour_exact=tour.exact, completed_tour=completed)
    if completed <= (2 - cfg.tour_factor * eps_hat) * n:
        return done((2 - eps_hat) * n, "tour-short")
    return done(2 * n, "tour-long")
