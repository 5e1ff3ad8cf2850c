"""图流上的确定性两遍 TSP 估计"""
from dataclasses import dataclass, field
from typing import List, Tuple
import logging

from src.errors import BadParameters, DisconnectedGraph
from src.streaming.mst import EDGE_WORDS, SpanningForestSketch
from src.streaming.session import StreamSession
from src.tree import RootedTree

logger = logging.getLogger(__name__)

Edge = Tuple[int, int, int]

DEFAULT_ALPHA = 0.715
DEFAULT_BETA = 0.285


def cover_multiplier(alpha: float, beta: float) -> float:
    return 2 - (1 - alpha) * beta / 2


@dataclass
class TwoPassResult:
    value: float
    branch: str
    chosen: List[Edge]
    cov_weight: int
    mst: int
    peak_words: int
    alpha: float
    beta: float
    passes: int = 2
    cover_trace: List[int] = field(default_factory=list)
    tree: RootedTree = field(default=None, repr=False)


def run_twopass_tsp(session: StreamSession, alpha: float = DEFAULT_ALPHA,
                    beta: float = DEFAULT_BETA) -> TwoPassResult:
    """第一遍求 MST; 第二遍贪心收集边 e, 条件为 w(e) <= α * w(cov(e) 中尚未覆盖的部分)"""
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise BadParameters(f"alpha and beta must lie in (0, 1), got {alpha}, {beta}")
    if session.is_metric:
        raise BadParameters("the two-pass estimator reads a graph stream")
    n = session.n
    registry = session.storage

    sketch = SpanningForestSketch(registry, "mst", n)
    for u, v, w in session.stream():
        sketch.insert(u, v, w)
    forest = sketch.edges()
    if len(forest) != n - 1:
        raise DisconnectedGraph(f"graph stream is disconnected ({len(forest)} tree edges for n={n})")
    tree = RootedTree.from_edges(forest, root=0, vertices=range(n))
    mst = tree.total_weight()

    marked = registry.dict("covered", 1)
    chosen = registry.list("chosen", EDGE_WORDS)
    cov_weight = 0
    trace: List[int] = []
    for u, v, w in session.stream():
        path = tree.path_edges(u, v)
        fresh = [c for c in path if c not in marked]
        gain = sum(tree.weight[c] for c in fresh)
        if gain and w <= alpha * gain:
            chosen.append((u, v, w))
            for c in fresh:
                marked[c] = True
            cov_weight += gain
            trace.append(cov_weight)

    if cov_weight >= beta * mst:
        branch, value = "CoverFound", cover_multiplier(alpha, beta) * mst
    else:
        branch, value = "CoverAbsent", 2.0 * mst
    logger.info(f"Two-pass TSP: MST={mst}, cov={cov_weight}, |E*|={len(chosen)} -> {branch} {value:.2f}")
    return TwoPassResult(value, branch, list(chosen), cov_weight, mst, registry.peak, alpha, beta,
                         session.pass_count, trace, tree)
