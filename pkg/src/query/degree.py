from dataclasses import dataclass
from typing import Optional
import logging
import math

import numpy as np

from src.errors import BadParameters, PromiseViolated
from src.oracle import CountingOracle

logger = logging.getLogger(__name__)

AT_LEAST = "AtLeast"
AT_MOST = "AtMost"


@dataclass
class Degree1Report:
    """AtLeast: 度为 1 的顶点多于 eps*n/2; AtMost: 不超过 2*eps*n"""
    decision: str
    samples: int
    hits: int
    exhaustive: bool
    queries: int

    @property
    def at_least(self) -> bool:
        return self.decision == AT_LEAST


def default_degree1_samples(n: int, eps: float) -> int:
    return math.ceil(200 * math.log2(max(n, 2)) / eps)


def degree1_test(eps: float, oracle: CountingOracle, seed: int = 0,
                 samples: Optional[int] = None) -> Degree1Report:
    """抽样顶点并查询整行, 统计其在 G1 中的度; 样本数不小于 n 时逐个检查全部顶点"""
    if not 0 < eps < 1:
        raise BadParameters(f"eps must lie in (0, 1), got {eps}")
    n = oracle.n
    before = oracle.distinct_count
    count = samples if samples is not None else default_degree1_samples(n, eps)
    if count >= n:
        picks, exhaustive = np.arange(n), True
    else:
        picks, exhaustive = np.random.default_rng(seed).integers(0, n, size=count), False
    hits = 0
    for v in picks.tolist():
        degree = int((oracle.query_row(v) == 1).sum())
        if degree == 0 and n > 1:
            raise PromiseViolated(f"vertex {v} has no weight-1 neighbour")
        hits += degree == 1
    decision = AT_LEAST if hits >= eps * len(picks) else AT_MOST
    logger.debug(f"Degree-1 test: {hits}/{len(picks)} sampled vertices have degree 1 -> {decision}")
    return Degree1Report(decision, len(picks), hits, exhaustive, oracle.distinct_count - before)
