from contextlib import contextmanager
from typing import Dict, Iterator, Optional, Sequence, Set, Tuple
import logging

import numpy as np

from src.errors import BadParameters, BudgetExceeded
from src.metric import Metric

logger = logging.getLogger(__name__)


class CountingOracle:
    """带预算与去重计数的距离查询接口

    同一无序点对只计一次 (distinct_count), raw_count 记录全部调用次数.
    """

    def __init__(self, metric: Metric, budget: Optional[int] = None):
        self.metric = metric
        self.budget = budget
        self.distinct_count = 0
        self.raw_count = 0
        self.breakdown: Dict[str, int] = {}
        self._seen = np.zeros((metric.n, metric.n), dtype=bool)

    @property
    def n(self) -> int:
        return self.metric.n

    @property
    def answered(self) -> Set[Tuple[int, int]]:
        iu, iv = np.nonzero(np.triu(self._seen, k=1))
        return {(int(u), int(v)) for u, v in zip(iu, iv)}

    def was_queried(self, u: int, v: int) -> bool:
        return bool(self._seen[u, v])

    def unseen(self, rows: Sequence[int], cols: Sequence[int]) -> int:
        """rows x cols 中尚未查询过的去重点对数 (不计费)"""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if rows.size == 0 or cols.size == 0:
            return 0
        a = np.minimum.outer(rows, cols).ravel()
        b = np.maximum.outer(rows, cols).ravel()
        off = a != b
        fresh = ~self._seen[a[off], b[off]]
        return int(np.unique(a[off][fresh] * self.n + b[off][fresh]).size)

    def _check_pair(self, u: int, v: int):
        if u == v:
            raise BadParameters(f"query on identical vertices {u}")
        if not (0 <= u < self.n and 0 <= v < self.n):
            raise BadParameters(f"query ({u}, {v}) out of range for n={self.n}")

    def _charge(self, count: int):
        if self.budget is not None and self.distinct_count + count > self.budget:
            raise BudgetExceeded(
                f"distinct queries would reach {self.distinct_count + count} > budget {self.budget}")

    def query(self, u: int, v: int) -> int:
        """查询 w(u, v)"""
        self._check_pair(u, v)
        if not self._seen[u, v]:
            self._charge(1)
            self._seen[u, v] = self._seen[v, u] = True
            self.distinct_count += 1
        self.raw_count += 1
        return int(self.metric.dist[u, v])

    def query_block(self, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
        """批量查询 rows x cols 的全部点对, 对角位置不计费"""
        rows = np.asarray(rows, dtype=np.int64)
        cols = np.asarray(cols, dtype=np.int64)
        if rows.size == 0 or cols.size == 0:
            return np.zeros((rows.size, cols.size), dtype=np.int64)
        a = np.minimum.outer(rows, cols).ravel()
        b = np.maximum.outer(rows, cols).ravel()
        off = a != b
        a, b = a[off], b[off]
        fresh = ~self._seen[a, b]
        if fresh.any():
            keys = np.unique(a[fresh] * self.n + b[fresh])
            self._charge(int(keys.size))
            fa, fb = keys // self.n, keys % self.n
            self._seen[fa, fb] = True
            self._seen[fb, fa] = True
            self.distinct_count += int(keys.size)
        self.raw_count += int(a.size)
        return self.metric.dist[np.ix_(rows, cols)].copy()

    def query_row(self, u: int, targets: Optional[Sequence[int]] = None) -> np.ndarray:
        """查询 u 到 targets 中每个顶点的距离 (默认全部顶点)"""
        if targets is None:
            targets = np.arange(self.n)
        return self.query_block([u], targets)[0]

    @contextmanager
    def meter(self, name: str) -> Iterator[None]:
        """把代码块内新增的去重查询数累计到 breakdown[name]"""
        start = self.distinct_count
        try:
            yield
        finally:
            spent = self.distinct_count - start
            self.breakdown[name] = self.breakdown.get(name, 0) + spent
            logger.debug(f"{name}: {spent} distinct queries")
