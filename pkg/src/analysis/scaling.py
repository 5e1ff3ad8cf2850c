from dataclasses import dataclass
from typing import Any, Dict, Iterable, List
import logging

import numpy as np
import pandas as pd
from scipy import stats

from src.errors import BadParameters
from src.estimate import RunRecord

logger = logging.getLogger(__name__)


@dataclass
class ScalingFit:
    """log(distinct_queries) 对 log(n) 的线性拟合"""
    slope: float
    intercept: float
    r_squared: float
    ratios: Dict[int, float]

    def ratio_spread(self) -> float:
        """各规模上 distinct / n^1.5 的最大值与最小值之比"""
        values = list(self.ratios.values())
        return max(values) / min(values) if min(values) > 0 else float("inf")


class ScalingAnalyzer:
    """查询次数随 n 的增长分析"""

    def __init__(self, exponent: float = 1.5):
        self.exponent = exponent

    def frame(self, records: Iterable[RunRecord]) -> pd.DataFrame:
        rows = [{"n": r.n, "distinct_queries": r.distinct_queries} for r in records]
        return pd.DataFrame(rows, columns=["n", "distinct_queries"])

    def fit_query_scaling(self, records: Iterable[RunRecord]) -> ScalingFit:
        """按 n 取平均后拟合斜率"""
        try:
            df = self.frame(records)
            means = df.groupby("n")["distinct_queries"].mean()
            if len(means) < 2:
                raise BadParameters("scaling fit needs at least two distinct sizes")
            if (means <= 0).any():
                raise BadParameters("scaling fit needs positive query counts")
            sizes = means.index.to_numpy(dtype=float)
            result = stats.linregress(np.log(sizes), np.log(means.to_numpy(dtype=float)))
            ratios = {int(n): float(q / n ** self.exponent) for n, q in means.items()}
            fit = ScalingFit(float(result.slope), float(result.intercept), float(result.rvalue ** 2), ratios)
            logger.info(f"Query scaling slope {fit.slope:.3f} (r^2={fit.r_squared:.3f}), ratios {ratios}")
            return fit
        except Exception as e:
            logger.error(f"Error fitting query scaling: {str(e)}")
            raise

    def summary(self, fit: ScalingFit) -> Dict[str, Any]:
        return {
            "slope": fit.slope,
            "intercept": fit.intercept,
            "r_squared": fit.r_squared,
            "ratios": {str(n): v for n, v in sorted(fit.ratios.items())},
            "ratio_spread": fit.ratio_spread(),
        }
