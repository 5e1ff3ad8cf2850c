from typing import Any, Dict, List
import logging
import math

from src.estimate import Estimate
from src.metric import as_metric
from src.plugin_manager import EstimatorPlugin, Instance, register_plugin
from src.streaming import StreamSession, run_onepass_mst_estimate

logger = logging.getLogger(__name__)


@register_plugin("streaming", "onepass-mst")
class OnePassMstPlugin(EstimatorPlugin):
    """单遍度量流 MST 估计插件"""

    version = "1.0.0"

    @classmethod
    def get_required_configs(cls) -> List[str]:
        return ["alpha", "cboost", "order"]

    def describe(self) -> Dict[str, Any]:
        return {
            "model": "metric stream, one pass",
            "space": "O(n/alpha) words up to log factors",
            "guarantee": "MST <= value <= O(alpha log n) MST with constant probability",
            "alpha": self.config["alpha"],
            "cboost": self.config["cboost"],
        }

    def estimate(self, instance: Instance, seed: int = 0, **options) -> Estimate:
        try:
            metric = as_metric(instance)
            session = StreamSession(metric, order=options.get("order", self.config["order"]), seed=seed)
            alpha = float(options.get("alpha", self.config["alpha"]))
            cboost = float(options.get("cboost", self.config["cboost"]))
            result = run_onepass_mst_estimate(session, alpha, seed=seed, c_boost=cboost)
            return Estimate(value=result.value, branch="onepass",
                            upper_factor=4 * cboost * alpha * math.log2(max(metric.n, 2)),
                            peak_words=result.peak_words, passes=result.passes,
                            details={"mst_prime": result.mst_prime, "diam": result.diam,
                                     "w_double_prime": result.w_double_prime, "alpha": alpha})
        except Exception as e:
            logger.error(f"Error in one-pass MST estimate: {str(e)}")
            raise
