from typing import Any, Dict, List
import logging

from src.estimate import Estimate
from src.metric import Metric, graph_of_metric
from src.plugin_manager import EstimatorPlugin, Instance, register_plugin
from src.streaming import StreamSession, run_twopass_tsp
from src.streaming.tsp import cover_multiplier

logger = logging.getLogger(__name__)


@register_plugin("streaming", "twopass-tsp")
class TwoPassTspPlugin(EstimatorPlugin):
    """两遍图流 TSP 估计插件"""

    version = "1.0.0"

    @classmethod
    def get_required_configs(cls) -> List[str]:
        return ["alpha", "beta", "order"]

    def describe(self) -> Dict[str, Any]:
        alpha, beta = self.config["alpha"], self.config["beta"]
        return {
            "model": "graph stream, two passes, deterministic",
            "space": "O(n) words",
            "guarantee": "TSP <= value <= 1.96 TSP at the default alpha and beta",
            "cover_multiplier": cover_multiplier(alpha, beta),
        }

    def estimate(self, instance: Instance, seed: int = 0, **options) -> Estimate:
        try:
            graph = graph_of_metric(instance) if isinstance(instance, Metric) else instance
            session = StreamSession(graph, order=options.get("order", self.config["order"]), seed=seed)
            result = run_twopass_tsp(session, float(options.get("alpha", self.config["alpha"])),
                                     float(options.get("beta", self.config["beta"])))
            return Estimate(value=result.value, branch=result.branch, peak_words=result.peak_words,
                            passes=result.passes,
                            details={"mst": result.mst, "cov_weight": result.cov_weight,
                                     "chosen": len(result.chosen)})
        except Exception as e:
            logger.error(f"Error in two-pass TSP estimate: {str(e)}")
            raise
