from typing import Any, Dict, List
import logging

from src.config import G1Config
from src.estimate import Estimate
from src.metric import as_metric
from src.oracle import CountingOracle
from src.plugin_manager import EstimatorPlugin, Instance, register_plugin
from src.query import estimate_tsp_g1

logger = logging.getLogger(__name__)

OVERRIDES = ("degree1_samples", "local_samples", "bfs_samples", "matching_samples", "tour_factor")


@register_plugin("query", "g1-connected")
class G1QueryPlugin(EstimatorPlugin):
    """G1 连通承诺下的查询模型 TSP 估计插件"""

    version = "1.0.0"

    @classmethod
    def get_required_configs(cls) -> List[str]:
        return ["profile"]

    def describe(self) -> Dict[str, Any]:
        return {
            "model": "distance queries, promise: pairs at distance 1 form a connected graph",
            "queries": "O(n^1.5) up to log factors",
            "guarantee": "TSP <= value <= 2 TSP",
            "profile": self.config["profile"],
        }

    def estimate(self, instance: Instance, seed: int = 0, **options) -> Estimate:
        try:
            metric = as_metric(instance)
            overrides = {k: self.config[k] for k in OVERRIDES if self.config.get(k) is not None}
            cfg = G1Config.for_profile(options.get("profile", self.config["profile"]), metric.n, **overrides)
            oracle = CountingOracle(metric, budget=self.config.get("budget"))
            return estimate_tsp_g1(oracle, cfg, seed=seed)
        except Exception as e:
            logger.error(f"Error in G1 query estimate: {str(e)}")
            raise
