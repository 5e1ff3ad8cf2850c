from typing import Any, Dict, List, Optional
import logging

from src.config import MstQueryConfig
from src.estimate import Estimate
from src.exact import exact_mst
from src.metric import Metric, as_metric
from src.oracle import CountingOracle
from src.plugin_manager import EstimatorPlugin, Instance, register_plugin
from src.query import estimate_tsp_with_mst
from src.tree import RootedTree, read_tree

logger = logging.getLogger(__name__)

OVERRIDES = ("segment_samples", "matching_samples")


def resolve_tree(metric: Metric, source: str) -> RootedTree:
    """'derive' 离线计算 MST (不计查询), 否则读取树文件"""
    if source == "derive":
        return exact_mst(metric).witness
    return read_tree(source)


@register_plugin("query", "mst-given")
class MstQueryPlugin(EstimatorPlugin):
    """给定 MST 的查询模型 TSP 估计插件"""

    version = "1.0.0"

    @classmethod
    def get_required_configs(cls) -> List[str]:
        return ["profile", "mst"]

    def describe(self) -> Dict[str, Any]:
        return {
            "model": "distance queries plus an MST given as input",
            "queries": "O(n^1.5) up to log factors",
            "guarantee": "TSP <= value <= 2 TSP",
            "profile": self.config["profile"],
        }

    def estimate(self, instance: Instance, seed: int = 0, tree: Optional[RootedTree] = None,
                 **options) -> Estimate:
        try:
            metric = as_metric(instance)
            if tree is None:
                tree = resolve_tree(metric, options.get("mst", self.config["mst"]))
            overrides = {k: self.config[k] for k in OVERRIDES if self.config.get(k) is not None}
            cfg = MstQueryConfig.for_profile(options.get("profile", self.config["profile"]), metric.n,
                                             **overrides)
            oracle = CountingOracle(metric, budget=self.config.get("budget"))
            return estimate_tsp_with_mst(oracle, tree, cfg, seed=seed,
                                         check_mst=bool(self.config.get("check_mst", True)))
        except Exception as e:
            logger.error(f"Error in MST-given query estimate: {str(e)}")
            raise
