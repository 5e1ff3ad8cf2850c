"""精确参考计算: 测试与查询算法内部优化共用"""
from src.exact.advantage import advantage_of, exact_cover_advantage
from src.exact.matching import (ancestor_tree_matching, exact_max_matching, exact_max_weight_matching,
                                g1_lower_bounds)
from src.exact.reconfiguration import exact_reconfiguration
from src.exact.result import ExactResult
from src.exact.tours import exact_mst, exact_mwc, exact_proper_tour, exact_tsp, tour_cost

__all__ = [
    "ExactResult", "advantage_of", "ancestor_tree_matching", "exact_cover_advantage",
    "exact_max_matching", "exact_max_weight_matching", "exact_mst", "exact_mwc",
    "exact_proper_tour", "exact_reconfiguration", "exact_tsp", "g1_lower_bounds", "tour_cost",
]
