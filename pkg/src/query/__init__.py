from src.query.bfs import BfsResult, bfs
from src.query.degree import Degree1Report, degree1_test
from src.query.g1_algorithm import estimate_tsp_g1
from src.query.light import (CTreeForest, LightPeel, SegmentSet, build_ctree_forest, light_peel,
                             max_k_extension, nice_paths, partition_segments)
from src.query.local import LocalResult, local, out_reach, reconfig_cost
from src.query.matching_estimate import MatchingEstimate, matching_size_estimate
from src.query.mst_algorithm import estimate_tsp_with_mst
from src.query.paths import extract_induced_paths, greedy_proper_tour, proper_tour_cost
from src.query.skeleton import (Skeleton, WalkReport, reorganize_estimate, spider_walk_report,
                                weighted_mm_estimate, zeta)

__all__ = [
    "BfsResult", "CTreeForest", "Degree1Report", "LightPeel", "LocalResult", "MatchingEstimate",
    "SegmentSet", "Skeleton", "WalkReport", "bfs", "build_ctree_forest", "degree1_test",
    "estimate_tsp_g1", "estimate_tsp_with_mst", "extract_induced_paths", "greedy_proper_tour",
    "light_peel", "local", "matching_size_estimate", "max_k_extension", "nice_paths", "out_reach",
    "partition_segments", "proper_tour_cost", "reconfig_cost", "reorganize_estimate",
    "spider_walk_report", "weighted_mm_estimate", "zeta",
]
