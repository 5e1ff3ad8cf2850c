from src.streaming.mst import (MstEstimate, SpanningForestSketch, run_exact_mst_graphstream,
                               run_onepass_mst_estimate)
from src.streaming.session import StorageRegistry, StreamSession
from src.streaming.tsp import TwoPassResult, run_twopass_tsp

__all__ = [
    "MstEstimate", "SpanningForestSketch", "StorageRegistry", "StreamSession", "TwoPassResult",
    "run_exact_mst_graphstream", "run_onepass_mst_estimate", "run_twopass_tsp",
]
