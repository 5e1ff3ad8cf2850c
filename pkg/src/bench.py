"""实验套件: 每个种子生成实例, 运行估计插件并与精确值比较, 输出 RunRecord 行"""
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple
import logging
import time

from tqdm import tqdm

from src.errors import BadParameters
from src.estimate import Estimate, RunRecord
from src.exact import exact_mst, exact_tsp
from src.generators import (InstanceSpec, gen_multipass_family, gen_onepass_family, gen_random_graph,
                            gen_random_metric, gen_tsp_gadget, multipass_mst, onepass_mst)
from src.metric import metric_from_graph
from src.plugin_manager import EstimatorPlugin, default_manager
from src.utils.performance import ProcessingPool

logger = logging.getLogger(__name__)

STREAM_ALPHAS = (2, 4, 8, 16)
SANDWICH_MAX_N = 13
QUERY_MAX_N = 14


@dataclass
class BenchOptions:
    """套件参数; sizes 为空时用各套件的默认规模"""
    profile: str = "desk"
    sizes: Tuple[int, ...] = ()
    plugins_dir: Optional[Path] = None
    exact: bool = True
    overrides: Dict[str, Any] = field(default_factory=dict)


@lru_cache(maxsize=None)
def _manager(plugins_dir: Optional[Path]):
    return default_manager(plugins_dir)


def _plugin(options: BenchOptions, kind: str, name: str, **config) -> EstimatorPlugin:
    return _manager(options.plugins_dir).create_plugin(kind, name, {**options.overrides, **config})


def _timed(plugin: EstimatorPlugin, instance, seed: int, **kwargs) -> Tuple[Estimate, float]:
    start = time.perf_counter()
    estimate = plugin.estimate(instance, seed=seed, **kwargs)
    return estimate, (time.perf_counter() - start) * 1000


def _pick_size(seed: int, sizes: Tuple[int, ...], low: int, high: int) -> int:
    if sizes:
        return sizes[seed % len(sizes)]
    return low + seed % (high - low + 1)


SuiteFn = Callable[[int, BenchOptions], List[RunRecord]]
SUITES: Dict[str, SuiteFn] = {}


def bench_suite(name: str):
    """套件注册装饰器"""
    def decorator(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn
    return decorator


@bench_suite("stream-mst-sweep")
def _stream_mst_sweep(seed: int, options: BenchOptions) -> List[RunRecord]:
    n = options.sizes[seed % len(options.sizes)] if options.sizes else 512
    metric = gen_random_metric(n, seed, "weighted-closure")
    truth = exact_mst(metric).value if options.exact else None
    rows = []
    for alpha in STREAM_ALPHAS:
        plugin = _plugin(options, "streaming", "onepass-mst", alpha=float(alpha))
        estimate, wall = _timed(plugin, metric, seed)
        rows.append(RunRecord.from_estimate(estimate, f"random-weighted-closure-n{n}", n, "onepass-mst",
                                            params={"alpha": alpha, "cboost": plugin.config["cboost"]},
                                            exact=truth, seed=seed, wall_ms=wall))
    return rows


@bench_suite("stream-tsp-sandwich")
def _stream_tsp_sandwich(seed: int, options: BenchOptions) -> List[RunRecord]:
    n = _pick_size(seed, options.sizes, 4, SANDWICH_MAX_N)
    graph = gen_random_graph(n, seed)
    truth = exact_tsp(metric_from_graph(graph)).value if options.exact else None
    plugin = _plugin(options, "streaming", "twopass-tsp")
    estimate, wall = _timed(plugin, graph, seed)
    return [RunRecord.from_estimate(estimate, f"random-graph-n{n}", n, "twopass-tsp",
                                    params={"alpha": plugin.config["alpha"], "beta": plugin.config["beta"]},
                                    exact=truth, seed=seed, wall_ms=wall)]


def _query_rows(seed: int, options: BenchOptions, name: str, style: str, **config) -> List[RunRecord]:
    n = _pick_size(seed, options.sizes, 4, QUERY_MAX_N)
    metric = gen_random_metric(n, seed, style)
    truth = exact_tsp(metric).value if options.exact else None
    plugin = _plugin(options, "query", name, profile=options.profile, **config)
    estimate, wall = _timed(plugin, metric, seed)
    return [RunRecord.from_estimate(estimate, f"random-{style}-n{n}", n, name, profile=options.profile,
                                    params={"style": style}, exact=truth, seed=seed, wall_ms=wall)]


@bench_suite("query-g1")
def _query_g1(seed: int, options: BenchOptions) -> List[RunRecord]:
    return _query_rows(seed, options, "g1-connected", "graphic")


@bench_suite("query-mst")
def _query_mst(seed: int, options: BenchOptions) -> List[RunRecord]:
    style = ("graphic", "weighted-closure", "euclidean-rounded")[seed % 3]
    return _query_rows(seed, options, "mst-given", style, mst="derive")


def _closed_form_row(spec: InstanceSpec, value: int, expected: int, seed: int, wall: float) -> RunRecord:
    return RunRecord(instance=spec.label(), n=spec.n, algorithm="exact-mst", params=spec.params(),
                     value=value, exact=expected, branch="closed-form", seed=seed, wall_ms=wall)


@bench_suite("lowerbound-families")
def _lowerbound_families(seed: int, options: BenchOptions) -> List[RunRecord]:
    rows = []
    k, r = 1 + seed % 3, 1 + (seed // 3) % 3
    for which in ("Y", "N"):
        n = k * r + 2 * k * r
        start = time.perf_counter()
        metric = gen_onepass_family(k, r, 1, n + 1, which)
        value = exact_mst(metric).value
        spec = InstanceSpec("onepass", n=n, which=which, k=k, r=r, p=1, L=n + 1)
        rows.append(_closed_form_row(spec, value, onepass_mst(k, r, 1, n + 1, which), seed,
                                     (time.perf_counter() - start) * 1000))
    N, m = 2 + seed % 4, 2 + seed % 3
    for which in ("Y", "N"):
        start = time.perf_counter()
        metric = gen_multipass_family(N, m, 2 * N * m, which)
        value = exact_mst(metric).value
        spec = InstanceSpec("multipass", n=N * m, which=which, N=N, m=m, M=2 * N * m)
        rows.append(_closed_form_row(spec, value, multipass_mst(N, m, 2 * N * m, which), seed,
                                     (time.perf_counter() - start) * 1000))
    r = 1 + seed % 2
    n = 2 + 4 * r
    start = time.perf_counter()
    gadget = gen_tsp_gadget([[0, 1], [1, 0]], 0, 0, r, n * n)
    value = exact_mst(metric_from_graph(gadget.graph)).value
    spec = InstanceSpec("gadget", n=n, r=r, p=2, L=n * n, X=[[0, 1], [1, 0]])
    rows.append(_closed_form_row(spec, value, gadget.mst_weight(), seed, (time.perf_counter() - start) * 1000))
    return rows


def _run_one(task: Tuple[str, int, BenchOptions]) -> List[RunRecord]:
    name, seed, options = task
    try:
        return SUITES[name](seed, options)
    except Exception as e:
        logger.error(f"Error in suite {name} at seed {seed}: {str(e)}")
        raise


def run_bench(name: str, seeds: Iterable[int], options: Optional[BenchOptions] = None,
              workers: int = 1, progress: bool = False) -> List[RunRecord]:
    """运行套件; 结果按种子排序, 与完成顺序无关"""
    if name not in SUITES:
        raise BadParameters(f"unknown suite {name!r}, expected one of {sorted(SUITES)}")
    options = options or BenchOptions()
    tasks = [(name, seed, options) for seed in sorted(set(seeds))]
    if workers > 1:
        batches = ProcessingPool(workers).map_batch(_run_one, tasks)
    else:
        batches = [_run_one(t) for t in tqdm(tasks, desc=name, disable=not progress)]
    records = [r for batch in batches for r in batch]
    records.sort(key=lambda r: r.seed)
    logger.info(f"Suite {name}: {len(records)} rows from {len(tasks)} seeds")
    return records
