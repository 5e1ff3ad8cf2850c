"""命令行入口

退出码: 0 成功, 2 参数错误, 3 验证失败.
"""
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
import argparse
import json
import logging
import sys

from src.analysis.scaling import ScalingAnalyzer
from src.bench import SUITES as BENCH_SUITES
from src.bench import BenchOptions, run_bench
from src.config import PROFILES, Config
from src.errors import BadParameters, EstimationError
from src.estimate import Estimate, RunRecord
from src.exact import exact_mst, exact_tsp
from src.exact.tours import TSP_CAP
from src.generators import InstanceSpec
from src.metric import Metric, WeightedGraph, as_metric, read_instance, validate_metric, write_graph, write_metric
from src.plugin_manager import default_manager
from src.streaming import StreamSession, run_exact_mst_graphstream
from src.streaming.session import ORDERS
from src.tree import read_tree
from src.utils.exporter import ResultExporter, write_records
from src.utils.logger import setup_logger
from src.verify import FAULTS, LEVELS, run_verify

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_BAD_ARGS = 2
EXIT_VERIFY_FAILED = 3

KINDS = ("random", "graph", "onepass", "multipass", "gadget", "coi", "path", "star", "cycle")


def _common() -> argparse.ArgumentParser:
    """各子命令共享的全局参数, 默认 None 表示沿用配置文件"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="random seed")
    common.add_argument("--out", type=Path, default=None, help="output file")
    common.add_argument("--profile", choices=PROFILES, default=None, help="parameter profile")
    common.add_argument("--format", choices=("text", "csv"), default="text", help="result format")
    common.add_argument("--config", type=Path, default=None, help="YAML or 'key = value' config file")
    common.add_argument("--log-level", default=None, help="logging level")
    common.add_argument("--log-file", type=Path, default=None, help="also log to this file")
    return common


def _parse_matrix(text: str) -> List[List[int]]:
    """'01,10' -> [[0, 1], [1, 0]]"""
    rows = [[int(ch) for ch in row.strip()] for row in text.split(",") if row.strip()]
    if not rows:
        raise BadParameters(f"empty matrix {text!r}")
    return rows


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="sublinear-tsp",
                                     description="MST and TSP cost estimation in streaming and query models.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate an instance file")
    gen.add_argument("--kind", choices=KINDS, default="random")
    gen.add_argument("--n", type=int, default=10)
    gen.add_argument("--style", default="graphic")
    gen.add_argument("--which", choices=("Y", "N"), default="Y")
    for name in ("k", "r", "p", "L", "N", "m", "M", "chords"):
        gen.add_argument(f"--{name}", type=int, default=0)
    gen.add_argument("--i-star", type=int, default=0)
    gen.add_argument("--j-star", type=int, default=0)
    gen.add_argument("--x", type=_parse_matrix, default=None, help="gadget matrix rows, e.g. 01,10")

    oracle = sub.add_parser("oracle", parents=[common], help="exact MST and TSP of an instance")
    oracle.add_argument("file", type=Path)

    mst = sub.add_parser("run-stream-mst", parents=[common], help="one-pass MST estimate on a metric stream")
    mst.add_argument("--alpha", type=float, default=None)
    mst.add_argument("--cboost", type=float, default=None)
    mst.add_argument("--order", choices=ORDERS, default=None)
    mst.add_argument("file", type=Path)

    tsp = sub.add_parser("run-stream-tsp", parents=[common], help="two-pass TSP estimate on a graph stream")
    tsp.add_argument("--alpha", type=float, default=None)
    tsp.add_argument("--beta", type=float, default=None)
    tsp.add_argument("--order", choices=ORDERS, default=None)
    tsp.add_argument("file", type=Path)

    g1 = sub.add_parser("run-query-g1", parents=[common], help="query-model TSP estimate, G1 promise")
    g1.add_argument("file", type=Path)

    qm = sub.add_parser("run-query-mst", parents=[common], help="query-model TSP estimate with a given MST")
    qm.add_argument("--mst", default="derive", help="tree file (child parent weight) or 'derive'")
    qm.add_argument("file", type=Path)

    bench = sub.add_parser("bench", parents=[common], help="run an experiment suite and write CSV")
    bench.add_argument("suite", choices=sorted(BENCH_SUITES))
    bench.add_argument("--seeds", type=int, default=10, help="number of seeds, starting at --seed")
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--n", type=int, nargs="*", default=[], help="instance sizes")
    bench.add_argument("--no-exact", action="store_true", help="skip exact reference values")
    bench.add_argument("--fit", action="store_true", help="fit log(distinct queries) against log(n)")

    verify = sub.add_parser("verify", parents=[common], help="run the inequality suites")
    verify.add_argument("--level", choices=sorted(LEVELS), default="fast")
    verify.add_argument("--seeds", type=int, default=None, help="override the number of seeds")
    verify.add_argument("--suite", action="append", default=None, help="run only this suite")
    verify.add_argument("--inject", choices=FAULTS, default=None, help="inject a known fault")
    return parser


def _config(args) -> Config:
    config = Config.from_file(str(args.config)) if args.config else Config()
    return config.merged(seed=args.seed, profile=args.profile, log_level=args.log_level,
                         cboost=getattr(args, "cboost", None), stream_order=getattr(args, "order", None),
                         num_workers=getattr(args, "workers", None))


def _emit(lines: Sequence[str], out: Optional[Path]):
    text = "\n".join(lines) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _estimate_lines(estimate: Estimate) -> List[str]:
    lines = [f"value={float(estimate.value)}", f"branch={estimate.branch}",
             f"distinct_queries={estimate.distinct_queries}", f"raw_queries={estimate.raw_queries}",
             f"peak_words={estimate.peak_words}", f"passes={estimate.passes}"]
    for key, value in sorted(estimate.breakdown.items()):
        lines.append(f"queries.{key}={value}")
    for key, value in sorted(estimate.details.items()):
        lines.append(f"{key}={value}")
    return lines


def _report(args, estimate: Estimate, algorithm: str, config: Config, params: Dict[str, Any], n: int):
    if args.format == "csv":
        record = RunRecord.from_estimate(estimate, args.file.stem, n, algorithm, profile=config.profile,
                                         params=params, seed=config.seed)
        text = write_records([record])
        _emit([text.rstrip("\n")], args.out)
    else:
        _emit(_estimate_lines(estimate), args.out)


def cmd_gen(args, config: Config) -> int:
    spec = InstanceSpec(args.kind, n=args.n, seed=config.seed, style=args.style, which=args.which, k=args.k,
                        r=args.r, p=args.p, L=args.L, N=args.N, m=args.m, M=args.M, X=args.x,
                        i_star=args.i_star, j_star=args.j_star, chords=args.chords)
    instance = spec.build()
    out = args.out or Path(f"{spec.label()}.txt")
    if isinstance(instance, Metric):
        write_metric(instance, out)
        violations = validate_metric(instance)
        status = "valid" if not violations else " ".join(str(v) for v in violations[:10])
        print(f"wrote metric n={instance.n} to {out}: {status}")
    else:
        write_graph(instance, out)
        print(f"wrote graph n={instance.n} m={instance.m} to {out}: connected={instance.is_connected()}")
    return EXIT_OK


def cmd_oracle(args, config: Config) -> int:
    instance = read_instance(args.file)
    lines = [f"n={instance.n}"]
    if isinstance(instance, WeightedGraph):
        lines.append(f"m={instance.m}")
        lines.append(f"connected={instance.is_connected()}")
        lines.append(f"mst_stream={run_exact_mst_graphstream(StreamSession(instance, 'ascending'))}")
    else:
        lines.append(f"violations={len(validate_metric(instance))}")
    metric = as_metric(instance)
    lines.append(f"mst={exact_mst(metric).value}")
    if metric.n <= TSP_CAP:
        lines.append(f"tsp={exact_tsp(metric).value}")
    _emit(lines, args.out)
    return EXIT_OK


def cmd_run(args, config: Config) -> int:
    manager = default_manager(config.plugins_dir)
    instance = read_instance(args.file)
    options: Dict[str, Any] = {}
    kwargs: Dict[str, Any] = {}
    if args.command == "run-stream-mst":
        kind, name = "streaming", "onepass-mst"
        options = {"alpha": args.alpha, "cboost": config.cboost, "order": config.stream_order}
    elif args.command == "run-stream-tsp":
        kind, name = "streaming", "twopass-tsp"
        options = {"alpha": args.alpha if args.alpha is not None else config.tsp_alpha,
                   "beta": args.beta if args.beta is not None else config.tsp_beta,
                   "order": config.stream_order}
    elif args.command == "run-query-g1":
        kind, name = "query", "g1-connected"
        options = {"profile": config.profile}
    else:
        kind, name = "query", "mst-given"
        options = {"profile": config.profile, "mst": args.mst}
        if args.mst != "derive":
            kwargs["tree"] = read_tree(args.mst)
    options = {k: v for k, v in options.items() if v is not None}
    plugin = manager.create_plugin(kind, name, options)
    estimate = plugin.estimate(instance, seed=config.seed, **kwargs)
    _report(args, estimate, name, config, {k: v for k, v in options.items() if k != "mst"}, instance.n)
    return EXIT_OK


def cmd_bench(args, config: Config) -> int:
    options = BenchOptions(profile=config.profile, sizes=tuple(args.n), plugins_dir=config.plugins_dir,
                           exact=not args.no_exact)
    seeds = range(config.seed, config.seed + args.seeds)
    records = run_bench(args.suite, seeds, options, workers=config.num_workers, progress=args.out is not None)
    if args.out is None:
        sys.stdout.write(write_records(records))
    else:
        ResultExporter(args.out.parent).export_to_csv(records, args.out.stem)
    if args.fit:
        analyzer = ScalingAnalyzer()
        summary = analyzer.summary(analyzer.fit_query_scaling(records))
        logger.info(f"Scaling fit for {args.suite}: slope {summary['slope']:.3f}")
        if args.out is not None:
            ResultExporter(args.out.parent).export_to_json(summary, f"{args.out.stem}_scaling")
        else:
            print(json.dumps(summary, indent=2), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args, config: Config) -> int:
    seeds = range(args.seeds) if args.seeds is not None else None
    report = run_verify(args.level, seeds=seeds, suites=args.suite, inject=args.inject,
                        progress=args.out is not None)
    for outcome in report.suites:
        status = "ok" if outcome.passed else "FAIL"
        print(f"{outcome.name}: {status} ({outcome.checks} checks, {outcome.skipped} skipped)")
        for violation in outcome.violations[:5]:
            print(f"  {violation.reproducer()}: {violation.message}")
    if args.out is not None:
        ResultExporter(args.out.parent).export_to_json(report.to_dict(), args.out.stem)
    return EXIT_OK if report.passed else EXIT_VERIFY_FAILED


COMMANDS = {
    "gen": cmd_gen,
    "oracle": cmd_oracle,
    "run-stream-mst": cmd_run,
    "run-stream-tsp": cmd_run,
    "run-query-g1": cmd_run,
    "run-query-mst": cmd_run,
    "bench": cmd_bench,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config(args)
    except (BadParameters, OSError) as e:
        print(f"error: {str(e)}", file=sys.stderr)
        return EXIT_BAD_ARGS
    setup_logger("src", args.log_file, config.log_level.upper())
    try:
        return COMMANDS[args.command](args, config)
    except (BadParameters, FileNotFoundError) as e:
        logger.error(f"Error in {args.command}: {str(e)}")
        return EXIT_BAD_ARGS
    except EstimationError as e:
        logger.error(f"Error in {args.command}: {str(e)}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
