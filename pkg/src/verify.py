"""不等式验证套件: 在小规模实例上用精确计算检查各条界

每个套件对一组种子逐一构造实例, 违反时记录种子与实例描述, 可直接复现.
"""
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, Iterable, List, Optional, Set
import logging
import math

import numpy as np
from tqdm import tqdm

from src.config import G1Config, MstQueryConfig
from src.cover import cov_set, mean_eulerian_weight
from src.errors import BadParameters
from src.exact import (advantage_of, exact_cover_advantage, exact_max_weight_matching, exact_mst, exact_mwc,
                       exact_tsp, g1_lower_bounds, tour_cost)
from src.generators import (gen_cycle_metric, gen_multipass_family, gen_onepass_family, gen_random_graph,
                            gen_random_metric, gen_tsp_gadget, multipass_mst, onepass_mst)
from src.metric import Metric, metric_from_graph
from src.oracle import CountingOracle
from src.query import estimate_tsp_g1, estimate_tsp_with_mst, local, reconfig_cost
from src.query.light import build_ctree_forest, light_peel, partition_segments
from src.query.skeleton import Skeleton, zeta
from src.streaming import StreamSession, run_twopass_tsp
from src.tree import RootedTree, SubTree

logger = logging.getLogger(__name__)

LEVELS = {
    "fast": {"cap": 10, "seeds": 20},
    "full": {"cap": 14, "seeds": 100},
}
WALK_CAP = 12
STREAM_CAP = 13
STREAM_FACTOR = 1.96

FAULTS = ("flip-adv-sign",)


@dataclass
class Violation:
    suite: str
    seed: int
    instance: str
    n: int
    message: str

    def reproducer(self) -> str:
        return f"suite={self.suite} seed={self.seed} instance={self.instance} n={self.n}"


@dataclass
class SuiteOutcome:
    name: str
    checks: int = 0
    skipped: int = 0
    violations: List[Violation] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


@dataclass
class VerifyReport:
    level: str
    suites: List[SuiteOutcome]

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.suites)

    @property
    def violations(self) -> List[Violation]:
        return [v for s in self.suites for v in s.violations]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "level": self.level,
            "passed": self.passed,
            "suites": [
                {"name": s.name, "checks": s.checks, "skipped": s.skipped, "passed": s.passed,
                 "violations": [dict(asdict(v), reproducer=v.reproducer()) for v in s.violations]}
                for s in self.suites
            ],
        }


class Probe:
    """单个套件在单个种子上的检查上下文"""

    def __init__(self, outcome: SuiteOutcome, seed: int, instance: str, n: int):
        self.outcome = outcome
        self.seed = seed
        self.instance = instance
        self.n = n

    def check(self, ok: bool, message: str):
        self.outcome.checks += 1
        if not ok:
            self.outcome.violations.append(Violation(self.outcome.name, self.seed, self.instance, self.n, message))

    def skip(self):
        self.outcome.skipped += 1


SuiteFn = Callable[[int, int, Set[str], SuiteOutcome], None]
SUITES: Dict[str, SuiteFn] = {}


def suite(name: str):
    """套件注册装饰器"""
    def decorator(fn: SuiteFn) -> SuiteFn:
        SUITES[name] = fn
        return fn
    return decorator


def _size(seed: int, cap: int, low: int = 4) -> int:
    return low + seed % (cap - low + 1)


def _style(seed: int) -> str:
    return ("graphic", "weighted-closure", "euclidean-rounded")[seed % 3]


def _mst_tree(metric: Metric) -> RootedTree:
    return exact_mst(metric).witness


def _full_candidates(metric: Metric):
    iu, iv = np.triu_indices(metric.n, k=1)
    return [(int(u), int(v), int(metric.dist[u, v])) for u, v in zip(iu, iv)]


def _depth_cuts(tree: RootedTree) -> List[SubTree]:
    """按深度截取的上部子树, 以及根与其第一个孩子组成的单边子树"""
    out = []
    top = max(tree.depth.values())
    for cut in range(1, top):
        out.append(SubTree.from_vertices(tree, [v for v in tree.vertices if tree.depth[v] <= cut]))
    first = tree.children[tree.root][0]
    out.append(SubTree(tree, [first]))
    return out


def _special_advantage(sub: SubTree, metric: Metric):
    return exact_cover_advantage(sub, _full_candidates(metric), "special")


@suite("single_edge_adv")
def _single_edge_adv(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, cap)
    metric = gen_random_metric(n, seed, _style(seed))
    tree = _mst_tree(metric)
    probe = Probe(outcome, seed, f"random-{_style(seed)}", n)
    sign = -1 if "flip-adv-sign" in faults else 1
    for sub in _depth_cuts(tree):
        best = _special_advantage(sub, metric)
        if not best.exact:
            probe.skip()
            continue
        outside = [v for v in tree.vertices if v not in sub.vertex_set]
        for u in sub.vertices:
            for v in outside:
                single = sign * advantage_of(sub, [(u, v, metric(u, v))])
                probe.check(single <= best.value,
                            f"adv(({u},{v}), T')={single} exceeds adv*(T')={best.value} on {sub.vertices}")


@suite("cover_lower_bound")
def _cover_lower_bound(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, cap)
    metric = gen_random_metric(n, seed, _style(seed))
    tree = _mst_tree(metric)
    tsp = exact_tsp(metric).value
    probe = Probe(outcome, seed, f"random-{_style(seed)}", n)
    subs = _depth_cuts(tree) + [light_peel(tree, math.ceil(math.sqrt(n))).top]
    for sub in subs:
        if not sub.edge_ids:
            continue
        best = _special_advantage(sub, metric)
        if not best.exact:
            probe.skip()
            continue
        bound = 2 * sub.weight() - 2 * best.value
        probe.check(tsp >= bound, f"TSP={tsp} below 2w(T')-2adv*(T')={bound} on {sub.vertices}")


@suite("segment_upper_bound")
def _segment_upper_bound(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, cap)
    metric = gen_random_metric(n, seed, _style(seed))
    tree = _mst_tree(metric)
    tsp = exact_tsp(metric).value
    probe = Probe(outcome, seed, f"random-{_style(seed)}", n)
    ell = 1 + seed % 3
    segments = partition_segments(light_peel(tree, ell)).segments
    total = 0
    for segment in segments:
        total += exact_cover_advantage(segment, _full_candidates(metric), "any").value
    bound = 2 * tree.total_weight() - Fraction(total, 2)
    probe.check(tsp <= bound, f"TSP={tsp} above 2MST-sum(adv)/2={bound} with ell={ell}")


@suite("cover_expectation")
def _cover_expectation(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, cap)
    metric = gen_random_metric(n, seed, _style(seed))
    tree = _mst_tree(metric)
    probe = Probe(outcome, seed, f"random-{_style(seed)}", n)
    tree_pairs = {(min(c, p), max(c, p)) for c, p, _ in tree.edges()}
    pairs = [e for e in _full_candidates(metric) if (e[0], e[1]) not in tree_pairs]
    rng = np.random.default_rng(seed)
    count = int(rng.integers(0, min(8, len(pairs)) + 1))
    chosen = [pairs[i] for i in sorted(rng.choice(len(pairs), size=count, replace=False))]
    mean = mean_eulerian_weight(tree, chosen)
    covered = sum(tree.weight[c] for c in cov_set(tree, chosen))
    expected = 2 * tree.total_weight() - Fraction(covered - sum(w for _, _, w in chosen), 2)
    probe.check(mean == expected, f"mean w(H)={mean} differs from {expected} for |E*|={count}")


def _walk_forest(seed: int, cap: int):
    n = _size(seed, min(cap, WALK_CAP), low=6)
    metric = gen_random_metric(n, seed, ("weighted-closure", "euclidean-rounded")[seed % 2])
    tree = _mst_tree(metric)
    forest = build_ctree_forest(light_peel(tree, 1 + seed % 3), c=2)
    return n, metric, tree, forest


def _skeleton_metric(forest, metric: Metric) -> Metric:
    """骨架上的诱导距离 w', 不要求满足三角不等式"""
    matrix = Skeleton(forest).weight_matrix(metric)
    return Metric(matrix.shape[0], matrix)


def _mm_of_l(forest, metric: Metric, alpha: float) -> int:
    weights = forest.weights
    oracle = CountingOracle(metric)
    edges = []
    for i in range(len(weights)):
        for j in range(i + 1, len(weights)):
            z = zeta(forest, i, j, oracle).value
            if z >= (1 - alpha) * (weights[i] + weights[j]):
                edges.append((i, j, weights[i] + weights[j]))
    return exact_max_weight_matching(len(weights), edges).value


@suite("walk_matching")
def _walk_matching(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n, metric, tree, forest = _walk_forest(seed, cap)
    probe = Probe(outcome, seed, "ctree-forest", n)
    if not forest.trees:
        probe.skip()
        return
    induced = _skeleton_metric(forest, metric)
    alpha = MstQueryConfig.desk(n).alpha_match
    mwc = exact_mwc(induced.dist, 0).value
    mst_prime = forest.total_weight()
    probe.check(exact_mst(induced).value == mst_prime,
                "skeleton MST differs from the forest weight")
    mm = _mm_of_l(forest, metric, alpha)
    bound = 2 * mst_prime - (1 - alpha) / 2 * mm
    probe.check(mwc <= bound + 1e-9, f"MWC={mwc} above 2MST(w')-(1-a)/2 MM(L)={bound:.3f}")
    advs = [_special_advantage(f, metric) for f in forest.trees]
    if not all(a.exact for a in advs):
        probe.skip()
        return
    c = forest.c
    low = (2 - 3 * c * (1 - alpha)) * mst_prime - 3 * c * mm - 4 * c * sum(a.value for a in advs)
    probe.check(mwc >= low - 1e-9, f"MWC={mwc} below (2-3c(1-a))MST(w')-3c MM(L)-4c sum adv*(F)={low:.3f}")


@suite("walk_bridge")
def _walk_bridge(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n, metric, tree, forest = _walk_forest(seed, cap)
    probe = Probe(outcome, seed, "ctree-forest", n)
    if not forest.trees:
        probe.skip()
        return
    induced = _skeleton_metric(forest, metric)
    mwc = exact_mwc(induced.dist, 0).value
    tsp = exact_tsp(metric).value
    advs = [_special_advantage(f, metric) for f in forest.trees]
    outside = tree.total_weight() - forest.total_weight()
    probe.check(tsp <= mwc + 2 * outside, f"TSP={tsp} above MWC+2w(T minus F)={mwc + 2 * outside}")
    if not all(a.exact for a in advs):
        probe.skip()
        return
    low = mwc - 2 * sum(a.value for a in advs)
    probe.check(tsp >= low, f"TSP={tsp} below MWC-2 sum adv*(F)={low}")


@suite("graphic_bounds")
def _graphic_bounds(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, cap)
    metric = gen_random_metric(n, seed, "graphic")
    tsp = exact_tsp(metric).value
    probe = Probe(outcome, seed, "random-graphic", n)
    probe.check(n <= tsp <= 2 * n - 2, f"TSP={tsp} outside [n, 2n-2]")
    by_matching, by_leaves = g1_lower_bounds(metric)
    probe.check(tsp >= by_matching, f"TSP={tsp} below 2n-2MM(G1)={by_matching}")
    probe.check(tsp >= by_leaves, f"TSP={tsp} below n+L/2={by_leaves}")


def _disjoint_light_subgraphs(metric: Metric, s: int) -> List[frozenset]:
    """按顶点顺序调用 Local, 收集互不相交的成功结果"""
    oracle = CountingOracle(metric)
    taken: Set[int] = set()
    out = []
    for v in range(metric.n):
        if v in taken:
            continue
        result = local(v, s, oracle)
        if result.success and not (result.vertices & taken):
            out.append(result.vertices)
            taken |= result.vertices
    return out


@suite("reconfiguration_bounds")
def _reconfiguration_bounds(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, cap)
    metric = gen_random_metric(n, seed, "graphic")
    tsp = exact_tsp(metric).value
    probe = Probe(outcome, seed, "random-graphic", n)
    s = max(1, min(math.ceil(math.sqrt(n)), math.ceil(n / 2) - 1))
    subgraphs = _disjoint_light_subgraphs(metric, s)
    oracle = CountingOracle(metric)
    costs = [reconfig_cost(S, oracle) for S in subgraphs]
    if not all(rc.exact for rc in costs):
        probe.skip()
        return
    total_rc = sum(Fraction(rc.value) for rc in costs)
    probe.check(tsp >= n + total_rc / 7, f"TSP={tsp} below n+sum rc/7={float(n + total_rc / 7):.3f}")
    eps = G1Config.desk(n).eps
    leaves = int(((metric.dist == 1).sum(axis=1) == 1).sum())
    covered = sum(len(S) for S in subgraphs)
    if covered >= eps * n / 2 and total_rc <= eps * n / 40 and leaves <= eps * n / 20:
        probe.check(tsp <= (2 - eps / 20) * n, f"TSP={tsp} above (2-eps/20)n with sum rc={total_rc}")
    else:
        probe.skip()


@suite("stream_tsp_sandwich")
def _stream_tsp_sandwich(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, min(cap, STREAM_CAP))
    graph = gen_random_graph(n, seed)
    tsp = exact_tsp(metric_from_graph(graph)).value
    result = run_twopass_tsp(StreamSession(graph, "shuffled", seed))
    probe = Probe(outcome, seed, "random-graph", n)
    probe.check(tsp <= result.value <= STREAM_FACTOR * tsp,
                f"two-pass value {result.value:.2f} ({result.branch}) outside [TSP, 1.96 TSP] for TSP={tsp}")


@suite("lowerbound_closed_forms")
def _lowerbound_closed_forms(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    k, r = 1 + seed % 3, 1 + (seed // 3) % 2
    n_one = k * r + 2 * k * r
    for which in ("Y", "N"):
        metric = gen_onepass_family(k, r, 1, n_one + 1, which)
        probe = Probe(outcome, seed, f"onepass-{which}-k{k}-r{r}", metric.n)
        expected = onepass_mst(k, r, 1, n_one + 1, which)
        got = exact_mst(metric).value
        probe.check(got == expected, f"MST={got}, closed form {expected}")
    N, m = 2 + seed % 3, 2 + seed % 2
    for which in ("Y", "N"):
        metric = gen_multipass_family(N, m, 2 * N * m, which)
        probe = Probe(outcome, seed, f"multipass-{which}-N{N}-m{m}", metric.n)
        expected = multipass_mst(N, m, 2 * N * m, which)
        got = exact_mst(metric).value
        probe.check(got == expected, f"MST={got}, closed form {expected}")
    rng = np.random.default_rng(seed)
    p, r = 2, 1 + seed % 2
    X = rng.integers(0, 2, size=(p, p))
    n = 2 + 2 * p * r
    gadget = gen_tsp_gadget(X.tolist(), 0, 0, r, n * n)
    metric = metric_from_graph(gadget.graph)
    probe = Probe(outcome, seed, f"gadget-r{r}-X{X.ravel().tolist()}", n)
    got = exact_mst(metric).value
    probe.check(got == gadget.mst_weight(), f"gadget MST={got}, closed form {gadget.mst_weight()}")
    if X[0, 0] == 1:
        cost = tour_cost(metric, gadget.witness_tour())
        probe.check(cost <= gadget.witness_bound(), f"witness tour {cost} above {gadget.witness_bound()}")
    elif not X[0].any() and not X[:, 0].any():
        tsp = exact_tsp(metric).value
        probe.check(tsp == 2 * gadget.mst_weight(), f"TSP={tsp}, expected 2MST={2 * gadget.mst_weight()}")


@suite("query_g1_sandwich")
def _query_g1_sandwich(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, cap)
    metric = gen_random_metric(n, seed, "graphic")
    tsp = exact_tsp(metric).value
    estimate = estimate_tsp_g1(CountingOracle(metric), G1Config.desk(n), seed=seed)
    probe = Probe(outcome, seed, "random-graphic", n)
    probe.check(estimate.sandwich(tsp), f"G1 value {float(estimate.value):.3f} ({estimate.branch}) vs TSP={tsp}")


@suite("query_g1_hamiltonian")
def _query_g1_hamiltonian(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, cap, low=8)
    chords = seed % 3
    metric = gen_cycle_metric(n, chords, seed)
    estimate = estimate_tsp_g1(CountingOracle(metric), G1Config.desk(n), seed=seed)
    probe = Probe(outcome, seed, f"cycle-chords{chords}", n)
    probe.check(estimate.sandwich(n), f"G1 value {float(estimate.value):.3f} ({estimate.branch}) vs TSP={n}")
    if chords == 0:
        probe.check(estimate.branch == "tour-short", f"plain cycle took branch {estimate.branch}")


@suite("query_mst_sandwich")
def _query_mst_sandwich(seed: int, cap: int, faults: Set[str], outcome: SuiteOutcome):
    n = _size(seed, cap)
    metric = gen_random_metric(n, seed, _style(seed))
    tree = _mst_tree(metric)
    tsp = exact_tsp(metric).value
    estimate = estimate_tsp_with_mst(CountingOracle(metric), tree, MstQueryConfig.desk(n), seed=seed)
    probe = Probe(outcome, seed, f"random-{_style(seed)}", n)
    probe.check(estimate.sandwich(tsp), f"MST-given value {float(estimate.value):.3f} ({estimate.branch}) "
                                        f"vs TSP={tsp}")


def run_verify(level: str = "fast", seeds: Optional[Iterable[int]] = None, suites: Optional[List[str]] = None,
               inject: Optional[str] = None, progress: bool = False) -> VerifyReport:
    """运行验证套件; inject 注入已知故障以检查套件能发现违反"""
    if level not in LEVELS:
        raise BadParameters(f"unknown verify level {level!r}, expected one of {sorted(LEVELS)}")
    if inject is not None and inject not in FAULTS:
        raise BadParameters(f"unknown fault {inject!r}, expected one of {FAULTS}")
    names = list(SUITES) if suites is None else suites
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise BadParameters(f"unknown suites {unknown}")
    cap = LEVELS[level]["cap"]
    seed_list = list(range(LEVELS[level]["seeds"])) if seeds is None else list(seeds)
    faults = {inject} if inject else set()
    outcomes = []
    for name in tqdm(names, desc=f"verify {level}", disable=not progress):
        outcome = SuiteOutcome(name)
        for seed in seed_list:
            try:
                SUITES[name](seed, cap, faults, outcome)
            except Exception as e:
                logger.error(f"Error in suite {name} at seed {seed}: {str(e)}")
                raise
        logger.info(f"Suite {name}: {outcome.checks} checks, {outcome.skipped} skipped, "
                    f"{len(outcome.violations)} violations")
        outcomes.append(outcome)
    return VerifyReport(level, outcomes)
