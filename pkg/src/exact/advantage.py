"""子树上的最优覆盖优势

覆盖优势 adv(E', T') = w(cov(E', T')) - w(E'). 候选边先剪枝, 剩余不超过上限时
做分支定界精确求解, 否则用贪心加局部搜索得到下界并标记 exact=False.
"""
from typing import Dict, Iterable, List, Optional, Sequence, Tuple
import logging

from src.errors import BadParameters, NotAnMst
from src.exact.result import ExactResult
from src.tree import SubTree

logger = logging.getLogger(__name__)

EXACT_CAP = 20
DOMINANCE_LIMIT = 2000
RESTRICTIONS = ("any", "special")

Candidate = Tuple[int, int, int]


class MaskWeigher:
    """按字节查表计算比特集合对应的边权和"""

    def __init__(self, weights: Sequence[int]):
        self.tables: List[List[int]] = []
        for start in range(0, len(weights), 8):
            chunk = weights[start:start + 8]
            table = [0] * 256
            for byte in range(1, 256):
                low = (byte & -byte).bit_length() - 1
                table[byte] = table[byte & (byte - 1)] + (chunk[low] if low < len(chunk) else 0)
            self.tables.append(table)

    def __call__(self, mask: int) -> int:
        total = 0
        for table in self.tables:
            if not mask:
                break
            total += table[mask & 255]
            mask >>= 8
        return total


def eligible_endpoints(sub: SubTree, restriction: str) -> frozenset:
    if restriction not in RESTRICTIONS:
        raise BadParameters(f"unknown restriction {restriction!r}, expected one of {RESTRICTIONS}")
    if restriction == "any":
        return sub.vertex_set
    return frozenset(sub.special_vertices())


def candidate_masks(sub: SubTree, candidates: Iterable[Candidate], restriction: str = "any",
                    check_mst: bool = False) -> List[Tuple[int, int, Candidate]]:
    """剪枝后的候选 (覆盖掩码, 权重, 边)"""
    allowed = eligible_endpoints(sub, restriction)
    weigh = MaskWeigher(sub.bit_weights())
    heaviest = sub.bit_weights()
    lightest: Dict[int, Tuple[int, Candidate]] = {}
    for u, v, w in candidates:
        if u == v or (u not in allowed and v not in allowed):
            continue
        mask = sub.cover_mask(u, v)
        if not mask:
            continue
        if check_mst:
            top = max(heaviest[i] for i in _bits(mask))
            if w < top:
                raise NotAnMst(f"pair ({u}, {v}) at distance {w} beats a tree edge of weight {top}")
        if w >= weigh(mask):
            continue
        if mask not in lightest or w < lightest[mask][0]:
            lightest[mask] = (w, (u, v, w))
    pruned = sorted(((mask, w, e) for mask, (w, e) in lightest.items()),
                    key=lambda x: (x[1] - weigh(x[0]), x[2]))
    if len(pruned) <= DOMINANCE_LIMIT:
        kept = []
        for i, (mask, w, e) in enumerate(pruned):
            dominated = any(other != mask and (mask & other) == mask and ow <= w
                            for j, (other, ow, _) in enumerate(pruned) if j != i)
            if not dominated:
                kept.append((mask, w, e))
        pruned = kept
    return pruned


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _branch_and_bound(items: List[Tuple[int, int]], weigh: MaskWeigher) -> Tuple[int, List[int]]:
    best_value, best_pick = 0, []
    count = len(items)

    def visit(i: int, covered: int, cost: int, pick: List[int]):
        nonlocal best_value, best_pick
        value = weigh(covered) - cost
        if value > best_value:
            best_value, best_pick = value, list(pick)
        if i == count:
            return
        optimistic = value
        for mask, w in items[i:]:
            gain = weigh(mask & ~covered) - w
            if gain > 0:
                optimistic += gain
        if optimistic <= best_value:
            return
        mask, w = items[i]
        if mask & ~covered:
            pick.append(i)
            visit(i + 1, covered | mask, cost + w, pick)
            pick.pop()
        visit(i + 1, covered, cost, pick)

    visit(0, 0, 0, [])
    return best_value, best_pick


def _local_search(items: List[Tuple[int, int]], weigh: MaskWeigher) -> Tuple[int, List[int]]:
    def evaluate(chosen: Iterable[int]) -> int:
        covered, cost = 0, 0
        for i in chosen:
            covered |= items[i][0]
            cost += items[i][1]
        return weigh(covered) - cost

    chosen: set = set()
    current = 0
    while True:
        gains = [(evaluate(chosen | {i}) - current, -i) for i in range(len(items)) if i not in chosen]
        if not gains or max(gains)[0] <= 0:
            break
        gain, neg = max(gains)
        chosen.add(-neg)
        current += gain
    improved = True
    rounds = 0
    while improved and rounds < 50:
        improved, rounds = False, rounds + 1
        for i in sorted(chosen):
            value = evaluate(chosen - {i})
            if value > current:
                chosen.discard(i)
                current, improved = value, True
                break
        if improved:
            continue
        outside = [j for j in range(len(items)) if j not in chosen]
        for j in outside:
            value = evaluate(chosen | {j})
            if value > current:
                chosen.add(j)
                current, improved = value, True
                break
        if improved:
            continue
        for i in sorted(chosen):
            for j in outside:
                swapped = (chosen - {i}) | {j}
                value = evaluate(swapped)
                if value > current:
                    chosen, current, improved = swapped, value, True
                    break
            if improved:
                break
    return current, sorted(chosen)


def exact_cover_advantage(sub: SubTree, candidates: Iterable[Candidate], restriction: str = "any",
                          cap: int = EXACT_CAP, check_mst: bool = False) -> ExactResult:
    """max_{E'} w(cov(E', T')) - w(E'), E' 取自满足端点限制的候选边"""
    pruned = candidate_masks(sub, candidates, restriction, check_mst)
    weigh = MaskWeigher(sub.bit_weights())
    items = [(mask, w) for mask, w, _ in pruned]
    if len(items) <= cap:
        value, pick = _branch_and_bound(items, weigh)
        exact = True
    else:
        logger.debug(f"{len(items)} candidates exceed the exact cap {cap}, using local search")
        value, pick = _local_search(items, weigh)
        exact = False
    witness = [pruned[i][2] for i in pick]
    return ExactResult(value, witness, exact)


def advantage_of(sub: SubTree, edges: Sequence[Candidate]) -> int:
    """直接按定义重新计算 w(cov(E', T')) - w(E')"""
    covered = 0
    for u, v, _ in edges:
        covered |= sub.cover_mask(u, v)
    return sub.mask_weight(covered) - sum(w for _, _, w in edges)
