from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Union
import json

from src.errors import BadParameters

Number = Union[int, float, Fraction]


@dataclass
class Estimate:
    """估计值及其声明的保证区间 [value/upper_factor, value/lower_factor]"""
    value: Number
    branch: str
    lower_factor: float = 1.0
    upper_factor: float = 2.0
    distinct_queries: int = 0
    raw_queries: int = 0
    peak_words: int = 0
    passes: int = 0
    breakdown: Dict[str, int] = field(default_factory=dict)
    details: Dict[str, Any] = field(default_factory=dict)

    def sandwich(self, truth: Number) -> bool:
        """truth <= value <= upper_factor * truth"""
        return truth <= self.value <= self.upper_factor * truth


COLUMNS = [
    "instance", "n", "algorithm", "profile", "params", "value", "exact", "ratio",
    "distinct_queries", "raw_queries", "peak_words", "passes", "branch", "seed", "wall_ms",
]


@dataclass
class RunRecord:
    """一次运行对应的一行 CSV"""
    instance: str
    n: int
    algorithm: str
    profile: str = ""
    params: Dict[str, Any] = field(default_factory=dict)
    value: float = 0.0
    exact: Optional[float] = None
    ratio: Optional[float] = None
    distinct_queries: int = 0
    raw_queries: int = 0
    peak_words: int = 0
    passes: int = 0
    branch: str = ""
    seed: int = 0
    wall_ms: float = 0.0

    def __post_init__(self):
        self.value = float(self.value)
        if self.exact is not None:
            self.exact = float(self.exact)
            self.ratio = self.value / self.exact if self.exact else None
        for name in ("distinct_queries", "raw_queries", "peak_words", "passes"):
            if getattr(self, name) < 0:
                raise BadParameters(f"{name} must be nonnegative")

    @classmethod
    def from_estimate(cls, est: Estimate, instance: str, n: int, algorithm: str, **kwargs) -> "RunRecord":
        return cls(instance=instance, n=n, algorithm=algorithm, value=float(est.value),
                   distinct_queries=est.distinct_queries, raw_queries=est.raw_queries,
                   peak_words=est.peak_words, passes=est.passes, branch=est.branch, **kwargs)

    def as_row(self) -> Dict[str, Any]:
        row = asdict(self)
        row["params"] = json.dumps(self.params, sort_keys=True)
        return {k: row[k] for k in COLUMNS}

    @staticmethod
    def columns() -> List[str]:
        return list(COLUMNS)
