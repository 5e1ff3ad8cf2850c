from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Dict, Optional
import logging
import math

import yaml

from src.errors import BadParameters

logger = logging.getLogger(__name__)

PROFILES = ("desk", "paper")
# 2 - f * eps_hat 在桌面 eps_hat = 0.1 下取 1.5
DESK_TOUR_FACTOR = 5.0


@dataclass
class Config:
    """运行配置"""
    output_dir: Path = Path("results")
    log_level: str = "INFO"
    num_workers: int = 1
    seed: int = 0
    profile: str = "desk"
    cboost: float = 100.0
    stream_order: str = "shuffled"
    tsp_alpha: float = 0.715
    tsp_beta: float = 0.285
    plugins_dir: Path = Path("config/plugins")

    def __post_init__(self):
        self.output_dir = Path(self.output_dir)
        self.plugins_dir = Path(self.plugins_dir)
        if self.profile not in PROFILES:
            raise BadParameters(f"unknown profile {self.profile!r}, expected one of {PROFILES}")
        if self.num_workers < 1:
            raise BadParameters("num_workers must be at least 1")

    @classmethod
    def from_yaml(cls, yaml_path: str) -> 'Config':
        """从YAML文件加载配置"""
        with open(yaml_path, 'r') as f:
            config_dict = yaml.safe_load(f) or {}
        return cls(**cls._known(config_dict))

    @classmethod
    def from_file(cls, path: str) -> 'Config':
        """YAML 或扁平的 key = value 文本"""
        if Path(path).suffix in (".yaml", ".yml"):
            return cls.from_yaml(path)
        values: Dict[str, Any] = {}
        with open(path, 'r') as f:
            for number, line in enumerate(f, 1):
                line = line.split("#", 1)[0].strip()
                if not line:
                    continue
                if "=" not in line:
                    raise BadParameters(f"{path}:{number}: expected 'key = value'")
                key, raw = (part.strip() for part in line.split("=", 1))
                values[key] = yaml.safe_load(raw) if raw else None
        return cls(**cls._known(values))

    @classmethod
    def _known(cls, values: Dict[str, Any]) -> Dict[str, Any]:
        names = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - names)
        if unknown:
            logger.warning(f"Ignoring unknown config keys: {unknown}")
        return {k: v for k, v in values.items() if k in names}

    def merged(self, **overrides) -> 'Config':
        """命令行参数覆盖文件中的值 (None 表示未给出)"""
        return replace(self, **{k: v for k, v in self._known(overrides).items() if v is not None})


def _ceil_sqrt(n: int) -> int:
    return max(1, math.ceil(math.sqrt(n)))


@dataclass
class G1Config:
    """G1 连通承诺下的查询算法参数"""
    eps: float
    eps_hat: float
    q: int
    ell: int
    h: int
    alpha_bfs: float
    profile: str = "desk"
    tour_factor: float = 100.0
    degree1_samples: Optional[int] = None
    local_samples: Optional[int] = None
    bfs_samples: Optional[int] = None
    matching_samples: Optional[int] = None

    def __post_init__(self):
        for name in ("eps", "eps_hat", "q", "ell", "h", "alpha_bfs", "tour_factor"):
            if getattr(self, name) <= 0:
                raise BadParameters(f"{name} must be positive, got {getattr(self, name)}")
        if not (0 < self.eps < 1 and 0 < self.eps_hat < 1):
            raise BadParameters("eps and eps_hat must lie in (0, 1)")
        if self.tour_factor < 1:
            raise BadParameters(f"tour_factor must be at least 1, got {self.tour_factor}")
        if self.profile == "desk" and self.h < 2:
            raise BadParameters(f"desk profile needs h >= 2, got {self.h}")

    @classmethod
    def desk(cls, n: int, **overrides) -> 'G1Config':
        ell = _ceil_sqrt(n)
        base = cls(eps=0.05, eps_hat=0.1, q=max(1, min(50 * n, n * n)), ell=ell,
                   h=max(2, math.ceil(ell / 10)), alpha_bfs=20.0, profile="desk",
                   tour_factor=DESK_TOUR_FACTOR)
        return replace(base, **overrides)

    @classmethod
    def paper(cls, n: int, **overrides) -> 'G1Config':
        eps_hat = 2.0 ** -40
        ell = math.ceil(100 * math.sqrt(n))
        base = cls(eps=2.0 ** -100, eps_hat=eps_hat, q=math.ceil(n / eps_hat ** 2), ell=ell,
                   h=max(1, math.ceil(eps_hat * ell / 200)), alpha_bfs=10 / eps_hat, profile="paper")
        return replace(base, **overrides)

    @classmethod
    def for_profile(cls, profile: str, n: int, **overrides) -> 'G1Config':
        if profile not in PROFILES:
            raise BadParameters(f"unknown profile {profile!r}")
        return getattr(cls, profile)(n, **overrides)


@dataclass
class MstQueryConfig:
    """给定 MST 的查询算法参数"""
    ell: int
    eps: float
    c: int
    c0: float
    alpha_match: float
    eps_match: float
    k: int
    profile: str = "desk"
    segment_samples: Optional[int] = None
    matching_samples: Optional[int] = None

    def __post_init__(self):
        if not 0 < self.eps < 1:
            raise BadParameters(f"eps must lie in (0, 1), got {self.eps}")
        if not 0 < self.alpha_match < 1:
            raise BadParameters(f"alpha_match must lie in (0, 1), got {self.alpha_match}")
        if self.ell < 1 or self.c < 1 or self.k < 0 or self.c0 <= 0 or self.eps_match <= 0:
            raise BadParameters("ell, c and c0 must be positive and k nonnegative")

    @property
    def eps1(self) -> float:
        return self.eps / 4

    @property
    def eps2(self) -> float:
        return self.eps / (4 * self.c * self.c0)

    @classmethod
    def desk(cls, n: int, **overrides) -> 'MstQueryConfig':
        eps = 0.02
        base = cls(ell=_ceil_sqrt(n), eps=eps, c=4, c0=100.0, alpha_match=1 - eps, eps_match=0.05,
                   k=math.ceil(4 * math.sqrt(n)), profile="desk")
        return replace(base, **overrides)

    @classmethod
    def paper(cls, n: int, **overrides) -> 'MstQueryConfig':
        c0 = 100.0
        eps = 2.0 ** -100 / c0
        # 1 - eps 在浮点数下等于 1
        base = cls(ell=_ceil_sqrt(n), eps=eps, c=800, c0=c0, alpha_match=1 - 2.0 ** -50, eps_match=eps,
                   k=math.ceil(100 * math.sqrt(n)), profile="paper")
        return replace(base, **overrides)

    @classmethod
    def for_profile(cls, profile: str, n: int, **overrides) -> 'MstQueryConfig':
        if profile not in PROFILES:
            raise BadParameters(f"unknown profile {profile!r}")
        return getattr(cls, profile)(n, **overrides)
