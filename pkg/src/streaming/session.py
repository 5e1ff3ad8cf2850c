"""流模型: 按序输出数据项, 统计遍数与峰值存储 (机器字)"""
from typing import Dict, Iterator, List, Tuple, Union
import logging

import numpy as np

from src.errors import BadParameters
from src.metric import Metric, WeightedGraph

logger = logging.getLogger(__name__)

ORDERS = ("shuffled", "ascending", "descending")

Item = Tuple[int, int, int]


class StorageRegistry:
    """算法状态的存储登记处, 记录当前与峰值字数"""

    def __init__(self):
        self._usage: Dict[str, int] = {}
        self.current = 0
        self.peak = 0
        self.pass_peaks: List[int] = []

    def update(self, name: str, words: int):
        self.current += words - self._usage.get(name, 0)
        self._usage[name] = words
        if self.current > self.peak:
            self.peak = self.current
        if self.pass_peaks and self.current > self.pass_peaks[-1]:
            self.pass_peaks[-1] = self.current

    def usage(self, name: str) -> int:
        return self._usage.get(name, 0)

    def begin_pass(self):
        self.pass_peaks.append(self.current)

    def dict(self, name: str, words_per_entry: int = 2) -> "MeteredDict":
        return MeteredDict(self, name, words_per_entry)

    def list(self, name: str, words_per_entry: int = 1) -> "MeteredList":
        return MeteredList(self, name, words_per_entry)


class MeteredDict(dict):
    """每次增删条目后向登记处报告字数 (仅支持下列修改方法)"""

    def __init__(self, registry: StorageRegistry, name: str, words_per_entry: int):
        super().__init__()
        self._registry, self._name, self._words = registry, name, words_per_entry

    def _report(self):
        self._registry.update(self._name, len(self) * self._words)

    def __setitem__(self, key, value):
        super().__setitem__(key, value)
        self._report()

    def __delitem__(self, key):
        super().__delitem__(key)
        self._report()

    def pop(self, key, *default):
        value = super().pop(key, *default)
        self._report()
        return value

    def clear(self):
        super().clear()
        self._report()


class MeteredList(list):
    def __init__(self, registry: StorageRegistry, name: str, words_per_entry: int):
        super().__init__()
        self._registry, self._name, self._words = registry, name, words_per_entry

    def _report(self):
        self._registry.update(self._name, len(self) * self._words)

    def append(self, item):
        super().append(item)
        self._report()

    def extend(self, items):
        super().extend(items)
        self._report()

    def replace(self, items):
        super().clear()
        super().extend(items)
        self._report()

    def clear(self):
        super().clear()
        self._report()


class StreamSession:
    """度量流 (每个无序点对每遍恰好一次) 或图流 (每条边每遍一次)"""

    def __init__(self, source: Union[Metric, WeightedGraph], order: str = "shuffled", seed: int = 0):
        if order not in ORDERS:
            raise BadParameters(f"unknown stream order {order!r}, expected one of {ORDERS}")
        self.source = source
        self.order = order
        self.seed = seed
        self.pass_count = 0
        self.storage = StorageRegistry()
        self._items = self._arrange()

    @property
    def n(self) -> int:
        return self.source.n

    @property
    def is_metric(self) -> bool:
        return isinstance(self.source, Metric)

    @property
    def peak_words(self) -> int:
        return self.storage.peak

    def _arrange(self) -> np.ndarray:
        if self.is_metric:
            iu, iv = np.triu_indices(self.n, k=1)
            items = np.stack([iu, iv, self.source.dist[iu, iv]], axis=1)
        else:
            items = np.array(self.source.edges, dtype=np.int64).reshape(-1, 3)
        if self.order == "shuffled":
            items = items[np.random.default_rng(self.seed).permutation(len(items))]
        else:
            ranked = np.lexsort((items[:, 1], items[:, 0], items[:, 2]))
            items = items[ranked if self.order == "ascending" else ranked[::-1]]
        return items

    def stream(self) -> Iterator[Item]:
        """开始新的一遍并逐项输出 (u, v, w)"""
        self.pass_count += 1
        self.storage.begin_pass()
        logger.debug(f"Pass {self.pass_count} over {len(self._items)} items ({self.order})")
        for u, v, w in self._items.tolist():
            yield u, v, w

    def __len__(self) -> int:
        return len(self._items)
