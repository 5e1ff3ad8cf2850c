from typing import List

import numpy as np


def spawn_rngs(seed: int, count: int) -> List[np.random.Generator]:
    """由一个根种子按调用顺序派生 count 个独立随机源"""
    children = np.random.SeedSequence(seed).spawn(count)
    return [np.random.default_rng(child) for child in children]


def child_seed(seed: int, index: int) -> int:
    """第 index 个子种子 (64 位整数), 供进程池中的独立试验使用"""
    child = np.random.SeedSequence(seed).spawn(index + 1)[index]
    return int(child.generate_state(1, dtype=np.uint64)[0])
