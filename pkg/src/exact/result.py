from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union


@dataclass
class ExactResult:
    """精确 (或带标记的启发式) 计算结果"""
    value: Union[int, Fraction]
    witness: Any = None
    exact: bool = True
