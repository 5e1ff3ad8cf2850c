"""估计过程中使用的异常类型"""


class EstimationError(Exception):
    """所有领域异常的基类"""


class DisconnectedGraph(EstimationError):
    """图不连通"""


class BudgetExceeded(EstimationError):
    """查询预算耗尽"""


class BadParameters(EstimationError, ValueError):
    """生成器或算法参数不合法"""


class TooLarge(EstimationError):
    """实例超出精确算法的规模上限"""


class NotEulerian(EstimationError):
    """多重图存在奇度顶点或不连通"""


class PromiseViolated(EstimationError):
    """输入不满足 G1 连通的承诺"""


class PreconditionUnmet(EstimationError):
    """子程序的前置条件不成立"""


class NotAnMst(EstimationError):
    """给定的树不是最小生成树"""
