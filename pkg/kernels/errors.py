"""
势函数计算中的异常类型
"""


class KernelError(Exception):
    """所有核函数异常的基类"""


class DomainError(KernelError):
    """点落在定义域之外（穿孔点或圆环外）"""


class PoleError(KernelError):
    """p 与 q 重合，核函数取值为 -inf"""


class ParameterError(KernelError, ValueError):
    """参数不在允许范围内"""


class NumericalError(KernelError):
    """数值过程失败（截断、外推、拟合、求解）"""


class ConvergenceError(NumericalError):
    """外推序列未收敛到给定容差"""


class TruncationError(NumericalError):
    """无穷乘积无法在 J_max 以内截断"""


class FitError(NumericalError):
    """对数斜率回归残差过大"""


class SolveError(NumericalError):
    """有限差分求解器残差未达标"""
