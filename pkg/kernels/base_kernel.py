"""
势函数核基类
"""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, List, Optional, Tuple

from .errors import ParameterError
from .geometry import CPoint, require_outside


class BoundaryKind:
    """理想边界元素类型"""
    PUNCTURE = "puncture"    # 穿孔点
    INFINITY = "infinity"    # 无穷远点
    CIRCLE = "circle"        # 圆环边界圆周


@dataclass(frozen=True)
class BoundaryTarget:
    """趋近的边界元素：穿孔点 center，无穷远，或半径为 radius 的圆周"""
    kind: str
    label: str
    center: Optional[CPoint] = None
    radius: Optional[float] = None


INFINITY_TARGET = BoundaryTarget(BoundaryKind.INFINITY, "inf")


class PotentialKernel(ABC):
    """势函数核基类 - E(p, q) = E_q(p)，对固定极点 q 关于 p 调和"""

    name = "kernel"
    # Evans 核关于 (p, q) 对称
    symmetric = False

    @abstractmethod
    def evaluate(self, p: CPoint, q: CPoint) -> float:
        """计算 E_q(p)"""
        pass

    @abstractmethod
    def punctures(self) -> Tuple[CPoint, ...]:
        """定义域的穿孔点"""
        pass

    def contains(self, z: CPoint) -> bool:
        """z 是否在定义域内"""
        return all(z != c for c in self.punctures())

    def check_point(self, z: CPoint) -> None:
        require_outside(z, self.punctures())

    def boundary_distance(self, z: CPoint) -> float:
        """z 到有限边界的距离"""
        distances = [z.distance(c) for c in self.punctures()]
        return min(distances) if distances else math.inf

    def boundary_targets(self) -> List[BoundaryTarget]:
        """理想边界：各穿孔点加上无穷远点"""
        targets = [
            BoundaryTarget(BoundaryKind.PUNCTURE, f"puncture_{c.re:g}", center=c)
            for c in self.punctures()
        ]
        targets.append(INFINITY_TARGET)
        return targets

    def field(self, q: CPoint) -> Callable[[CPoint], float]:
        """固定极点 q 得到的标量场 p -> E_q(p)"""
        return lambda p: self.evaluate(p, q)

    def metric_factor(self, z: CPoint) -> float:
        """基本度量的闭式共形因子 c(z)，没有闭式时报参数错误"""
        raise ParameterError(f"parameter: {self.name} has no closed-form metric")

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.name})"
