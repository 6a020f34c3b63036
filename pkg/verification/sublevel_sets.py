"""
对称圆环 {e^{-2t} < |p| < e^{2t}} 与水平集 {|p-1|/sqrt|p| < e^t - e^{-t}} 的比较
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Tuple

from scipy.optimize import brentq

from kernels.errors import ParameterError

logger = logging.getLogger(__name__)

IDENTITY_TOL = 1e-10


@dataclass(frozen=True)
class SublevelCrossing:
    """某一辐角上水平集边界的内外两个交点（对数半径）"""
    angle: float
    log_outer: float
    log_inner: float
    discrepancy: float


@dataclass
class SublevelReport:
    t: float
    level: float
    crossings: List[SublevelCrossing] = field(default_factory=list)

    @property
    def max_discrepancy(self) -> float:
        return max((c.discrepancy for c in self.crossings), default=0.0)

    @property
    def identity_exact(self) -> bool:
        """只报告，不作断言"""
        return self.max_discrepancy <= IDENTITY_TOL

    def as_dict(self) -> dict:
        return {
            "t": self.t,
            "level": self.level,
            "max_discrepancy": self.max_discrepancy,
            "identity_exact": self.identity_exact,
            "crossings": [
                {"angle": c.angle, "log_outer": c.log_outer, "log_inner": c.log_inner,
                 "discrepancy": c.discrepancy}
                for c in self.crossings
            ],
        }


def _level_gap(log_radius: float, angle: float, level: float) -> float:
    radius = math.exp(log_radius)
    distance = math.hypot(radius * math.cos(angle) - 1.0, radius * math.sin(angle))
    return distance / math.sqrt(radius) - level


def sublevel_crossings(t: float, angle: float) -> SublevelCrossing:
    """沿辐角 angle 二分求 |p-1|/sqrt|p| = e^t - e^{-t} 的内外交点"""
    level = 2.0 * math.sinh(t)
    # 在 log 半径 = ±(2t + log 4) 处函数值已超过 level
    reach = 2.0 * t + math.log(4.0)
    log_outer = brentq(_level_gap, 0.0, reach, args=(angle, level), xtol=1e-15)
    log_inner = brentq(_level_gap, -reach, 0.0, args=(angle, level), xtol=1e-15)
    discrepancy = max(abs(log_outer - 2.0 * t), abs(log_inner + 2.0 * t))
    return SublevelCrossing(angle, log_outer, log_inner, discrepancy)


def compare_sublevel_sets(t: float, angular_samples: int = 16) -> Tuple[float, SublevelReport]:
    """各采样辐角上 |log(交点半径) - log(圆环半径)| 的最大值"""
    if t < 1.0:
        raise ParameterError(f"parameter: t={t} must be at least 1")
    if angular_samples < 1:
        raise ParameterError("parameter: angular_samples must be positive")
    report = SublevelReport(t, 2.0 * math.sinh(t))
    for index in range(angular_samples):
        report.crossings.append(sublevel_crossings(t, 2.0 * math.pi * index / angular_samples))
    logger.debug("sublevel comparison t=%g: max discrepancy %.3e", t, report.max_discrepancy)
    return report.max_discrepancy, report
