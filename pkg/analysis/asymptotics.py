"""
势函数在穿孔点与无穷远处的对数增长指数
E_q(p) + b_0 log|p| 在 0 附近有界，E_q(p) - b_inf log|p| 在无穷远附近有界
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from kernels.base_kernel import BoundaryKind, PotentialKernel
from kernels.errors import FitError, ParameterError
from kernels.geometry import ORIGIN, CPoint
from kernels.punctured_kernel import PuncturedParams, PuncturedPotential
from kernels.twice_punctured_kernel import TwicePuncturedParams, TwicePuncturedPotential

logger = logging.getLogger(__name__)


class Domain:
    """支持的平面区域"""
    PUNCTURED = "c0"
    TWICE_PUNCTURED = "c01"
    ANNULUS = "annulus"


DEFAULT_RESIDUAL_CAP = 1e-2
DEFAULT_RAY_ANGLE = 0.7
POINTS_PER_DECADE = 4
DEFAULT_DECADES = 3


@dataclass(frozen=True)
class SlopeFit:
    """势函数值对 log(半径) 的最小二乘直线"""
    slope: float
    intercept: float
    residual: float
    ray_angle: float
    sample_range: Tuple[float, float]


@dataclass(frozen=True)
class ExponentReport:
    """各边界元素的增长指数，b_max 取其中最大者"""
    b0: float
    b1: Optional[float]
    b_inf: float
    b_max: float

    @classmethod
    def build(cls, b0: float, b_inf: float, b1: Optional[float] = None) -> "ExponentReport":
        present = [b0, b_inf] + ([b1] if b1 is not None else [])
        return cls(b0, b1, b_inf, max(present))

    def as_dict(self) -> dict:
        return {"b0": self.b0, "b1": self.b1, "b_inf": self.b_inf, "b_max": self.b_max}


def geometric_radii(start: float, decades: int = DEFAULT_DECADES,
                    per_decade: int = POINTS_PER_DECADE) -> np.ndarray:
    """从 start 出发的等比半径序列；start < 1 时向 0 收缩，否则向外扩张"""
    sign = -1.0 if start < 1.0 else 1.0
    exponents = math.log10(start) + sign * np.arange(decades * per_decade + 1) / per_decade
    return 10.0 ** exponents


def estimate_exponent(potential: Callable[[CPoint], float], center: CPoint, ray_angle: float,
                      radii: Sequence[float], residual_cap: float = DEFAULT_RESIDUAL_CAP) -> SlopeFit:
    """沿射线 center + radius*e^{i*angle} 拟合 E 对 log(radius) 的斜率"""
    radii = np.asarray(radii, dtype=float)
    if radii.size < 2 or np.any(radii <= 0.0):
        raise ParameterError("parameter: radii must be positive and contain at least two samples")
    log_radii = np.log(radii)
    values = np.array([potential(CPoint.polar(radius, ray_angle, center)) for radius in radii])
    slope, intercept = np.polyfit(log_radii, values, 1)
    residual = float(np.max(np.abs(values - (slope * log_radii + intercept))))
    logger.debug("slope fit at %s angle=%.3f: slope=%r residual=%.2e", center, ray_angle, slope, residual)
    if residual > residual_cap:
        raise FitError(f"log-linear fit residual {residual:.3e} exceeds cap {residual_cap:.3e}")
    return SlopeFit(float(slope), float(intercept), residual, ray_angle,
                    (float(radii.min()), float(radii.max())))


def _domain_of(params) -> str:
    if isinstance(params, TwicePuncturedParams):
        return Domain.TWICE_PUNCTURED
    if isinstance(params, PuncturedParams):
        return Domain.PUNCTURED
    raise ParameterError(f"parameter: unsupported parameter record {params!r}")


def b_max_of_family(domain: str, params: Union[PuncturedParams, TwicePuncturedParams]) -> ExponentReport:
    """闭式指数：C\\{0} 为 (k, 1-k)，C\\{0,1} 为 (k, m, 1-k-m)"""
    if _domain_of(params) != domain:
        raise ParameterError(f"parameter: {type(params).__name__} does not belong to domain {domain}")
    if domain == Domain.PUNCTURED:
        return ExponentReport.build(params.k, 1.0 - params.k)
    return ExponentReport.build(params.k, 1.0 - params.k - params.m, b1=params.m)


def _slot_grid(grid_step: float) -> np.ndarray:
    count = math.ceil(1.0 / grid_step) - 1
    slots = np.arange(1, count + 2) * grid_step
    return slots[slots < 1.0]


def minimize_b_max(domain: str, grid_step: float):
    """在容许参数网格上极小化闭式 b_max，平局取字典序最小的参数"""
    if not (0.0 < grid_step <= 0.5):
        raise ParameterError(f"parameter: grid_step={grid_step} must lie in (0, 0.5]")
    slots = _slot_grid(grid_step)
    if domain == Domain.PUNCTURED:
        b_max = np.maximum(slots, 1.0 - slots)
        best = int(np.argmin(np.round(b_max, 12)))
        argmin = {"k": float(slots[best])}
        value = float(b_max[best])
    elif domain == Domain.TWICE_PUNCTURED:
        k, m = np.meshgrid(slots, slots, indexing="ij")
        rest = 1.0 - k - m
        admissible = rest > 1e-12
        b_max = np.maximum(np.maximum(k, m), rest)
        if not admissible.any():
            raise ParameterError(f"parameter: grid_step={grid_step} leaves no admissible (k, m)")
        b_max = np.where(admissible, np.round(b_max, 12), np.inf)
        best = int(np.argmin(b_max))
        argmin = {"k": float(k.flat[best]), "m": float(m.flat[best])}
        value = float(np.maximum(np.maximum(k, m), rest).flat[best])
    else:
        raise ParameterError(f"parameter: unknown domain {domain!r}")
    logger.debug("b_max grid search %s step=%g -> %s, %r", domain, grid_step, argmin, value)
    return argmin, value


def empirical_exponents(kernel: PotentialKernel, q: CPoint, ray_angle: float = DEFAULT_RAY_ANGLE,
                        decades: int = DEFAULT_DECADES) -> ExponentReport:
    """在每个穿孔点和无穷远处回归估计增长指数"""
    field = kernel.field(q)
    b0 = b1 = b_inf = None
    for target in kernel.boundary_targets():
        if target.kind == BoundaryKind.INFINITY:
            fit = estimate_exponent(field, ORIGIN, ray_angle, geometric_radii(1e4, decades))
            b_inf = fit.slope
        elif target.kind == BoundaryKind.PUNCTURE:
            fit = estimate_exponent(field, target.center, ray_angle, geometric_radii(1e-4, decades))
            if target.center == ORIGIN:
                b0 = -fit.slope
            else:
                b1 = -fit.slope
    return ExponentReport.build(b0, b_inf, b1)


def kernel_for(domain: str, params) -> PotentialKernel:
    if domain == Domain.PUNCTURED:
        return PuncturedPotential(params)
    return TwicePuncturedPotential(params)


def exponents_across_poles(domain: str, params, poles: Sequence[CPoint]) -> List[ExponentReport]:
    """不同极点处的回归指数，b_max 与极点无关"""
    kernel = kernel_for(domain, params)
    return [empirical_exponents(kernel, q) for q in poles]
