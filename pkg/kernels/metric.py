"""
基本度量 c(z)|dz|^2
闭式：C\\{0} 上 |z|^{-s}，C\\{0,1} 上 |z|^{-s}|z-1|^{-j}
数值：c(z) = exp lim_{q->z} (E_q(z) - log|z-q|)
"""
import logging
import math
from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .base_kernel import PotentialKernel
from .errors import ConvergenceError, ParameterError
from .extrapolation import richardson_tableau
from .geometry import ONE, ORIGIN, UNIT_DIRECTIONS, CPoint, log_distance, require_outside
from .punctured_kernel import PuncturedParams
from .twice_punctured_kernel import TwicePuncturedParams

logger = logging.getLogger(__name__)

# 默认外推设置：h_0 = 1e-2 * dist(z, 边界)，共 6 层，逐层减半
DEFAULT_STEP_FRACTION = 1e-2
DEFAULT_LEVELS = 6
DEFAULT_LIMIT_TOL = 1e-8


@dataclass(frozen=True)
class MetricParams:
    """度量指数：C\\{0} 上 s ∈ (0, 2)；C\\{0,1} 上 s, j > 0 且 s + j < 2"""
    s: float
    j: Optional[float] = None

    def __post_init__(self):
        if self.j is None:
            if not (math.isfinite(self.s) and 0.0 < self.s < 2.0):
                raise ParameterError(f"parameter: s={self.s} must lie in (0, 2)")
            return
        if not (self.s > 0.0 and self.j > 0.0):
            raise ParameterError(f"parameter: s={self.s}, j={self.j} must be positive")
        if not self.s + self.j < 2.0:
            raise ParameterError(f"parameter: s+j={self.s + self.j} must be below 2")


def metric_params_for(params: Union[PuncturedParams, TwicePuncturedParams]) -> MetricParams:
    """势函数族诱导的度量指数 s = k + l（以及 j = m + n）"""
    if isinstance(params, TwicePuncturedParams):
        return MetricParams(params.k + params.l, params.m + params.n)
    return MetricParams(params.k + params.l)


def fundamental_metric_punctured(z: CPoint, s: float) -> float:
    """C\\{0} 上的共形因子 |z|^{-s}"""
    MetricParams(s)
    require_outside(z, (ORIGIN,))
    return z.modulus() ** (-s)


def fundamental_metric_twice(z: CPoint, s: float, j: float) -> float:
    """C\\{0,1} 上的共形因子 |z|^{-s}|z-1|^{-j}"""
    MetricParams(s, j)
    require_outside(z, (ORIGIN, ONE))
    return z.modulus() ** (-s) * z.distance(ONE) ** (-j)


def default_h_sequence(z: CPoint, kernel: PotentialKernel, levels: int = DEFAULT_LEVELS) -> list:
    h0 = DEFAULT_STEP_FRACTION * kernel.boundary_distance(z)
    return [h0 * 2.0 ** (-n) for n in range(levels)]


def _validate_h_sequence(h_sequence: Sequence[float], bound: float) -> None:
    if len(h_sequence) < 2:
        raise ParameterError("parameter: h_sequence needs at least two steps")
    if any(h <= 0.0 for h in h_sequence):
        raise ParameterError("parameter: step sizes must be positive")
    if any(b >= a for a, b in zip(h_sequence, h_sequence[1:])):
        raise ParameterError("parameter: step sizes must be strictly decreasing")
    if not h_sequence[0] < bound / 2.0:
        raise ParameterError(f"parameter: largest step {h_sequence[0]} exceeds half the boundary distance")


def fundamental_metric_limit(z: CPoint, potential: PotentialKernel,
                             h_sequence: Optional[Sequence[float]] = None,
                             tol: float = DEFAULT_LIMIT_TOL) -> float:
    """数值计算 exp lim_{q->z}(E_q(z) - log|z-q|)

    极点取 q = z + h*u，u 取 {1, i, -1, -i} 四个方向求平均，
    再对 h_n = h_0 * 2^{-n} 做 Richardson 外推。
    """
    potential.check_point(z)
    if h_sequence is None:
        h_sequence = default_h_sequence(z, potential)
    _validate_h_sequence(h_sequence, potential.boundary_distance(z))

    samples = []
    for h in h_sequence:
        total = 0.0
        for u in UNIT_DIRECTIONS:
            q = z.shifted(h, u)
            total += potential.evaluate(z, q) - log_distance(z, q)
        samples.append(total / len(UNIT_DIRECTIONS))

    # 步长比来自序列本身，默认序列为 2
    ratio = h_sequence[0] / h_sequence[1]
    tableau = richardson_tableau(ratio, samples)
    limit, previous = tableau[-1][0], tableau[-2][-1]
    logger.debug("metric limit at %s: samples=%s limit=%r", z, samples, limit)
    if abs(limit - previous) > tol:
        raise ConvergenceError(
            f"metric limit at {z} did not settle: |{limit} - {previous}| > {tol}"
        )
    return math.exp(limit)
