"""
C\\{0} 上的 Evans-Selberg 势与 Evans 核
e_q(p) = log|p-q| - k log|p| - l log|q|
"""
import math
from dataclasses import dataclass
from typing import Tuple

from .base_kernel import PotentialKernel
from .errors import ParameterError
from .geometry import ORIGIN, CPoint, log_distance, require_distinct, require_outside

PUNCTURES = (ORIGIN,)


def _require_unit_exponent(name: str, value: float) -> None:
    if not (math.isfinite(value) and 0.0 < value < 1.0):
        raise ParameterError(f"parameter: {name}={value} must lie in (0, 1)")


@dataclass(frozen=True)
class PuncturedParams:
    """势函数指数 (k, l)，要求 k, l ∈ (0, 1)"""
    k: float
    l: float

    def __post_init__(self):
        _require_unit_exponent("k", self.k)
        _require_unit_exponent("l", self.l)

    @property
    def is_symmetric(self) -> bool:
        return self.k == self.l


def _check_arguments(p: CPoint, q: CPoint) -> None:
    require_outside(p, PUNCTURES)
    require_outside(q, PUNCTURES)
    require_distinct(p, q)


def evans_selberg_punctured(p: CPoint, q: CPoint, params: PuncturedParams) -> float:
    """C\\{0} 上极点为 q 的 Evans-Selberg 势"""
    _check_arguments(p, q)
    log_p = math.log(p.modulus())
    log_q = math.log(q.modulus())
    return log_distance(p, q) - (params.k * log_p + params.l * log_q)


def evans_kernel_punctured(p: CPoint, q: CPoint, l: float) -> float:
    """C\\{0} 上的 Evans 核 log|p-q| - l log|pq|，关于 (p, q) 严格对称"""
    _require_unit_exponent("l", l)
    _check_arguments(p, q)
    log_p = math.log(p.modulus())
    log_q = math.log(q.modulus())
    # 与 k = l 时的势函数使用同一表达式
    return log_distance(p, q) - (l * log_p + l * log_q)


class PuncturedPotential(PotentialKernel):
    """C\\{0} 上的 Evans-Selberg 势族"""

    name = "evans-selberg/c0"

    def __init__(self, params: PuncturedParams):
        self.params = params

    def evaluate(self, p: CPoint, q: CPoint) -> float:
        return evans_selberg_punctured(p, q, self.params)

    def punctures(self) -> Tuple[CPoint, ...]:
        return PUNCTURES

    def metric_factor(self, z: CPoint) -> float:
        from .metric import fundamental_metric_punctured
        return fundamental_metric_punctured(z, self.params.k + self.params.l)


class PuncturedEvansKernel(PotentialKernel):
    """C\\{0} 上的对称 Evans 核"""

    name = "evans/c0"
    symmetric = True

    def __init__(self, l: float):
        _require_unit_exponent("l", l)
        self.l = l

    def evaluate(self, p: CPoint, q: CPoint) -> float:
        return evans_kernel_punctured(p, q, self.l)

    def punctures(self) -> Tuple[CPoint, ...]:
        return PUNCTURES

    @property
    def params(self) -> PuncturedParams:
        return PuncturedParams(self.l, self.l)

    def metric_factor(self, z: CPoint) -> float:
        from .metric import fundamental_metric_punctured
        return fundamental_metric_punctured(z, 2.0 * self.l)
