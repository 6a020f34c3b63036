"""
C\\{0,1} 上的 Evans-Selberg 势与 Evans 核
E_q(p) = log|p-q| - k log|p| - l log|q| - m log|p-1| - n log|q-1|
"""
import math
from dataclasses import dataclass
from typing import Tuple

from .base_kernel import PotentialKernel
from .errors import ParameterError
from .geometry import ONE, ORIGIN, CPoint, log_distance, require_distinct, require_outside

PUNCTURES = (ORIGIN, ONE)


def _require_pair(first: Tuple[str, float], second: Tuple[str, float]) -> None:
    """两个指数都为正且和小于 1"""
    for name, value in (first, second):
        if not (math.isfinite(value) and value > 0.0):
            raise ParameterError(f"parameter: {name}={value} must be positive")
    if not first[1] + second[1] < 1.0:
        raise ParameterError(
            f"parameter: {first[0]}+{second[0]}={first[1] + second[1]} must be below 1"
        )


@dataclass(frozen=True)
class TwicePuncturedParams:
    """势函数指数 (k, l, m, n)：k, l, m, n > 0，k+m < 1，l+n < 1"""
    k: float
    l: float
    m: float
    n: float

    def __post_init__(self):
        _require_pair(("k", self.k), ("m", self.m))
        _require_pair(("l", self.l), ("n", self.n))

    @property
    def is_symmetric(self) -> bool:
        return self.k == self.l and self.m == self.n


def _check_arguments(p: CPoint, q: CPoint) -> None:
    require_outside(p, PUNCTURES)
    require_outside(q, PUNCTURES)
    require_distinct(p, q)


def evans_selberg_twice(p: CPoint, q: CPoint, params: TwicePuncturedParams) -> float:
    """C\\{0,1} 上极点为 q 的 Evans-Selberg 势"""
    _check_arguments(p, q)
    p_terms = params.k * math.log(p.modulus()) + params.m * log_distance(p, ONE)
    q_terms = params.l * math.log(q.modulus()) + params.n * log_distance(q, ONE)
    return log_distance(p, q) - (p_terms + q_terms)


def evans_kernel_twice(p: CPoint, q: CPoint, k: float, m: float) -> float:
    """C\\{0,1} 上的 Evans 核 log|p-q| - k log|pq| - m log|(p-1)(q-1)|"""
    _require_pair(("k", k), ("m", m))
    _check_arguments(p, q)
    p_terms = k * math.log(p.modulus()) + m * log_distance(p, ONE)
    q_terms = k * math.log(q.modulus()) + m * log_distance(q, ONE)
    return log_distance(p, q) - (p_terms + q_terms)


class TwicePuncturedPotential(PotentialKernel):
    """C\\{0,1} 上的 Evans-Selberg 势族"""

    name = "evans-selberg/c01"

    def __init__(self, params: TwicePuncturedParams):
        self.params = params

    def evaluate(self, p: CPoint, q: CPoint) -> float:
        return evans_selberg_twice(p, q, self.params)

    def punctures(self) -> Tuple[CPoint, ...]:
        return PUNCTURES

    def metric_factor(self, z: CPoint) -> float:
        from .metric import fundamental_metric_twice
        return fundamental_metric_twice(z, self.params.k + self.params.l, self.params.m + self.params.n)


class TwicePuncturedEvansKernel(PotentialKernel):
    """C\\{0,1} 上的对称 Evans 核"""

    name = "evans/c01"
    symmetric = True

    def __init__(self, k: float, m: float):
        _require_pair(("k", k), ("m", m))
        self.k = k
        self.m = m

    def evaluate(self, p: CPoint, q: CPoint) -> float:
        return evans_kernel_twice(p, q, self.k, self.m)

    def punctures(self) -> Tuple[CPoint, ...]:
        return PUNCTURES

    @property
    def params(self) -> TwicePuncturedParams:
        return TwicePuncturedParams(self.k, self.k, self.m, self.m)

    def metric_factor(self, z: CPoint) -> float:
        from .metric import fundamental_metric_twice
        return fundamental_metric_twice(z, 2.0 * self.k, 2.0 * self.m)
