"""
对称圆环 A_r = {r < |z| < 1/r} 上的负 Green 核
无穷乘积按每次求值的 (p, q) 截断，尾项误差有严格上界
"""
import logging
import math
from dataclasses import dataclass
from typing import List, Tuple

from .base_kernel import BoundaryKind, BoundaryTarget, PotentialKernel
from .errors import DomainError, ParameterError, TruncationError
from .geometry import CPoint, log_distance, require_distinct

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
DEFAULT_J_MAX = 10 ** 6


@dataclass(frozen=True)
class AnnulusSpec:
    """对称圆环 {r < |z| < 1/r} 及核函数截断容差"""
    r: float
    tol: float = DEFAULT_TOL
    j_max: int = DEFAULT_J_MAX

    def __post_init__(self):
        if not (math.isfinite(self.r) and 0.0 < self.r < 1.0):
            raise ParameterError(f"parameter: r={self.r} must lie in (0, 1)")
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise ParameterError(f"parameter: tol={self.tol} must be positive")
        if self.j_max < 1:
            raise ParameterError(f"parameter: j_max={self.j_max} must be at least 1")

    @classmethod
    def from_t(cls, t: float, tol: float = DEFAULT_TOL, j_max: int = DEFAULT_J_MAX) -> "AnnulusSpec":
        """r(t) = e^{-2t}"""
        if not (math.isfinite(t) and t > 0.0):
            raise ParameterError(f"parameter: t={t} must be positive")
        return cls(math.exp(-2.0 * t), tol, j_max)

    @property
    def t(self) -> float:
        return -0.5 * math.log(self.r)

    @property
    def T(self) -> float:
        """T = log(e^t - e^{-t})，写成 t + log(1 - e^{-2t}) 避免抵消"""
        t = self.t
        return t + math.log1p(-math.exp(-2.0 * t))

    @property
    def outer_radius(self) -> float:
        return 1.0 / self.r

    def contains(self, z: CPoint, allow_boundary: bool = False) -> bool:
        radius = z.modulus()
        if allow_boundary:
            return self.r <= radius <= self.outer_radius
        return self.r < radius < self.outer_radius


@dataclass(frozen=True)
class TruncationPlan:
    """乘积因子个数 J 及被舍弃尾项对核函数值的上界"""
    J: int
    tail_bound: float


def _moduli_spread(p: CPoint, q: CPoint) -> float:
    """M = max(|p/q|, |q/p|, |pq|, 1/|pq|)"""
    ratio = p.modulus() / q.modulus()
    product = p.modulus() * q.modulus()
    return max(ratio, 1.0 / ratio, product, 1.0 / product)


def _tail_bound(spread: float, r: float, J: int) -> Tuple[float, bool]:
    """第 J 项之后的尾项上界 8*M*r^{4J+2}/(1-r^4)，以及 |log(1-x)| <= 2|x| 是否适用"""
    leading = spread * r ** (4 * J + 2)
    return 8.0 * leading / (1.0 - r ** 4), leading <= 0.5


def truncation_plan(p: CPoint, q: CPoint, annulus: AnnulusSpec) -> TruncationPlan:
    """满足尾项上界 <= tol 的最小 J"""
    spread = _moduli_spread(p, q)
    r = annulus.r
    # 解 M * r^{4J+2} <= min(1/2, tol*(1-r^4)/8) 得到 J 的初值
    target = min(0.5, annulus.tol * (1.0 - r ** 4) / 8.0) / spread
    J = max(1, math.ceil((math.log(target) / math.log(r) - 2.0) / 4.0))
    # 浮点误差修正：先回退再逐步前进
    while J > 1:
        bound, valid = _tail_bound(spread, r, J - 1)
        if not (valid and bound <= annulus.tol):
            break
        J -= 1
    while J <= annulus.j_max:
        bound, valid = _tail_bound(spread, r, J)
        if valid and bound <= annulus.tol:
            logger.debug("truncation plan r=%g M=%.3g tol=%g: J=%d tail_bound=%.3e", r, spread, annulus.tol, J, bound)
            return TruncationPlan(J, bound)
        J += 1
    raise TruncationError(
        f"no J <= {annulus.j_max} certifies tol={annulus.tol} for r={r}, M={spread}"
    )


def _check_annulus_point(z: CPoint, annulus: AnnulusSpec, allow_boundary: bool) -> None:
    if not annulus.contains(z, allow_boundary):
        raise DomainError(f"domain: point {z} lies outside the annulus r={annulus.r}")


def green_negative(p: CPoint, q: CPoint, annulus: AnnulusSpec, allow_boundary: bool = False) -> float:
    """A_r 上的负 Green 核 g(p, q)

    g = (1/2)log r - log|p|log|q|/(2 log r) + log|p-q| - (1/2)log|pq|
        + sum_j [log|1-(p/q)r^{4j}| + log|1-(q/p)r^{4j}|
                 - log|1-p*conj(q)*r^{4j-2}| - log|1-r^{4j-2}/(p*conj(q))|]
    """
    _check_annulus_point(p, annulus, allow_boundary)
    _check_annulus_point(q, annulus, allow_boundary)
    require_distinct(p, q)

    plan = truncation_plan(p, q, annulus)
    r = annulus.r
    log_r = math.log(r)
    log_p = math.log(p.modulus())
    log_q = math.log(q.modulus())

    zp, zq = p.to_complex(), q.to_complex()
    ratio = zp / zq
    inverse_ratio = zq / zp
    # 反射因子取 p * conj(q)，保证两条边界圆上严格为零
    reflected = zp * zq.conjugate()
    inverse_reflected = 1.0 / reflected

    product_sum = 0.0
    r2 = r * r
    r4 = r2 * r2
    even_power = 1.0      # r^{4j}
    odd_power = 1.0 / r2  # r^{4j-2}
    for _ in range(plan.J):
        even_power *= r4
        odd_power *= r4
        product_sum += (
            math.log(abs(1.0 - ratio * even_power))
            + math.log(abs(1.0 - inverse_ratio * even_power))
            - math.log(abs(1.0 - reflected * odd_power))
            - math.log(abs(1.0 - inverse_reflected * odd_power))
        )

    value = (
        0.5 * log_r
        - (log_p * log_q) / (2.0 * log_r)
        + log_distance(p, q)
        - 0.5 * (log_p + log_q)
        + product_sum
    )
    return value


def nakai_shifted_green(p: CPoint, q: CPoint, t: float, tol: float = DEFAULT_TOL) -> float:
    """G_t(p, q) + log(e^t - e^{-t})，圆环取 {e^{-2t} < |z| < e^{2t}}"""
    annulus = AnnulusSpec.from_t(t, tol)
    return green_negative(p, q, annulus) + annulus.T


def normalization_residual(t: float) -> float:
    """(1/2)log(e^{-2t}) + log(e^t - e^{-t}) = log(1 - e^{-2t})"""
    if not (math.isfinite(t) and t > 0.0):
        raise ParameterError(f"parameter: t={t} must be positive")
    return math.log1p(-math.exp(-2.0 * t))


class AnnulusGreenKernel(PotentialKernel):
    """对称圆环上的负 Green 核：边界上为零，内部非正"""

    name = "green/annulus"
    symmetric = True

    def __init__(self, annulus: AnnulusSpec, allow_boundary: bool = False):
        self.annulus = annulus
        self.allow_boundary = allow_boundary

    def evaluate(self, p: CPoint, q: CPoint) -> float:
        return green_negative(p, q, self.annulus, self.allow_boundary)

    def punctures(self) -> Tuple[CPoint, ...]:
        return ()

    def contains(self, z: CPoint) -> bool:
        return self.annulus.contains(z, self.allow_boundary)

    def check_point(self, z: CPoint) -> None:
        _check_annulus_point(z, self.annulus, self.allow_boundary)

    def boundary_distance(self, z: CPoint) -> float:
        radius = z.modulus()
        return min(radius - self.annulus.r, self.annulus.outer_radius - radius)

    def boundary_targets(self) -> List[BoundaryTarget]:
        return [
            BoundaryTarget(BoundaryKind.CIRCLE, "inner_circle", radius=self.annulus.r),
            BoundaryTarget(BoundaryKind.CIRCLE, "outer_circle", radius=self.annulus.outer_radius),
        ]
