"""
Evans-Selberg 势定义中的三条公理及 Evans 核条件的数值检查
(i) 关于 p 调和；(ii) 减去 log|p-q| 后在 q 附近有界；(iii) 趋于理想边界时 -> +inf
"""
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from kernels.base_kernel import BoundaryKind, BoundaryTarget, PotentialKernel
from kernels.errors import DomainError, ParameterError
from kernels.geometry import ORIGIN, UNIT_DIRECTIONS, CPoint, log_distance
from kernels.green_kernel import AnnulusGreenKernel
from kernels.punctured_kernel import PUNCTURES as C0_PUNCTURES
from .reports import Expectation, PropertyCheck
from .sampling import interior_pairs

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckThresholds:
    """各项检查的默认阈值"""
    harmonic: float = 1e-5
    refinement_low: float = 2.5
    refinement_high: float = 6.0
    pole_oscillation: float = 1e-6
    divergence_bar: float = 5.0
    stabilization: float = 1e-3
    boundary_vanishing: float = 1e-4


DEFAULT_THRESHOLDS = CheckThresholds()


class DoublePoleControl(PotentialKernel):
    """反例对照：log|p-q|^2，在 q 处是二重对数极点"""

    name = "control/double-pole"

    def __init__(self, punctures: Tuple[CPoint, ...] = C0_PUNCTURES):
        self._punctures = tuple(punctures)

    def evaluate(self, p: CPoint, q: CPoint) -> float:
        self.check_point(p)
        return 2.0 * log_distance(p, q)

    def punctures(self) -> Tuple[CPoint, ...]:
        return self._punctures


def check_harmonic(field: Callable[[CPoint], float], at: CPoint, h: float,
                   singularities: Iterable[CPoint] = ()) -> Tuple[float, float]:
    """五点差分 Laplace 估计及 h 与 h/2 两次估计之比"""
    for point in singularities:
        if at.distance(point) <= 2.0 * h:
            raise DomainError(f"domain: singularity {point} within 2h of {at}")

    def laplacian(step: float) -> float:
        center = field(at)
        ring = sum(field(at.shifted(step, u)) for u in UNIT_DIRECTIONS)
        return (ring - 4.0 * center) / (step * step)

    estimate = laplacian(h)
    refined = laplacian(h / 2.0)
    ratio = estimate / refined if refined != 0.0 else math.inf
    return estimate, ratio


def harmonic_checks(kernel: PotentialKernel, q: CPoint, at: CPoint, h: float = 1e-3,
                    thresholds: CheckThresholds = DEFAULT_THRESHOLDS, prefix: str = "") -> List[PropertyCheck]:
    estimate, ratio = check_harmonic(kernel.field(q), at, h, kernel.punctures() + (q,))
    if thresholds.refinement_low <= ratio <= thresholds.refinement_high:
        outside = 0.0
    elif math.isfinite(ratio):
        outside = min(abs(ratio - thresholds.refinement_low), abs(ratio - thresholds.refinement_high))
    else:
        outside = math.inf
    return [
        PropertyCheck(f"{prefix}harmonic_laplacian", abs(estimate), thresholds.harmonic, witness=at),
        PropertyCheck(f"{prefix}harmonic_refinement", outside, 0.0, witness=at),
    ]


def default_pole_steps(kernel: PotentialKernel, q: CPoint, levels: int = 8) -> List[float]:
    h0 = 1e-2 * min(1.0, kernel.boundary_distance(q))
    return [h0 * 4.0 ** (-n) for n in range(levels)]


def check_pole_regularity(potential: PotentialKernel, q: CPoint,
                          h_sequence: Optional[Sequence[float]] = None,
                          threshold: float = DEFAULT_THRESHOLDS.pole_oscillation,
                          name: str = "pole_regularity",
                          expect: str = Expectation.PASS) -> PropertyCheck:
    """E_q(q + h*u) - log h 对四个方向平均后，最后两层的差"""
    if h_sequence is None:
        h_sequence = default_pole_steps(potential, q)
    if len(h_sequence) < 2 or any(h <= 0.0 for h in h_sequence):
        raise ParameterError("parameter: h_sequence needs at least two positive steps")
    if any(b >= a for a, b in zip(h_sequence, h_sequence[1:])):
        raise ParameterError("parameter: step sizes must be strictly decreasing")
    averages = []
    for h in h_sequence:
        values = [potential.evaluate(q.shifted(h, u), q) - math.log(h) for u in UNIT_DIRECTIONS]
        averages.append(sum(values) / len(values))
    measured = abs(averages[-1] - averages[-2])
    logger.debug("%s at %s: averages=%s", name, q, averages)
    return PropertyCheck(name, measured, threshold, witness=(q, h_sequence[-1]), expect=expect)


def approach_path(target: BoundaryTarget, samples: int = 60) -> List[CPoint]:
    """沿虚轴方向趋于边界元素的点列"""
    if target.kind == BoundaryKind.PUNCTURE:
        center = target.center
        return [CPoint(center.re, center.im + eps) for eps in np.logspace(-1, -150, samples)]
    if target.kind == BoundaryKind.INFINITY:
        return [CPoint(0.0, radius) for radius in np.logspace(1, 150, samples)]
    # 圆周：从内侧趋近
    deltas = np.logspace(-1, -12, 12)
    if target.radius < 1.0:
        return [CPoint(0.0, target.radius * (1.0 + delta)) for delta in deltas]
    return [CPoint(0.0, target.radius * (1.0 - delta)) for delta in deltas]


def check_boundary_divergence(potential: PotentialKernel, q: CPoint, target: BoundaryTarget,
                              path: Optional[Sequence[CPoint]] = None,
                              bar: float = DEFAULT_THRESHOLDS.divergence_bar,
                              expect: str = Expectation.PASS) -> PropertyCheck:
    """沿路径的取值严格递增且最终超过首值 bar；measured 为差额"""
    if path is None:
        path = approach_path(target)
    values = [potential.evaluate(p, q) for p in path]
    increasing = all(b > a for a, b in zip(values, values[1:]))
    shortfall = bar - (values[-1] - values[0]) if increasing else math.inf
    return PropertyCheck(f"boundary_divergence_{target.label}", shortfall, 0.0,
                         witness=path[-1], expect=expect)


def check_kernel_boundary_difference(kernel: PotentialKernel, q: CPoint, q2: CPoint,
                                     targets: Optional[Sequence[BoundaryTarget]] = None,
                                     threshold: float = DEFAULT_THRESHOLDS.stabilization) -> PropertyCheck:
    """E(p, q) - E(p, q') 在每个边界元素附近有界且趋于稳定"""
    if q == q2:
        raise DomainError("domain: the two poles must differ")
    measured, witness = 0.0, None
    for target in targets if targets is not None else kernel.boundary_targets():
        path = approach_path(target)
        differences = [kernel.evaluate(p, q) - kernel.evaluate(p, q2) for p in path]
        if not all(math.isfinite(d) for d in differences):
            return PropertyCheck("kernel_boundary_difference", math.inf, threshold, witness=(q, q2))
        change = abs(differences[-1] - differences[-2])
        if change >= measured:
            measured, witness = change, path[-1]
    return PropertyCheck("kernel_boundary_difference", measured, threshold, witness=witness)


def check_boundary_exponent(kernel: PotentialKernel, q: CPoint, target: BoundaryTarget,
                            exponent: float,
                            threshold: float = DEFAULT_THRESHOLDS.stabilization) -> PropertyCheck:
    """补偿增长项后有界：穿孔点 c 处 E + b log|p-c|，无穷远处 E - b log|p|"""
    path = approach_path(target)
    compensated = []
    for p in path:
        if target.kind == BoundaryKind.INFINITY:
            compensated.append(kernel.evaluate(p, q) - exponent * math.log(p.modulus()))
        else:
            compensated.append(kernel.evaluate(p, q) + exponent * log_distance(p, target.center))
    measured = abs(compensated[-1] - compensated[-2])
    return PropertyCheck(f"boundary_exponent_{target.label}", measured, threshold, witness=path[-1])


def check_symmetry(kernel: PotentialKernel, pairs: Sequence[Tuple[CPoint, CPoint]],
                   threshold: float = 0.0) -> PropertyCheck:
    measured, witness = 0.0, None
    for p, q in pairs:
        gap = abs(kernel.evaluate(p, q) - kernel.evaluate(q, p))
        if gap >= measured:
            measured, witness = gap, (p, q)
    return PropertyCheck("symmetry", measured, threshold, witness=witness)


def check_boundary_vanishing(kernel: AnnulusGreenKernel, q: CPoint, delta: float = 1e-6,
                             angles: int = 8,
                             threshold: float = DEFAULT_THRESHOLDS.boundary_vanishing) -> PropertyCheck:
    """距两条边界圆相对距离 delta 处 |g| 的最大值"""
    r = kernel.annulus.r
    measured, witness = 0.0, None
    for index in range(angles):
        angle = 2.0 * math.pi * (index + 0.5) / angles
        for radius in (r * (1.0 + delta), (1.0 / r) * (1.0 - delta)):
            p = CPoint.polar(radius, angle)
            value = abs(kernel.evaluate(p, q))
            if value >= measured:
                measured, witness = value, p
    return PropertyCheck("boundary_vanishing", measured, threshold, witness=witness)


def check_interior_sign(kernel: AnnulusGreenKernel, count: int = 1000, seed: int = 0) -> PropertyCheck:
    """准随机内点对上 g < 0；measured 为最大值"""
    measured, witness = -math.inf, None
    for p, q in interior_pairs(count, seed, kernel.annulus.r):
        if p == q:
            continue
        value = kernel.evaluate(p, q)
        if value > measured:
            measured, witness = value, (p, q)
    return PropertyCheck("interior_sign", measured, 0.0, witness=witness)
