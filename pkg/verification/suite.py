"""
按区域组装整套检查：Evans-Selberg 势三条公理、Evans 核条件、
Green 核的边界条件与反例对照
"""
import logging
import math
from dataclasses import replace
from typing import List, Optional, Union

from analysis.asymptotics import Domain, b_max_of_family
from kernels.base_kernel import BoundaryKind, PotentialKernel
from kernels.errors import ParameterError
from kernels.geometry import ONE, ORIGIN, CPoint
from kernels.green_kernel import DEFAULT_TOL, AnnulusGreenKernel, AnnulusSpec
from kernels.metric import fundamental_metric_limit
from kernels.punctured_kernel import PuncturedEvansKernel, PuncturedParams, PuncturedPotential
from kernels.twice_punctured_kernel import (TwicePuncturedEvansKernel, TwicePuncturedParams,
                                            TwicePuncturedPotential)
from .axioms import (DEFAULT_THRESHOLDS, CheckThresholds, DoublePoleControl,
                     check_boundary_divergence, check_boundary_exponent, check_boundary_vanishing,
                     check_interior_sign, check_kernel_boundary_difference,
                     check_pole_regularity, check_symmetry, harmonic_checks)
from .fd_oracle import oracle_refinement
from .reports import Expectation, PropertyCheck, PropertyReport
from .sampling import halton_points, interior_pairs

logger = logging.getLogger(__name__)

# 穿孔平面上的检查位置：极点、Laplace 检查点、第二个极点、度量检查点
PLANE_POLE = CPoint(2.0)
PLANE_PROBE = CPoint(3.0)
PLANE_SECOND_POLE = CPoint(0.0, 2.0)
METRIC_PROBE = CPoint(-1.5, 0.5)

ANNULUS_POLE = ONE
ORACLE_POLE = CPoint(0.9)
ORACLE_DEVIATION_SCALE = 10.0
# 两次加密后偏差至少缩小 3.5 倍
ORACLE_MIN_ORDER = math.log2(3.5)
METRIC_RELATIVE_TOL = 1e-6

SLOT_LOW = 0.05
SLOT_HIGH = 0.95

Params = Union[PuncturedParams, TwicePuncturedParams]


def _prefixed(checks: List[PropertyCheck], prefix: str) -> List[PropertyCheck]:
    return [replace(check, name=f"{prefix}{check.name}") for check in checks]


def _exponent_for(target, exponents) -> float:
    if target.kind == BoundaryKind.INFINITY:
        return exponents.b_inf
    if target.center == ORIGIN:
        return exponents.b0
    return exponents.b1


def check_metric_limit(potential: PotentialKernel, z: CPoint = METRIC_PROBE,
                       threshold: float = METRIC_RELATIVE_TOL) -> PropertyCheck:
    """数值极限与闭式共形因子的相对误差"""
    exact = potential.metric_factor(z)
    numeric = fundamental_metric_limit(z, potential)
    return PropertyCheck("metric_limit", abs(numeric - exact) / exact, threshold, witness=z)


def family_checks(potential: PotentialKernel, domain: str,
                  thresholds: CheckThresholds = DEFAULT_THRESHOLDS) -> List[PropertyCheck]:
    """单个势函数族的公理检查；对称族另加 Evans 核条件"""
    q = PLANE_POLE
    checks = harmonic_checks(potential, q, PLANE_PROBE, thresholds=thresholds)
    checks.append(check_pole_regularity(potential, q, threshold=thresholds.pole_oscillation))
    for target in potential.boundary_targets():
        checks.append(check_boundary_divergence(potential, q, target, bar=thresholds.divergence_bar))

    exponents = b_max_of_family(domain, potential.params)
    for target in potential.boundary_targets():
        checks.append(check_boundary_exponent(potential, q, target, _exponent_for(target, exponents),
                                              threshold=thresholds.stabilization))
    checks.append(check_kernel_boundary_difference(potential, q, PLANE_SECOND_POLE,
                                                   threshold=thresholds.stabilization))
    if potential.symmetric:
        pairs = [(CPoint(0.5, 0.25), CPoint(-1.0, 3.0)), (CPoint(2.0, -1.0), CPoint(0.1, 0.1)),
                 (PLANE_POLE, PLANE_SECOND_POLE)]
        checks.append(check_symmetry(potential, pairs))
    checks.append(check_metric_limit(potential))
    return checks


def _control_checks(domain: str) -> List[PropertyCheck]:
    punctures = (ORIGIN, ONE) if domain == Domain.TWICE_PUNCTURED else (ORIGIN,)
    control = DoublePoleControl(punctures)
    check = check_pole_regularity(control, PLANE_POLE, name="control_pole_regularity",
                                  expect=Expectation.FAIL)
    return [check]


def plane_suite(params: Params, thresholds: CheckThresholds = DEFAULT_THRESHOLDS) -> PropertyReport:
    """C\\{0} 或 C\\{0,1}：势函数族、对应的 Evans 核族和反例对照"""
    report = PropertyReport()
    if isinstance(params, TwicePuncturedParams):
        domain = Domain.TWICE_PUNCTURED
        potential = TwicePuncturedPotential(params)
        kernel = TwicePuncturedEvansKernel(params.k, params.m)
    elif isinstance(params, PuncturedParams):
        domain = Domain.PUNCTURED
        potential = PuncturedPotential(params)
        kernel = PuncturedEvansKernel(params.l)
    else:
        raise ParameterError(f"parameter: unsupported parameter record {params!r}")

    for check in _prefixed(family_checks(potential, domain, thresholds), "evans_selberg."):
        report.add(check)
    for check in _prefixed(family_checks(kernel, domain, thresholds), "evans."):
        report.add(check)
    for check in _control_checks(domain):
        report.add(check)
    return report


def oracle_checks(r: float, q: CPoint = ORACLE_POLE, n: int = 64) -> List[PropertyCheck]:
    """有限差分对照：2n 网格上的偏差及 n -> 2n 的观测阶"""
    coarse, fine, order = oracle_refinement(r, q, n)
    spacing = (-2.0 * math.log(r) / (2 * n)) ** 2 + (2.0 * math.pi / (2 * n)) ** 2
    logger.debug("oracle deviations %.3e -> %.3e, order %.3f", coarse, fine, order)
    return [
        PropertyCheck("oracle_sup_deviation", fine, ORACLE_DEVIATION_SCALE * spacing, witness=q),
        PropertyCheck("oracle_order", max(0.0, ORACLE_MIN_ORDER - order), 0.0, witness=q),
    ]


def annulus_suite(r: float, tol: float = DEFAULT_TOL, include_oracle: bool = False,
                  thresholds: CheckThresholds = DEFAULT_THRESHOLDS) -> PropertyReport:
    """圆环 Green 核：调和、极点、对称、边界为零、内部为负，以及边界发散的反例"""
    annulus = AnnulusSpec(r, tol)
    kernel = AnnulusGreenKernel(annulus)
    q = ANNULUS_POLE
    report = PropertyReport()

    # 截断层数在差分模板内变化会放大到 tol/h^2，Laplace 检查用更细的截断
    fine_kernel = AnnulusGreenKernel(AnnulusSpec(r, min(tol, 1e-15)))
    probe = CPoint(min(2.0, 0.5 * (1.0 + annulus.outer_radius)))
    for check in harmonic_checks(fine_kernel, q, probe, thresholds=thresholds):
        report.add(check)
    report.add(check_pole_regularity(kernel, q, threshold=thresholds.pole_oscillation))
    report.add(check_symmetry(kernel, interior_pairs(20, 0, r), threshold=2.0 * tol))
    report.add(check_boundary_vanishing(kernel, CPoint(1.0, 0.2), threshold=thresholds.boundary_vanishing))
    report.add(check_interior_sign(kernel))
    for target in kernel.boundary_targets():
        check = check_boundary_divergence(kernel, q, target, bar=thresholds.divergence_bar,
                                          expect=Expectation.FAIL)
        report.add(replace(check, name=f"control_{check.name}"))
    if include_oracle:
        for check in oracle_checks(r):
            report.add(check)
    return report


def run_axiom_suite(domain: str, params: Optional[Params] = None, r: Optional[float] = None,
                    tol: float = DEFAULT_TOL, include_oracle: bool = False,
                    thresholds: CheckThresholds = DEFAULT_THRESHOLDS) -> PropertyReport:
    if domain in (Domain.PUNCTURED, Domain.TWICE_PUNCTURED):
        if params is None:
            raise ParameterError(f"parameter: domain {domain} needs potential exponents")
        report = plane_suite(params, thresholds)
    elif domain == Domain.ANNULUS:
        if r is None:
            raise ParameterError("parameter: domain annulus needs --r")
        report = annulus_suite(r, tol, include_oracle, thresholds)
    else:
        raise ParameterError(f"parameter: unknown domain {domain!r}")
    for check in report.checks:
        logger.debug("%s: measured=%r threshold=%r expect=%s", check.name, check.measured,
                     check.threshold, check.expect)
    return report


def random_parameter_draws(domain: str, count: int = 20, seed: int = 0) -> List[Params]:
    """容许区域内的准随机参数，每个指数至少 0.05，成对之和至多 0.95"""
    draws = []
    if domain == Domain.PUNCTURED:
        for u in halton_points(count, 2, seed):
            k, l = SLOT_LOW + (SLOT_HIGH - SLOT_LOW) * u
            draws.append(PuncturedParams(float(k), float(l)))
    elif domain == Domain.TWICE_PUNCTURED:
        span = SLOT_HIGH - 2.0 * SLOT_LOW
        for u in halton_points(count, 4, seed):
            k = SLOT_LOW + span * u[0]
            m = SLOT_LOW + (SLOT_HIGH - SLOT_LOW - k) * u[1]
            l = SLOT_LOW + span * u[2]
            n = SLOT_LOW + (SLOT_HIGH - SLOT_LOW - l) * u[3]
            draws.append(TwicePuncturedParams(float(k), float(l), float(m), float(n)))
    else:
        raise ParameterError(f"parameter: unknown domain {domain!r}")
    return draws
