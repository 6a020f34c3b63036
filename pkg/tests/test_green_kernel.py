import math

import pytest

from kernels.errors import DomainError, ParameterError, PoleError, TruncationError
from kernels.geometry import CPoint
from kernels.green_kernel import (AnnulusGreenKernel, AnnulusSpec, green_negative,
                                  nakai_shifted_green, normalization_residual, truncation_plan)
from verification.axioms import check_boundary_vanishing, check_interior_sign, check_symmetry
from verification.sampling import interior_pairs


@pytest.mark.parametrize("r", [0.0, 1.0, -0.2, float("nan")])
def test_annulus_radius_validated(r):
    with pytest.raises(ParameterError):
        AnnulusSpec(r)


def test_annulus_from_t():
    annulus = AnnulusSpec.from_t(2.0)
    assert annulus.r == math.exp(-4.0)
    assert annulus.t == pytest.approx(2.0)
    assert annulus.outer_radius == pytest.approx(math.exp(4.0))


@pytest.mark.parametrize("t", [1.0, 2.0, 5.0, 10.0])
def test_normalization_identity(t):
    annulus = AnnulusSpec.from_t(t)
    assert abs(0.5 * math.log(annulus.r) + annulus.T - math.log1p(-math.exp(-2.0 * t))) <= 1e-15
    assert abs(normalization_residual(t) - math.log(1.0 - math.exp(-2.0 * t))) <= 1e-15


def test_normalization_residual_tends_to_zero_monotonically():
    values = [normalization_residual(t) for t in (1.0, 2.0, 5.0, 10.0)]
    assert all(v < 0.0 for v in values)
    assert all(abs(b) < abs(a) for a, b in zip(values, values[1:]))


def test_value_on_boundary_circles_vanishes():
    annulus = AnnulusSpec(0.1)
    q = CPoint(1.0, 0.2)
    assert abs(green_negative(CPoint(0.1), q, annulus, allow_boundary=True)) <= 1e-8
    assert abs(green_negative(CPoint(0.0, 10.0), q, annulus, allow_boundary=True)) <= 1e-8
    with pytest.raises(DomainError):
        green_negative(CPoint(0.1), q, annulus)


def test_interior_value_is_negative():
    value = green_negative(CPoint(0.5), CPoint(0.9), AnnulusSpec(0.2, 1e-12))
    assert value < 0.0


def test_domain_and_pole_errors():
    annulus = AnnulusSpec(0.2)
    with pytest.raises(DomainError):
        green_negative(CPoint(6.0), CPoint(1.0), annulus)
    with pytest.raises(DomainError):
        green_negative(CPoint(1.0), CPoint(0.1), annulus)
    with pytest.raises(PoleError):
        green_negative(CPoint(1.0), CPoint(1.0), annulus)


def test_truncation_plan_certifies_tolerance():
    annulus = AnnulusSpec(0.5, tol=1e-10)
    plan = truncation_plan(CPoint(1.5, 0.3), CPoint(0.6), annulus)
    assert plan.J >= 1
    assert plan.tail_bound <= annulus.tol


@pytest.mark.parametrize("r, expected_J", [
    # r^4 = 1e-4 每项，J <= 4
    (0.1, 3),
    # 约 log(tol)/(4 log 0.9)
    (0.9, 73),
])
def test_truncation_plan_on_unit_circle(r, expected_J):
    annulus = AnnulusSpec(r, tol=1e-12)
    plan = truncation_plan(CPoint(1.0), CPoint(0.0, 1.0), annulus)
    assert plan.J == expected_J
    assert plan.tail_bound <= annulus.tol


def test_truncation_error_when_cap_too_small():
    annulus = AnnulusSpec(0.9, tol=1e-12, j_max=2)
    with pytest.raises(TruncationError):
        green_negative(CPoint(1.05), CPoint(0.95), annulus)


def test_nakai_shift_adds_normalization(float64_tols):
    p, q, t = CPoint(1.2, 0.3), CPoint(-0.7, 0.1), 3.0
    annulus = AnnulusSpec.from_t(t)
    assert nakai_shifted_green(p, q, t) == pytest.approx(
        green_negative(p, q, annulus) + annulus.T, abs=float64_tols.atol)


def test_boundary_vanishing_near_both_circles():
    kernel = AnnulusGreenKernel(AnnulusSpec(0.1, 1e-10))
    check = check_boundary_vanishing(kernel, CPoint(1.0, 0.2))
    assert check.passed, check.measured


def test_negative_on_seeded_interior_pairs():
    check = check_interior_sign(AnnulusGreenKernel(AnnulusSpec(0.2)), count=1000, seed=0)
    assert check.passed, check.witness


def test_symmetric_within_truncation_tolerance():
    tol = 1e-12
    kernel = AnnulusGreenKernel(AnnulusSpec(0.2, tol))
    check = check_symmetry(kernel, interior_pairs(50, 3, 0.2), threshold=2.0 * tol)
    assert check.passed, check.measured


def test_real_pole_agrees_with_unconjugated_product(float64_tols):
    annulus = AnnulusSpec(0.3, 1e-14)
    p, q = CPoint(0.8, 0.9), CPoint(1.4)
    zp, zq, r = p.to_complex(), q.to_complex(), annulus.r
    log_p, log_q = math.log(abs(zp)), math.log(abs(zq))
    value = (0.5 * math.log(r) - log_p * log_q / (2.0 * math.log(r)) + math.log(abs(zp - zq))
             - 0.5 * (log_p + log_q))
    for j in range(1, 40):
        value += (math.log(abs(1 - zp / zq * r ** (4 * j))) + math.log(abs(1 - zq / zp * r ** (4 * j)))
                  - math.log(abs(1 - zp * zq * r ** (4 * j - 2)))
                  - math.log(abs(1 - r ** (4 * j - 2) / (zp * zq))))
    assert green_negative(p, q, annulus) == pytest.approx(value, abs=float64_tols.atol)


def test_kernel_object_boundary():
    kernel = AnnulusGreenKernel(AnnulusSpec(0.25))
    assert kernel.punctures() == ()
    assert kernel.boundary_distance(CPoint(1.0)) == pytest.approx(0.75)
    assert [t.label for t in kernel.boundary_targets()] == ["inner_circle", "outer_circle"]
    assert not kernel.contains(CPoint(0.25))


def test_green_kernel_has_no_closed_form_metric():
    kernel = AnnulusGreenKernel(AnnulusSpec(0.2))
    with pytest.raises(ParameterError):
        kernel.metric_factor(CPoint(1.0))
