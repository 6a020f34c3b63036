import math

import pytest

from kernels.errors import DomainError, ParameterError
from kernels.extrapolation import richardson_tableau
from kernels.geometry import ONE, ORIGIN, CPoint
from kernels.metric import (MetricParams, fundamental_metric_limit, fundamental_metric_punctured,
                            fundamental_metric_twice, metric_params_for)
from kernels.punctured_kernel import PuncturedEvansKernel, PuncturedParams, PuncturedPotential
from kernels.twice_punctured_kernel import (TwicePuncturedEvansKernel, TwicePuncturedParams,
                                            TwicePuncturedPotential)
from verification.sampling import annulus_pairs


def test_closed_forms(float64_tols):
    assert fundamental_metric_punctured(CPoint(1.0, 1.0), 1.0) == pytest.approx(
        1.0 / math.sqrt(2.0), rel=float64_tols.rtol)
    assert fundamental_metric_twice(CPoint(2.0), 0.5, 0.5) == pytest.approx(
        2.0 ** -0.5, rel=float64_tols.rtol)


def test_closed_form_domain_and_parameters():
    with pytest.raises(DomainError):
        fundamental_metric_punctured(ORIGIN, 1.0)
    with pytest.raises(DomainError):
        fundamental_metric_twice(ONE, 0.5, 0.5)
    with pytest.raises(ParameterError):
        MetricParams(2.0)
    with pytest.raises(ParameterError):
        MetricParams(1.2, 0.9)


def test_metric_params_for_families(float64_tols):
    assert metric_params_for(PuncturedParams(0.3, 0.4)).s == pytest.approx(0.7)
    params = metric_params_for(TwicePuncturedParams(0.2, 0.3, 0.4, 0.1))
    assert params.s == pytest.approx(0.5)
    assert params.j == pytest.approx(0.5)


def _seeded_points(count=10):
    # 模在 [1.5, 3] 中，离 0 和 1 都至少 0.5
    return [p for p, _ in annulus_pairs(count, 0, (1.5, 3.0), (1.5, 3.0))]


@pytest.mark.parametrize("potential", [
    PuncturedPotential(PuncturedParams(0.3, 0.4)),
    PuncturedEvansKernel(0.45),
])
def test_limit_matches_punctured_closed_form(potential, limit_tols):
    for z in _seeded_points():
        assert fundamental_metric_limit(z, potential) == pytest.approx(
            potential.metric_factor(z), rel=limit_tols.rtol)


@pytest.mark.parametrize("potential", [
    TwicePuncturedPotential(TwicePuncturedParams(0.2, 0.3, 0.4, 0.1)),
    TwicePuncturedEvansKernel(0.3, 0.3),
])
def test_limit_matches_twice_closed_form(potential, limit_tols):
    for z in _seeded_points():
        assert fundamental_metric_limit(z, potential) == pytest.approx(
            potential.metric_factor(z), rel=limit_tols.rtol)


@pytest.mark.parametrize("steps", [
    [1e-3],
    [1e-3, 1e-3],
    [1e-3, 2e-3],
    [1e-3, -1e-4],
    [0.9, 0.1],
])
def test_invalid_step_sequences(steps):
    potential = PuncturedPotential(PuncturedParams(0.5, 0.5))
    with pytest.raises(ParameterError):
        fundamental_metric_limit(CPoint(1.0), potential, steps)


def test_richardson_removes_power_terms(float64_tols):
    steps = [0.1 / 2 ** n for n in range(5)]
    values = [3.0 + 2.0 * h - 5.0 * h ** 2 + 0.5 * h ** 3 for h in steps]
    tableau = richardson_tableau(2.0, values)
    assert tableau[-1][0] == pytest.approx(3.0, abs=float64_tols.atol)
    assert [len(level) for level in tableau] == [5, 4, 3, 2, 1]


def test_limit_on_twice_punctured_plane_at_minus_one(limit_tols):
    potential = TwicePuncturedPotential(TwicePuncturedParams(0.25, 0.25, 0.25, 0.25))
    z = CPoint(-1.0)
    assert fundamental_metric_limit(z, potential) == pytest.approx(
        fundamental_metric_twice(z, 0.5, 0.5), rel=limit_tols.rtol)
    assert fundamental_metric_limit(z, potential) == pytest.approx(2.0 ** -0.5, rel=limit_tols.rtol)


def test_limit_at_puncture_rejected():
    potential = TwicePuncturedPotential(TwicePuncturedParams(0.25, 0.25, 0.25, 0.25))
    with pytest.raises(DomainError):
        fundamental_metric_limit(ONE, potential)
