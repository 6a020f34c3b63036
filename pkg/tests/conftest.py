import attrs
import pytest


@attrs.define
class float_tol:
    atol: float
    rtol: float


@attrs.define
class check_tols:
    harmonic: float
    pole: float
    stabilization: float
    metric_relative: float


@pytest.fixture
def float64_tols():
    return float_tol(
        atol=1e-12,
        rtol=1e-10,
    )


@pytest.fixture
def limit_tols():
    # 数值极限、外推与回归估计
    return float_tol(
        atol=1e-6,
        rtol=1e-6,
    )


@pytest.fixture
def axiom_tols():
    return check_tols(
        harmonic=1e-5,
        pole=1e-6,
        stabilization=1e-3,
        metric_relative=1e-6,
    )
