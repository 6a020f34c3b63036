"""
Nakai 逼近：G_t(p, q) + log(e^t - e^{-t}) -> log|p-q|/sqrt|pq|
"""
import logging
from typing import List, Sequence, Tuple

import numpy as np

from kernels.errors import ParameterError
from kernels.geometry import CPoint, require_distinct
from kernels.green_kernel import DEFAULT_TOL, nakai_shifted_green
from kernels.punctured_kernel import evans_kernel_punctured
from .reports import ConvergenceReport
from .sampling import annulus_pairs

logger = logging.getLogger(__name__)

DEFAULT_T_VALUES = (1.0, 2.0, 3.0, 4.0)
DEFAULT_SAMPLE_COUNT = 12


def standard_samples(seed: int = 0, count: int = DEFAULT_SAMPLE_COUNT) -> List[Tuple[CPoint, CPoint]]:
    """紧集 {0.5 <= |z| <= 2} 上的固定点对：|p| ∈ [1, 2]，|q| ∈ [0.5, 1]"""
    return annulus_pairs(count, seed, (1.0, 2.0), (0.5, 1.0))


def fit_rate(t_values: Sequence[float], errors: Sequence[float]):
    """log(误差) 对 t 的斜率，少于两个点或误差为零时为 None"""
    if len(t_values) < 2 or any(e <= 0.0 for e in errors):
        return None
    slope, _ = np.polyfit(np.asarray(t_values, dtype=float), np.log(errors), 1)
    return float(slope)


def nakai_convergence_study(samples: Sequence[Tuple[CPoint, CPoint]],
                            t_values: Sequence[float] = DEFAULT_T_VALUES,
                            tol: float = DEFAULT_TOL, seed: int = 0) -> ConvergenceReport:
    """每个 t 上样本点对的最大误差"""
    if any(b <= a for a, b in zip(t_values, t_values[1:])):
        raise ParameterError("parameter: t_values must be strictly increasing")
    for p, q in samples:
        require_distinct(p, q)

    limits = [evans_kernel_punctured(p, q, 0.5) for p, q in samples]
    errors = []
    for t in t_values:
        error = max(abs(nakai_shifted_green(p, q, t, tol) - limit)
                    for (p, q), limit in zip(samples, limits))
        logger.debug("nakai t=%g sup error=%.3e", t, error)
        errors.append(error)
    return ConvergenceReport(list(t_values), errors, fit_rate(t_values, errors), seed, list(samples))
