"""
确定性的准随机采样：Halton 序列，seed 为跳过的点数
"""
import math
from typing import List, Tuple

import numpy as np
from scipy.stats import qmc

from kernels.geometry import CPoint


def halton_points(count: int, dimension: int, seed: int) -> np.ndarray:
    """不加扰动的 Halton 序列，跳过首个全零点及 seed 个点"""
    sampler = qmc.Halton(d=dimension, scramble=False)
    sampler.fast_forward(seed + 1)
    return sampler.random(count)


def _point(u_radius: float, u_angle: float, radius_range: Tuple[float, float]) -> CPoint:
    low, high = math.log(radius_range[0]), math.log(radius_range[1])
    return CPoint.polar(math.exp(low + (high - low) * u_radius), 2.0 * math.pi * u_angle)


def annulus_pairs(count: int, seed: int, p_range: Tuple[float, float],
                  q_range: Tuple[float, float]) -> List[Tuple[CPoint, CPoint]]:
    """p 的模取自 p_range、q 的模取自 q_range（对数均匀），辐角均匀"""
    pairs = []
    for u in halton_points(count, 4, seed):
        pairs.append((_point(u[0], u[1], p_range), _point(u[2], u[3], q_range)))
    return pairs


def interior_pairs(count: int, seed: int, r: float, margin: float = 0.01) -> List[Tuple[CPoint, CPoint]]:
    """圆环 {r < |z| < 1/r} 内部的点对，对数半径两端各留 margin 比例"""
    span = -2.0 * math.log(r)
    low = math.exp(math.log(r) + margin * span)
    high = math.exp(-math.log(r) - margin * span)
    return annulus_pairs(count, seed, (low, high), (low, high))
