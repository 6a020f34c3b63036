"""
圆环 Green 函数的有限差分对照解
在 (log 半径, 辐角) 均匀网格上分离极点：u = v + log|p-q|，
v 调和且边界值为 -log|p-q|
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import sparse
from scipy.interpolate import RectBivariateSpline
from scipy.sparse.linalg import spsolve

from kernels.errors import DomainError, ParameterError, SolveError
from kernels.geometry import CPoint
from kernels.green_kernel import AnnulusSpec, green_negative

logger = logging.getLogger(__name__)

MIN_RESOLUTION = 64
RESIDUAL_TOL = 1e-10
# 插值时两侧周期延拓的列数
_PAD = 3


@dataclass
class FDOracleGrid:
    """极坐标网格上的离散 Green 函数，第 0 行与最后一行为边界"""
    n_r: int
    n_theta: int
    r: float
    q: CPoint
    log_radii: np.ndarray   # (n_r + 1,)
    angles: np.ndarray      # (n_theta,)
    harmonic_part: np.ndarray  # v，(n_r + 1, n_theta)
    values: np.ndarray         # u = v + log|p-q|

    def node(self, i: int, j: int) -> CPoint:
        return CPoint.polar(math.exp(self.log_radii[i]), self.angles[j])

    def _spline(self) -> RectBivariateSpline:
        angles = np.concatenate([
            self.angles[-_PAD:] - 2.0 * math.pi, self.angles, self.angles[:_PAD] + 2.0 * math.pi
        ])
        values = np.concatenate([
            self.harmonic_part[:, -_PAD:], self.harmonic_part, self.harmonic_part[:, :_PAD]
        ], axis=1)
        return RectBivariateSpline(self.log_radii, angles, values)

    def value_at(self, z: CPoint) -> float:
        """网格外的点：插值光滑部分 v 再加回 log|z-q|"""
        log_radius = math.log(z.modulus())
        if not self.log_radii[0] <= log_radius <= self.log_radii[-1]:
            raise DomainError(f"domain: point {z} lies outside the oracle grid")
        angle = math.atan2(z.im, z.re) % (2.0 * math.pi)
        smooth = float(self._spline()(log_radius, angle)[0, 0])
        return smooth + math.log(z.distance(self.q))


def _laplacian(n_r: int, n_theta: int, d_rho: float, d_theta: float) -> sparse.csc_matrix:
    """内部节点上的五点格式：径向 Dirichlet，角向周期"""
    radial = sparse.diags([1.0, -2.0, 1.0], [-1, 0, 1], shape=(n_r - 1, n_r - 1))
    angular = sparse.diags([1.0, -2.0, 1.0], [-1, 0, 1], shape=(n_theta, n_theta)).tolil()
    angular[0, n_theta - 1] = 1.0
    angular[n_theta - 1, 0] = 1.0
    operator = (sparse.kron(radial, sparse.identity(n_theta)) / d_rho ** 2
                + sparse.kron(sparse.identity(n_r - 1), angular.tocsr()) / d_theta ** 2)
    return operator.tocsc()


def fd_green_oracle(r: float, q: CPoint, n_r: int = 128, n_theta: int = 128) -> FDOracleGrid:
    """求解离散 Dirichlet 问题得到圆环 Green 函数"""
    annulus = AnnulusSpec(r)
    if not annulus.contains(q):
        raise DomainError(f"domain: pole {q} must lie strictly inside the annulus")
    if n_r < MIN_RESOLUTION or n_theta < MIN_RESOLUTION:
        raise ParameterError(f"parameter: resolutions must be at least {MIN_RESOLUTION}")

    log_r = math.log(r)
    log_radii = np.linspace(log_r, -log_r, n_r + 1)
    angles = 2.0 * math.pi * np.arange(n_theta) / n_theta
    d_rho = log_radii[1] - log_radii[0]
    d_theta = angles[1] - angles[0]

    radius, theta = np.meshgrid(np.exp(log_radii), angles, indexing="ij")
    points = radius * np.exp(1j * theta)
    log_pole = np.log(np.abs(points - q.to_complex()))

    # 边界值 v = -log|p-q|，移到右端
    rhs = np.zeros((n_r - 1, n_theta))
    rhs[0, :] -= -log_pole[0, :] / d_rho ** 2
    rhs[-1, :] -= -log_pole[-1, :] / d_rho ** 2
    rhs = rhs.ravel()

    operator = _laplacian(n_r, n_theta, d_rho, d_theta)
    interior = spsolve(operator, rhs)
    residual = float(np.max(np.abs(operator @ interior - rhs)))
    scale = max(1.0, float(np.max(np.abs(rhs))))
    logger.debug("fd oracle r=%g n=(%d, %d): residual=%.2e", r, n_r, n_theta, residual)
    if residual > RESIDUAL_TOL * scale:
        raise SolveError(f"oracle residual {residual:.3e} exceeds {RESIDUAL_TOL * scale:.3e}")

    harmonic_part = np.empty((n_r + 1, n_theta))
    harmonic_part[0, :] = -log_pole[0, :]
    harmonic_part[-1, :] = -log_pole[-1, :]
    harmonic_part[1:-1, :] = interior.reshape(n_r - 1, n_theta)

    with np.errstate(divide="ignore"):
        values = harmonic_part + log_pole
    values[0, :] = 0.0
    values[-1, :] = 0.0
    return FDOracleGrid(n_r, n_theta, r, q, log_radii, angles, harmonic_part, values)


def oracle_sup_deviation(grid: FDOracleGrid, tol: float = 1e-12) -> float:
    """内部节点上对照解与乘积公式的最大偏差"""
    annulus = AnnulusSpec(grid.r, tol)
    deviation = 0.0
    for i in range(1, grid.n_r):
        for j in range(grid.n_theta):
            p = grid.node(i, j)
            if p == grid.q:
                continue
            deviation = max(deviation, float(abs(grid.values[i, j] - green_negative(p, grid.q, annulus))))
    return deviation


def oracle_refinement(r: float, q: CPoint, n: int = MIN_RESOLUTION):
    """n 与 2n 两套网格的偏差及观测阶"""
    coarse = oracle_sup_deviation(fd_green_oracle(r, q, n, n))
    fine = oracle_sup_deviation(fd_green_oracle(r, q, 2 * n, 2 * n))
    order = math.log2(coarse / fine) if fine > 0.0 else math.inf
    return coarse, fine, order


def oracle_symmetry_gap(r: float, q1: CPoint, q2: CPoint, n: int = 128) -> float:
    """|u_{q1}(q2) - u_{q2}(q1)|，两个极点各解一次"""
    first = fd_green_oracle(r, q1, n, n).value_at(q2)
    second = fd_green_oracle(r, q2, n, n).value_at(q1)
    return abs(first - second)
