"""Parameter scans over initial weights / particle number and power-law fits."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import curve_fit

from .classification import IrrepDecomposition
from .coherent_dynamics import LimitResult, find_limit, oat_spec
from .errors import FitDiverged, VanishingMeanSpin


@dataclass(frozen=True)
class ScanConfig:
    """Weight scan: first-subspace weight grid at fixed class and N.

    The remaining weight 1 - |zeta_1|^2 goes entirely to the second subspace;
    any further subspaces stay unpopulated.
    """

    decomposition: IrrepDecomposition
    n: int
    zeta1_sq_grid: tuple[float, ...]

    def __post_init__(self) -> None:
        grid = tuple(float(w) for w in self.zeta1_sq_grid)
        object.__setattr__(self, "zeta1_sq_grid", grid)
        if self.decomposition.r < 2:
            raise ValueError("weight scans need at least two subspaces")
        if any(not 0.0 <= w <= 1.0 for w in grid):
            raise ValueError("grid weights must lie in [0, 1]")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ValueError("grid must be strictly increasing")


@dataclass(frozen=True)
class ScanRow:
    zeta1_sq: float
    xi2_min: float
    mu_min: float
    status: str


def _two_weight_zeta(r: int, zeta1_sq: float) -> tuple[float, ...]:
    if r == 1:
        if abs(zeta1_sq - 1.0) > 1e-12:
            raise ValueError("a single-subspace class only admits zeta1_sq = 1")
        return (1.0,)
    zeta = [0.0] * r
    zeta[0] = math.sqrt(zeta1_sq)
    zeta[1] = math.sqrt(max(0.0, 1.0 - zeta1_sq))
    return tuple(zeta)


def _scan_point(decomposition: IrrepDecomposition, n: int, zeta1_sq: float) -> ScanRow:
    spec = oat_spec(decomposition, n, _two_weight_zeta(decomposition.r, zeta1_sq))
    try:
        res: LimitResult = find_limit(spec)
    except VanishingMeanSpin:
        return ScanRow(zeta1_sq, math.nan, math.nan, "undefined")
    return ScanRow(zeta1_sq, res.xi2_min, res.mu_min, res.status)


def zeta_scan(config: ScanConfig, threads: int = 1) -> list[ScanRow]:
    """Squeezing limit along the first-subspace weight grid, in grid order."""
    points = config.zeta1_sq_grid
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(lambda w: _scan_point(config.decomposition, config.n, w), points))
    return [_scan_point(config.decomposition, config.n, w) for w in points]


def n_scan(
    decomposition: IrrepDecomposition, zeta1_sq: float, n_values, threads: int = 1
) -> list[tuple[int, float, float, str]]:
    """Squeezing limit versus particle number at a fixed weight split."""
    ns = [int(n) for n in n_values]

    def point(n: int):
        row = _scan_point(decomposition, n, zeta1_sq)
        return (n, row.xi2_min, row.mu_min, row.status)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(point, ns))
    return [point(n) for n in ns]


@dataclass(frozen=True)
class FitResult:
    """Fitted model with per-parameter standard errors."""

    model: str
    names: tuple[str, ...]
    values: tuple[float, ...]
    stderr: tuple[float, ...]
    residual_norm: float

    def param(self, name: str) -> tuple[float, float]:
        i = self.names.index(name)
        return self.values[i], self.stderr[i]


def _pure_power(n, a, p):
    return a * np.power(n, -p)


def _offset_power(n, c, a, p, b):
    return c + a * np.power(n, -p) + b / n


def _loglog_init(n: np.ndarray, y: np.ndarray) -> tuple[float, float]:
    """(a, p) from linear regression of log y on log n."""
    mask = y > 0
    if mask.sum() < 2:
        return float(np.max(np.abs(y))) or 1.0, 1.0
    slope, intercept = np.polyfit(np.log(n[mask]), np.log(y[mask]), 1)
    return math.exp(intercept), -slope


def fit_power_law(points, model: str = "power", maxfev: int = 10_000) -> FitResult:
    """Nonlinear least squares for y(N) = a N^-p or y(N) = c + a N^-p + b/N.

    Initial values come from log-log linear regression (for the offset model
    the smallest sample is first subtracted as a constant guess); the
    refinement is Levenberg-Marquardt on the model residuals.  Standard errors
    are read off the Jacobian-based covariance at the optimum.
    """
    pts = [(float(n), float(y)) for n, y in points]
    if len(pts) < 4:
        raise ValueError("need at least 4 points to fit")
    n = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if np.any(n <= 0) or len(set(n.tolist())) != len(n):
        raise ValueError("sample positions must be positive and distinct")

    if model == "power":
        func, names = _pure_power, ("a", "p")
        a0, p0 = _loglog_init(n, y)
        p0vec = [a0, p0]
    elif model == "offset-power":
        func, names = _offset_power, ("c", "a", "p", "b")
        c0 = 0.9 * float(np.min(y))
        a0, p0 = _loglog_init(n, np.maximum(y - c0, 1e-300))
        p0vec = [c0, a0, p0, 0.0]
    else:
        raise ValueError(f"unknown model {model!r}")

    try:
        popt, pcov = curve_fit(func, n, y, p0=p0vec, maxfev=maxfev)
    except RuntimeError as exc:
        raise FitDiverged(str(exc)) from exc
    resid = y - func(n, *popt)
    with np.errstate(invalid="ignore"):
        stderr = np.sqrt(np.abs(np.diag(pcov)))
    return FitResult(
        model,
        names,
        tuple(float(v) for v in popt),
        tuple(float(s) for s in stderr),
        float(np.linalg.norm(resid)),
    )
