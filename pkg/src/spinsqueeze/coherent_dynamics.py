"""Closed-form coherent-state expectations and one-axis-twisting dynamics.

Everything here is exact arithmetic on the class data (subspins J_l,
structure factor f, weights |zeta_l|^2, particle number N); no state vectors
are built.  The one-axis-twisting protocol starts from the coherent state at
theta = pi/2, phi = 0 and applies exp(-i mu Lambda_{l,3}^2 / (2 f^2)) inside
each irreducible block, with mu the rescaled time (see the exact_oracle
module for the block-resolved generator).  Transverse fluctuations are
minimized analytically over the quadrature angle nu, measured in the
O_2-O_3 plane via O_nu = O_2 cos(nu) - O_3 sin(nu).

Large powers such as cos^(2 J_l N)(mu/2) are evaluated in the log domain;
all exponents are integers, so negative bases are exact by parity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .classification import IrrepDecomposition, Su2Triple
from .errors import DimensionMismatch, NormalizationError, VanishingMeanSpin, WrongClass
from .lie_algebra import HermitianOperator

GRID_POINTS = 128
GOLDEN_REL_TOL = 1e-6
MAX_EXPANSIONS = 8


@dataclass(frozen=True)
class CoherentSpec:
    """Coherent-state parameters: polar angles and per-subspace weights."""

    theta: float
    phi: float
    zeta: tuple[complex, ...]

    def __post_init__(self) -> None:
        z = tuple(complex(v) for v in self.zeta)
        object.__setattr__(self, "zeta", z)
        total = sum(abs(v) ** 2 for v in z)
        if abs(total - 1.0) > 1e-12:
            raise NormalizationError(f"sum |zeta|^2 = {total!r}, expected 1")

    @property
    def weights(self) -> tuple[float, ...]:
        return tuple(abs(v) ** 2 for v in self.zeta)


@dataclass(frozen=True)
class EnsembleSpec:
    """N identical spin-J particles with a class decomposition and weights."""

    n: int
    decomposition: IrrepDecomposition
    coherent: CoherentSpec

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("particle count must be >= 1")
        if len(self.coherent.zeta) != self.decomposition.r:
            raise DimensionMismatch(
                f"{len(self.coherent.zeta)} weights for r = {self.decomposition.r} subspaces"
            )


def oat_spec(decomposition: IrrepDecomposition, n: int, zeta) -> EnsembleSpec:
    """Ensemble prepared for one-axis twisting (theta = pi/2, phi = 0)."""
    return EnsembleSpec(n, decomposition, CoherentSpec(math.pi / 2, 0.0, tuple(zeta)))


@dataclass(frozen=True)
class SqueezeTrace:
    """Record of the transverse moments at one rescaled time mu."""

    mu: float
    perp_expectation: float
    var_min: float
    var_max: float
    nu_min: float
    xi2: float


@dataclass(frozen=True)
class LimitResult:
    """Outcome of a squeezing-limit search over mu."""

    xi2_min: float
    mu_min: float
    iterations: int
    status: str  # "ok" or "no_squeezing"


def _log_pow(base: float, n: int) -> float:
    """base**n for integer n >= 0 via exp(n log base); exact sign by parity."""
    if n == 0:
        return 1.0
    if n < 0:
        raise ValueError("negative exponents are never needed here")
    if base == 0.0:
        return 0.0
    if base > 0.0:
        return math.exp(n * math.log(base))
    mag = math.exp(n * math.log(-base))
    return -mag if n % 2 else mag


def _active(spec: EnsembleSpec):
    """(J_l, 2*J_l, |zeta_l|^2) for subspaces that carry both spin and weight."""
    for twice, w in zip(spec.decomposition.twice_subspins, spec.coherent.weights):
        if twice > 0 and w > 0.0:
            yield twice / 2.0, twice, w


def weighted_subspin_sum(spec: EnsembleSpec) -> float:
    """sum_l J_l |zeta_l|^2 over the nontrivial subspaces."""
    return sum(jl * w for jl, _, w in _active(spec))


def css_expectation_perp(spec: EnsembleSpec) -> float:
    """Coherent-state mean spin f N sum_l J_l |zeta_l|^2 (any theta, phi)."""
    return spec.decomposition.f * spec.n * weighted_subspin_sum(spec)


def css_fluctuation(spec: EnsembleSpec, nu: float = 0.0) -> float:
    """Isotropic transverse variance f^2 N / 2 * sum_l J_l |zeta_l|^2."""
    del nu  # independent of the quadrature angle
    f = spec.decomposition.f
    return 0.5 * f * f * spec.n * weighted_subspin_sum(spec)


def oat_expectation_perp(spec: EnsembleSpec, mu: float) -> float:
    """Mean spin <O_1>(mu) of the one-axis-twisted state."""
    if mu < 0:
        raise ValueError("mu must be >= 0")
    ch = math.cos(mu / 2.0)
    total = 0.0
    for jl, tj, w in _active(spec):
        shrink = 1.0 - w * (1.0 - _log_pow(ch, tj))
        total += jl * w * _log_pow(ch, tj - 1) * _log_pow(shrink, spec.n - 1)
    return spec.decomposition.f * spec.n * total


def _coeff_a(tj: int, n: int, w: float, mu: float) -> float:
    """Coefficient of the (1 + cos 2 nu) part of the twisted variance."""
    jl = tj / 2.0
    c = math.cos(mu)
    shrink = 1.0 - w * (1.0 - _log_pow(c, tj))
    total = 0.0
    if n > 1:
        total += 0.5 * jl * (n - 1) * w * (1.0 - _log_pow(c, 2 * tj - 2) * _log_pow(shrink, n - 2))
    if tj > 1:  # the (J_l - 1/2) term vanishes identically for J_l = 1/2
        total += 0.5 * (jl - 0.5) * (1.0 - _log_pow(c, tj - 2) * _log_pow(shrink, n - 1))
    return total


def _coeff_b(tj: int, n: int, w: float, mu: float) -> float:
    """Coefficient of the sin 2 nu part of the twisted variance."""
    jl = tj / 2.0
    ch = math.cos(mu / 2.0)
    sh = math.sin(mu / 2.0)
    shrink = 1.0 - w * (1.0 - _log_pow(ch, tj))
    total = 0.0
    if n > 1:
        total += jl * (n - 1) * w * _log_pow(ch, 2 * tj - 2) * _log_pow(shrink, n - 2)
    if tj > 1:
        total += (jl - 0.5) * _log_pow(ch, tj - 2) * _log_pow(shrink, n - 1)
    return 2.0 * sh * total


def oat_fluctuation(spec: EnsembleSpec, mu: float, nu: float) -> float:
    """Transverse variance <(Delta O_nu)^2>(mu) at quadrature angle nu."""
    if mu < 0:
        raise ValueError("mu must be >= 0")
    f = spec.decomposition.f
    pref = 0.5 * f * f * spec.n
    total = 0.0
    for jl, tj, w in _active(spec):
        a = _coeff_a(tj, spec.n, w, mu)
        b = _coeff_b(tj, spec.n, w, mu)
        total += jl * w * (1.0 + a * (1.0 + math.cos(2 * nu)) - b * math.sin(2 * nu))
    return pref * total


def min_fluctuation(spec: EnsembleSpec, mu: float) -> tuple[float, float, float]:
    """Extremal transverse variances and the minimizing quadrature angle.

    The nu dependence is C + P cos(2 nu) - Q sin(2 nu), so the extrema are
    C -+ sqrt(P^2 + Q^2) and the minimum sits at nu = atan2(Q, -P) / 2,
    reported in [0, pi).  When P = Q = 0 (isotropic, e.g. mu = 0) the
    returned angle is an arbitrary 0.
    """
    if mu < 0:
        raise ValueError("mu must be >= 0")
    f = spec.decomposition.f
    pref = 0.5 * f * f * spec.n
    const = p = q = 0.0
    for jl, tj, w in _active(spec):
        a = _coeff_a(tj, spec.n, w, mu)
        b = _coeff_b(tj, spec.n, w, mu)
        const += jl * w * (1.0 + a)
        p += jl * w * a
        q += jl * w * b
    const, p, q = pref * const, pref * p, pref * q
    amp = math.hypot(p, q)
    nu_min = 0.0 if amp == 0.0 else (0.5 * math.atan2(q, -p)) % math.pi
    return const - amp, const + amp, nu_min


def squeezing_parameter(spec: EnsembleSpec, mu: float) -> float:
    """Squeezing parameter xi^2 = 2 N sum(J_l |zeta_l|^2) var_min / <O_perp>^2."""
    sjz = weighted_subspin_sum(spec)
    mean = oat_expectation_perp(spec, mu)
    # threshold relative to the f*N scale of the mean spin
    if abs(mean) < 1e-12 * spec.decomposition.f * spec.n:
        raise VanishingMeanSpin(f"<O_perp>({mu}) = {mean:.3e}; xi^2 undefined")
    var_min, _, _ = min_fluctuation(spec, mu)
    return 2.0 * spec.n * sjz * var_min / (mean * mean)


def squeeze_trace(spec: EnsembleSpec, mu: float) -> SqueezeTrace:
    """Full transverse record at one mu; xi2 = inf where the mean vanishes."""
    var_min, var_max, nu_min = min_fluctuation(spec, mu)
    mean = oat_expectation_perp(spec, mu)
    if abs(mean) < 1e-12 * spec.decomposition.f * spec.n:
        xi2 = math.inf
    else:
        xi2 = 2.0 * spec.n * weighted_subspin_sum(spec) * var_min / (mean * mean)
    return SqueezeTrace(mu, mean, var_min, var_max, nu_min, xi2)


def _xi2_or_inf(spec: EnsembleSpec, mu: float) -> float:
    try:
        return squeezing_parameter(spec, mu)
    except VanishingMeanSpin:
        return math.inf


def find_limit(
    spec: EnsembleSpec,
    mu_hi: float | None = None,
    grid_points: int = GRID_POINTS,
    rel_tol: float = GOLDEN_REL_TOL,
) -> LimitResult:
    """Minimize xi^2 over mu > 0: log-spaced coarse grid, then golden section.

    The sweep covers (0, mu_hi], defaulting to 200 (J_1 N)^(-2/3) and doubling
    twice per expansion whenever the coarse minimum lands on the upper edge.
    A search that never sees xi^2 < 1 reports status "no_squeezing" instead of
    raising.
    """
    if weighted_subspin_sum(spec) <= 0.0:
        raise VanishingMeanSpin("no weight on nontrivial subspaces")
    j1 = spec.decomposition.twice_subspins[0] / 2.0
    if mu_hi is None:
        mu_hi = 200.0 * (j1 * spec.n) ** (-2.0 / 3.0)
    evaluations = 0

    for _ in range(MAX_EXPANSIONS + 1):
        grid = np.geomspace(mu_hi * 1e-6, mu_hi, grid_points)
        values = [_xi2_or_inf(spec, float(m)) for m in grid]
        evaluations += len(grid)
        best = int(np.argmin(values))
        if best == grid_points - 1 and math.isfinite(values[best]):
            mu_hi *= 4.0
            continue
        break

    if not math.isfinite(values[best]):
        return LimitResult(math.inf, math.nan, evaluations, "no_squeezing")

    lo = float(grid[best - 1]) if best > 0 else float(grid[0]) * 1e-3
    hi = float(grid[best + 1]) if best < grid_points - 1 else float(grid[-1])
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = _xi2_or_inf(spec, c), _xi2_or_inf(spec, d)
    evaluations += 2
    while b - a > rel_tol * b:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = _xi2_or_inf(spec, c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = _xi2_or_inf(spec, d)
        evaluations += 1
    mu_min = c if fc <= fd else d
    xi2_min = min(fc, fd)
    if xi2_min >= 1.0:
        return LimitResult(xi2_min, mu_min, evaluations, "no_squeezing")
    return LimitResult(xi2_min, mu_min, evaluations, "ok")


@dataclass(frozen=True)
class R1Limit:
    """Asymptotic one-subspace squeezing limit with validity checks."""

    xi2: float
    mu: float
    alpha: float
    beta: float
    alpha_ok: bool
    beta_ok: bool


def r1_xi2_series(twice_j_sub: int, n: int, mu: float) -> float:
    """Second-order small-time expansion of xi^2 for a single weighted subspace.

    Uses alpha = J N mu / 2 and beta = J N mu^2 / 4; valid for alpha >> 1 and
    beta << 1.
    """
    jn = (twice_j_sub / 2.0) * n
    alpha = 0.5 * jn * mu
    beta = 0.25 * jn * mu * mu
    return 1.0 / (4.0 * alpha * alpha) + (2.0 / 3.0) * beta * beta + beta / (2.0 * alpha * alpha)


def asymptotic_limit_r1(twice_j_sub: int, n: int) -> R1Limit:
    """Closed-form squeezing limit when all weight sits on one subspace.

    xi^2_min = (3 / (2 J N))^(2/3) / 2 + 1 / (2 J N) at
    mu_min = 12^(1/6) (J N)^(-2/3).  The validity flags report alpha >= 10 and
    beta <= 0.1 at the optimum.
    """
    if twice_j_sub < 1:
        raise ValueError("the weighted subspace must have J_l > 0")
    if n < 2:
        raise ValueError("asymptotics need N >= 2")
    jn = (twice_j_sub / 2.0) * n
    mu = 12.0 ** (1.0 / 6.0) * jn ** (-2.0 / 3.0)
    xi2 = 0.5 * (1.5 / jn) ** (2.0 / 3.0) + 0.5 / jn
    alpha = 0.5 * jn * mu
    beta = 0.25 * jn * mu * mu
    return R1Limit(xi2, mu, alpha, beta, alpha >= 10.0, beta <= 0.1)


def type_iii_xi(spec: EnsembleSpec, mu: float) -> float:
    """Closed-form xi^2(mu) specialized to the {1/2, 1/2} class.

    Evaluates the two-subspace formula with numerator terms
    Delta_l = lead_l - sqrt(lead_l^2 + [4 |zeta_l|^2 sin(mu/2) v_l]^2) where
    lead_l = 1 - (1 - 2 |zeta_l|^2 sin^2(mu/2))^(N-2) and
    v_l = (1 - 2 |zeta_l|^2 sin^2(mu/4))^(N-2), over a single power of the
    mean-spin factor sum_l |zeta_l|^2 (1 - 2 |zeta_l|^2 sin^2(mu/4))^(N-1).
    At finite N this closed form deviates from the exact general-path value;
    the deviation is quantified in the test suite and vanishes as N grows.
    """
    if spec.decomposition.twice_subspins != (1, 1):
        raise WrongClass(f"needs subspins (1/2, 1/2), got {spec.decomposition.twice_subspins}")
    if mu < 0:
        raise ValueError("mu must be >= 0")
    n = spec.n
    sh2 = math.sin(mu / 2.0)
    sq4 = math.sin(mu / 4.0) ** 2
    denom = 0.0
    delta_sum = 0.0
    for w in spec.coherent.weights:
        denom += w * _log_pow(1.0 - 2.0 * w * sq4, n - 1)
        if w == 0.0:
            continue
        lead = 1.0 - _log_pow(1.0 - 2.0 * w * sh2 * sh2, n - 2)
        v = _log_pow(1.0 - 2.0 * w * sq4, n - 2)
        delta_sum += lead - math.hypot(lead, 4.0 * w * sh2 * v)
    if abs(denom) < 1e-300:
        raise VanishingMeanSpin("mean-spin factor vanished")
    return (1.0 + 0.25 * (n - 1) * delta_sum) / denom


def perp_observable(triple: Su2Triple, theta: float, phi: float) -> HermitianOperator:
    """Mean-spin direction O_1 cos(phi) sin(theta) + O_2 sin(phi) sin(theta) + O_3 cos(theta)."""
    m = (
        math.cos(phi) * math.sin(theta) * triple.o1.matrix
        + math.sin(phi) * math.sin(theta) * triple.o2.matrix
        + math.cos(theta) * triple.o3.matrix
    )
    return HermitianOperator(m)


def transverse_observable(triple: Su2Triple, theta: float, phi: float, nu: float) -> HermitianOperator:
    """Quadrature at angle nu in the plane perpendicular to the mean spin."""
    m = (
        (math.cos(phi) * math.cos(theta) * math.cos(nu) - math.sin(phi) * math.sin(nu))
        * triple.o1.matrix
        + (math.sin(phi) * math.cos(theta) * math.cos(nu) + math.cos(phi) * math.sin(nu))
        * triple.o2.matrix
        - math.sin(theta) * math.cos(nu) * triple.o3.matrix
    )
    return HermitianOperator(m)


def oat_transverse_observable(triple: Su2Triple, nu: float) -> HermitianOperator:
    """O_2 cos(nu) - O_3 sin(nu), the twisting-plane quadrature."""
    return HermitianOperator(math.cos(nu) * triple.o2.matrix - math.sin(nu) * triple.o3.matrix)
