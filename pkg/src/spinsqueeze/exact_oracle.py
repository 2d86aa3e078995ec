"""Exact symmetric-subspace simulation of N spin-J particles.

Ground truth for the closed-form dynamics: states live in the
(2J+1)-mode bosonic Fock space at fixed particle number N (dimension
C(N+2J, 2J)), single-particle observables are second-quantized to sparse
collective operators, and one-axis twisting is a diagonal phase evolution.
Everything is brute force and limited to desk-scale N by design.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.linalg import expm

from .classification import Su2Triple, build_su2_triple, canonical_subset
from .coherent_dynamics import (
    CoherentSpec,
    EnsembleSpec,
    SqueezeTrace,
    weighted_subspin_sum,
)
from .errors import DimensionMismatch, NotDiagonal, SizeLimit
from .lie_algebra import HermitianOperator, SpinQuantum, spin_matrices

BASIS_SIZE_LIMIT = 5_000_000
NORM_TOL = 1e-10


def _compositions(total: int, slots: int):
    """All occupation tuples of length `slots` summing to `total`, lex order."""
    if slots == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for tail in _compositions(total - head, slots - 1):
            yield (head,) + tail


@dataclass(frozen=True)
class FockBasis:
    """Ordered occupation-number basis of the N-particle symmetric subspace."""

    n: int
    modes: int
    occupations: tuple[tuple[int, ...], ...]
    index: dict = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        if not self.index:
            object.__setattr__(self, "index", {occ: i for i, occ in enumerate(self.occupations)})

    @property
    def size(self) -> int:
        return len(self.occupations)


def build_basis(n: int, j: SpinQuantum) -> FockBasis:
    """Complete occupation basis for N particles with 2J+1 sublevels each."""
    if n < 1:
        raise ValueError("particle count must be >= 1")
    modes = j.dim
    size = math.comb(n + modes - 1, modes - 1)
    if size > BASIS_SIZE_LIMIT:
        raise SizeLimit(f"basis would hold {size} states (limit {BASIS_SIZE_LIMIT})")
    return FockBasis(n, modes, tuple(_compositions(n, modes)))


@dataclass(frozen=True)
class SymmetricState:
    """Normalized amplitude vector over a Fock basis."""

    basis: FockBasis
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.array(self.amplitudes, dtype=complex)
        if amps.shape != (self.basis.size,):
            raise DimensionMismatch(f"amplitudes shape {amps.shape} != basis size {self.basis.size}")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state norm^2 = {norm!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)


@dataclass(frozen=True)
class CollectiveOperator:
    """Second-quantized observable as a sparse matrix on the Fock basis."""

    basis: FockBasis
    action: sp.csr_matrix


def second_quantize(op: HermitianOperator, basis: FockBasis) -> CollectiveOperator:
    """Collective operator sum_{mn} op_mn c+_m c_n on the occupation basis."""
    if op.dim != basis.modes:
        raise DimensionMismatch(f"operator dim {op.dim} != mode count {basis.modes}")
    m = op.matrix
    rows: list[int] = []
    cols: list[int] = []
    vals: list[complex] = []
    nonzero = [(a, b) for a in range(basis.modes) for b in range(basis.modes) if a != b and m[a, b] != 0]
    diag = np.real(np.diagonal(m))
    for col, occ in enumerate(basis.occupations):
        d = float(np.dot(diag, occ))
        if d != 0.0:
            rows.append(col)
            cols.append(col)
            vals.append(d)
        for a, b in nonzero:
            if occ[b] == 0:
                continue
            target = list(occ)
            target[b] -= 1
            target[a] += 1
            row = basis.index[tuple(target)]
            rows.append(row)
            cols.append(col)
            vals.append(m[a, b] * math.sqrt(occ[b] * (occ[a] + 1)))
    action = sp.coo_matrix((vals, (rows, cols)), shape=(basis.size, basis.size)).tocsr()
    return CollectiveOperator(basis, action)


def _single_particle_vector(triple: Su2Triple, coherent: CoherentSpec) -> np.ndarray:
    """zeta-weighted direct sum of rotated highest-weight block states."""
    psi = np.zeros(triple.j.dim, dtype=complex)
    for (off, twice_sub), zeta in zip(triple.blocks, coherent.zeta):
        if twice_sub == 0:
            psi[off] = zeta
            continue
        jx, jy, _ = spin_matrices(SpinQuantum(twice_sub))
        plus = jx.matrix + 1j * jy.matrix
        gen = -(coherent.theta / 2.0) * (
            np.exp(-1j * coherent.phi) * plus - np.exp(1j * coherent.phi) * plus.conj().T
        )
        rotated = expm(gen)[:, 0]  # highest-weight column
        psi[off : off + twice_sub + 1] = zeta * rotated
    return psi


def coherent_state(spec: EnsembleSpec, basis: FockBasis, triple: Su2Triple | None = None) -> SymmetricState:
    """Symmetric product state psi^(x)N expanded over occupations.

    The single-particle state is the block direct sum of rotated
    highest-weight states weighted by zeta_l; N-particle amplitudes carry the
    multinomial square roots.  Magnitudes are accumulated in the log domain so
    large N stays finite.
    """
    if triple is None:
        triple = build_su2_triple(canonical_subset(spec.decomposition))
    if triple.j.dim != basis.modes:
        raise DimensionMismatch(f"triple dim {triple.j.dim} != mode count {basis.modes}")
    if basis.n != spec.n:
        raise DimensionMismatch(f"basis particle count {basis.n} != spec n {spec.n}")
    psi = _single_particle_vector(triple, spec.coherent)
    log_mag = np.full(basis.modes, -math.inf)
    phase = np.zeros(basis.modes)
    for mno, value in enumerate(psi):
        if value != 0:
            log_mag[mno] = math.log(abs(value))
            phase[mno] = np.angle(value)
    lg_n = math.lgamma(spec.n + 1)
    amps = np.zeros(basis.size, dtype=complex)
    for i, occ in enumerate(basis.occupations):
        log_amp = 0.5 * (lg_n - sum(math.lgamma(k + 1) for k in occ))
        arg = 0.0
        dead = False
        for mno, k in enumerate(occ):
            if k == 0:
                continue
            if log_mag[mno] == -math.inf:
                dead = True
                break
            log_amp += k * log_mag[mno]
            arg += k * phase[mno]
        if not dead:
            amps[i] = math.exp(log_amp) * complex(math.cos(arg), math.sin(arg))
    return SymmetricState(basis, amps)


def evolve_oat(state: SymmetricState, o3: CollectiveOperator, mu: float, f: float) -> SymmetricState:
    """Apply exp(-i mu O3^2 / (2 f^2)) using the diagonal of the collective O3."""
    action = o3.action
    d = action.diagonal()
    off = sp.csr_matrix(action - sp.diags(d, shape=action.shape))
    if off.nnz and np.max(np.abs(off.data)) > 1e-12:
        raise NotDiagonal("collective O3 has off-diagonal weight; twisting phases undefined")
    phases = np.exp(-1j * mu / (2.0 * f * f) * np.real(d) ** 2)
    return SymmetricState(state.basis, state.amplitudes * phases)


def expectation(state: SymmetricState, op: CollectiveOperator) -> float:
    """<psi|A|psi> for Hermitian A (real part taken as the symmetrization guard)."""
    if op.basis.size != state.basis.size:
        raise DimensionMismatch("state and operator bases differ")
    return float(np.real(np.vdot(state.amplitudes, op.action @ state.amplitudes)))


def variance(state: SymmetricState, op: CollectiveOperator) -> float:
    """<A^2> - <A>^2 computed as |A psi|^2 - <psi|A psi>^2 (exact for Hermitian A)."""
    if op.basis.size != state.basis.size:
        raise DimensionMismatch("state and operator bases differ")
    w = op.action @ state.amplitudes
    second = float(np.real(np.vdot(w, w)))
    first = float(np.real(np.vdot(state.amplitudes, w)))
    return second - first * first


def sector_twist_diagonal(triple: Su2Triple, basis: FockBasis) -> np.ndarray:
    """Diagonal of sum_l (Lambda_{l,3})^2, the per-subspace twisting generator.

    Squaring the total collective O3 would add cross-subspace terms
    2 Lambda_{l,3} Lambda_{l',3}; the closed-form dynamics twist each
    irreducible block by the square of its own collective component, so the
    oracle does the same.  Both generators coincide whenever at most one
    subspace has J_l > 0.
    """
    occ = np.array(basis.occupations, dtype=float)
    diag3 = np.real(np.diagonal(triple.o3.matrix))
    total = np.zeros(basis.size)
    for off, twice_sub in triple.blocks:
        if twice_sub == 0:
            continue
        part = np.zeros(basis.modes)
        part[off : off + twice_sub + 1] = diag3[off : off + twice_sub + 1]
        total += (occ @ part) ** 2
    return total


class OracleWorkspace:
    """Cached operators for repeated oracle evaluations of one (class, N) pair.

    Builds the Fock basis, the collective (O1, O2, O3), and the second-moment
    combinations once; individual (zeta, mu) points then cost a few sparse
    matrix-vector products.
    """

    def __init__(self, triple: Su2Triple, n: int):
        self.triple = triple
        self.n = n
        self.basis = build_basis(n, triple.j)
        self.lam1 = second_quantize(triple.o1, self.basis)
        self.lam2 = second_quantize(triple.o2, self.basis)
        self.lam3 = second_quantize(triple.o3, self.basis)
        a2, a3 = self.lam2.action, self.lam3.action
        self._sq22 = (a2 @ a2).tocsr()
        self._sq33 = (a3 @ a3).tocsr()
        self._sym23 = ((a2 @ a3 + a3 @ a2) * 0.5).tocsr()
        self._twist_sq = sector_twist_diagonal(triple, self.basis)

    def coherent(self, coherent_spec: CoherentSpec) -> SymmetricState:
        spec = EnsembleSpec(self.n, self.triple.decomposition, coherent_spec)
        return coherent_state(spec, self.basis, self.triple)

    def twisted(self, coherent_spec: CoherentSpec, mu: float) -> SymmetricState:
        state = self.coherent(coherent_spec)
        f = self.triple.decomposition.f
        phases = np.exp(-1j * mu / (2.0 * f * f) * self._twist_sq)
        return SymmetricState(self.basis, state.amplitudes * phases)

    def squeezing(self, coherent_spec: CoherentSpec, mu: float) -> SqueezeTrace:
        """Transverse moments of the twisted state, minimized over nu exactly.

        The variance of O_2 cos(nu) - O_3 sin(nu) is assembled from the
        second-moment matrix of (O_2, O_3); the extremes follow from its
        2x2 eigenstructure.
        """
        state = self.twisted(coherent_spec, mu)
        amps = state.amplitudes
        mean1 = float(np.real(np.vdot(amps, self.lam1.action @ amps)))
        mean2 = float(np.real(np.vdot(amps, self.lam2.action @ amps)))
        mean3 = float(np.real(np.vdot(amps, self.lam3.action @ amps)))
        v22 = float(np.real(np.vdot(amps, self._sq22 @ amps))) - mean2 * mean2
        v33 = float(np.real(np.vdot(amps, self._sq33 @ amps))) - mean3 * mean3
        c23 = float(np.real(np.vdot(amps, self._sym23 @ amps))) - mean2 * mean3
        const = 0.5 * (v22 + v33)
        p = 0.5 * (v22 - v33)
        q = c23
        amp = math.hypot(p, q)
        var_min, var_max = const - amp, const + amp
        nu_min = 0.0 if amp == 0.0 else (0.5 * math.atan2(q, -p)) % math.pi
        spec = EnsembleSpec(self.n, self.triple.decomposition, coherent_spec)
        sjz = weighted_subspin_sum(spec)
        f = self.triple.decomposition.f
        if abs(mean1) < 1e-12 * f * self.n:
            xi2 = math.inf
        else:
            xi2 = 2.0 * self.n * sjz * var_min / (mean1 * mean1)
        return SqueezeTrace(mu, mean1, var_min, var_max, nu_min, xi2)


def oracle_squeezing(spec: EnsembleSpec, mu: float, triple: Su2Triple | None = None) -> SqueezeTrace:
    """One-shot exact squeezing record for an ensemble at rescaled time mu."""
    if triple is None:
        triple = build_su2_triple(canonical_subset(spec.decomposition))
    return OracleWorkspace(triple, spec.n).squeezing(spec.coherent, mu)
