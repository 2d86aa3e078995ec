"""Unitary equivalence classes of su(2) subalgebras inside su(2J+1).

A class is fixed by the multiset of "subspins" {J_l} in the block
decomposition O_k = f * direct_sum_l lambda_{J_l,k} with sum_l (2J_l+1) =
2J+1.  Choosing vertices on the A_{2J} Dynkin diagram generates every class:
each maximal run of l consecutive chosen vertices contributes a spin-l/2
block over its l+1 magnetic sublevels, and every untouched sublevel
contributes a one-dimensional (subspin 0) block.  The structure factor

    f = sqrt[ J(J+1)(2J+1) / sum_l J_l(J_l+1)(2J_l+1) ]

makes the direct sum satisfy [O_3, O_+-] = +-f O_+- with unit-norm
coefficient vectors in the generator basis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AllTrivialSubspins, DimensionMismatch, NotAnSu2Triple
from .lie_algebra import (
    HermitianOperator,
    SpinQuantum,
    half_integer_str,
    spin_matrices,
)

COMMUTATION_TOL = 1e-9
SPECTRUM_CLUSTER_TOL = 1e-7


@dataclass(frozen=True)
class VertexSubset:
    """Nonempty choice of Dynkin vertices, numbered 1..2J."""

    j: SpinQuantum
    chosen: frozenset[int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "chosen", frozenset(int(k) for k in self.chosen))
        if not self.chosen:
            raise ValueError("at least one vertex must be chosen")
        bad = [k for k in self.chosen if not 1 <= k <= self.j.twice_j]
        if bad:
            raise ValueError(f"vertices {bad} outside 1..{self.j.twice_j}")

    def runs(self) -> list[tuple[int, int]]:
        """Maximal runs of consecutive vertices as (first_vertex, length)."""
        ordered = sorted(self.chosen)
        out = []
        start = prev = ordered[0]
        for k in ordered[1:]:
            if k == prev + 1:
                prev = k
                continue
            out.append((start, prev - start + 1))
            start = prev = k
        out.append((start, prev - start + 1))
        return out


def structure_factor(twice_subspins, j: SpinQuantum) -> float:
    """Structure constant f for a subspin multiset inside spin J."""
    twice = [int(t) for t in twice_subspins]
    if sum(t + 1 for t in twice) != j.dim:
        raise DimensionMismatch(
            f"subspins {twice} fill {sum(t + 1 for t in twice)} levels, need {j.dim}"
        )
    denom = sum(t * (t + 2) * (t + 1) / 12.0 for t in twice)
    if denom == 0.0:
        raise AllTrivialSubspins("every subspin is zero")
    num = j.twice_j * (j.twice_j + 2) * (j.twice_j + 1) / 12.0
    return math.sqrt(num / denom)


@dataclass(frozen=True)
class IrrepDecomposition:
    """One equivalence class: subspins (descending, stored as 2*J_l) and f."""

    j: SpinQuantum
    twice_subspins: tuple[int, ...]

    def __post_init__(self) -> None:
        ordered = tuple(sorted((int(t) for t in self.twice_subspins), reverse=True))
        object.__setattr__(self, "twice_subspins", ordered)
        # validates the dimension count and that some subspin is nonzero
        structure_factor(ordered, self.j)

    @property
    def r(self) -> int:
        return len(self.twice_subspins)

    @property
    def f(self) -> float:
        return structure_factor(self.twice_subspins, self.j)

    def subspin_strings(self, ascending: bool = False) -> list[str]:
        vals = sorted(self.twice_subspins) if ascending else list(self.twice_subspins)
        return [half_integer_str(t) for t in vals]


def decompose_subset(subset: VertexSubset) -> IrrepDecomposition:
    """Decomposition produced by a vertex subset via the run-length rule."""
    covered = set()
    twice = []
    for start, length in subset.runs():
        twice.append(length)
        covered.update(range(start, start + length + 1))  # levels touched by the run
    singles = subset.j.dim - len(covered)
    twice.extend([0] * singles)
    return IrrepDecomposition(subset.j, tuple(twice))


def canonical_subset(decomposition: IrrepDecomposition) -> VertexSubset:
    """A representative vertex subset: blocks laid out left to right, largest first."""
    chosen = []
    level = 1
    for t in decomposition.twice_subspins:
        chosen.extend(range(level, level + t))
        level += t + 1
    if not chosen:
        raise AllTrivialSubspins("no vertices correspond to an all-trivial decomposition")
    return VertexSubset(decomposition.j, frozenset(chosen))


def enumerate_classes(j: SpinQuantum) -> list[IrrepDecomposition]:
    """All distinct classes, sorted by (r, subspins descending-lexicographic)."""
    return [dec for dec, _ in class_representatives(j)]


def class_representatives(j: SpinQuantum) -> list[tuple[IrrepDecomposition, VertexSubset]]:
    """Distinct classes paired with the first vertex subset that produces each."""
    if j.twice_j < 1:
        raise ValueError("classification needs 2J >= 1")
    seen: dict[tuple[int, ...], VertexSubset] = {}
    for mask in range(1, 1 << j.twice_j):
        subset = VertexSubset(j, frozenset(k + 1 for k in range(j.twice_j) if mask >> k & 1))
        dec = decompose_subset(subset)
        seen.setdefault(dec.twice_subspins, subset)
    pairs = [(IrrepDecomposition(j, key), sub) for key, sub in seen.items()]
    pairs.sort(key=lambda p: (p[0].r, tuple(-t for t in p[0].twice_subspins)))
    return pairs


@dataclass(frozen=True)
class Su2Triple:
    """Concrete matrices (O1, O2, O3) realizing one class, with block layout.

    blocks lists (row_offset, 2*J_l) in the order matching the decomposition's
    subspins, i.e. coherent-state weights zeta_l attach to blocks[l].
    """

    j: SpinQuantum
    o1: HermitianOperator
    o2: HermitianOperator
    o3: HermitianOperator
    decomposition: IrrepDecomposition
    blocks: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        f = self.decomposition.f
        o1, o2, o3 = self.o1.matrix, self.o2.matrix, self.o3.matrix
        plus = o1 + 1j * o2
        resid = np.max(np.abs(o3 @ plus - plus @ o3 - f * plus))
        if resid > COMMUTATION_TOL:
            raise NotAnSu2Triple(f"[O3, O+] != f O+ (residual {resid:.3e})")
        minus = plus.conj().T
        resid = np.max(np.abs(o3 @ minus - minus @ o3 + f * minus))
        if resid > COMMUTATION_TOL:
            raise NotAnSu2Triple(f"[O3, O-] != -f O- (residual {resid:.3e})")


def build_su2_triple(subset: VertexSubset) -> Su2Triple:
    """Block direct-sum realization of the subset's class in the m_z basis.

    Each run of chosen vertices carries the spin matrices of its subspin,
    scaled by f; untouched levels stay zero.  O3 is diagonal by construction.
    """
    dec = decompose_subset(subset)
    f = dec.f
    dim = subset.j.dim
    mats = [np.zeros((dim, dim), dtype=complex) for _ in range(3)]

    # blocks from runs (subspin > 0), then singlets, ordered like dec.twice_subspins
    run_blocks = sorted(
        ((start - 1, length) for start, length in subset.runs()),
        key=lambda b: (-b[1], b[0]),
    )
    covered = set()
    for off, length in run_blocks:
        covered.update(range(off, off + length + 1))
    singles = [(lev, 0) for lev in range(dim) if lev not in covered]
    blocks = tuple(run_blocks + singles)

    for off, twice_sub in blocks:
        if twice_sub == 0:
            continue
        sub = spin_matrices(SpinQuantum(twice_sub))
        size = twice_sub + 1
        for target, source in zip(mats, sub):
            target[off : off + size, off : off + size] += f * source.matrix
    return Su2Triple(
        subset.j,
        HermitianOperator(mats[0]),
        HermitianOperator(mats[1]),
        HermitianOperator(mats[2]),
        dec,
        blocks,
    )


def _subspins_from_spectrum(triple: Su2Triple) -> tuple[int, ...]:
    """Recover the subspin multiset from the spectrum of O3/f."""
    eig = np.sort(np.linalg.eigvalsh(triple.o3.matrix) / triple.decomposition.f)
    twice_vals = []
    for e in eig:
        t = round(2 * e)
        if abs(2 * e - t) > SPECTRUM_CLUSTER_TOL:
            raise NotAnSu2Triple(f"O3/f eigenvalue {e} is not a half-integer")
        twice_vals.append(t)
    remaining = sorted(twice_vals, reverse=True)
    found = []
    while remaining:
        top = remaining[0]
        if top < 0:
            raise NotAnSu2Triple("O3/f spectrum is not a union of spin multiplets")
        found.append(top)
        for m in range(top, -top - 2, -2):  # 2m = top, top-2, ..., -top
            try:
                remaining.remove(m)
            except ValueError:
                raise NotAnSu2Triple("O3/f spectrum is not a union of spin multiplets") from None
    return tuple(sorted(found, reverse=True))


def equivalence_check(a: Su2Triple, b: Su2Triple) -> bool:
    """True iff both triples decompose into the same subspin multiset.

    Subspins are extracted from the O3/f spectra and cross-checked against the
    stored decompositions; the commutation invariant was already enforced at
    construction.
    """
    if a.j != b.j:
        raise DimensionMismatch("triples live in different su(2J+1) algebras")
    spec_a = _subspins_from_spectrum(a)
    spec_b = _subspins_from_spectrum(b)
    if spec_a != a.decomposition.twice_subspins or spec_b != b.decomposition.twice_subspins:
        raise NotAnSu2Triple("stored decomposition disagrees with the O3 spectrum")
    return spec_a == spec_b
