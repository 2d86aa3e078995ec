#!/usr/bin/env python3
"""Exhaustive small-N audit of the closed-form dynamics against brute force.

Sweeps every spin-3/2 class over particle numbers, weight settings, and a mu
grid, comparing the analytic mean spin, extremal transverse variances, and
squeezing parameter with the exact symmetric-subspace simulation.  Prints the
worst absolute discrepancies; anything above 1e-9 is a red flag.
"""

import argparse
import math

import numpy as np

from spinsqueeze import (
    OracleWorkspace,
    SpinQuantum,
    VertexSubset,
    build_su2_triple,
    css_expectation_perp,
    oat_spec,
    squeeze_trace,
)

WEIGHTS = {
    1: [(1.0,)],
    2: [(1.0, 0.0), (0.75, 0.25), (0.5, 0.5)],
    3: [(1.0, 0.0, 0.0), (0.6, 0.3, 0.1), (0.5, 0.0, 0.5)],
}


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-max", type=int, default=10)
    ap.add_argument("--mu-points", type=int, default=40)
    args = ap.parse_args()

    j32 = SpinQuantum(3)
    mu_grid = np.linspace(0.0, math.pi, args.mu_points)
    overall = 0.0
    for subset in ({1, 2, 3}, {1, 2}, {1, 3}, {1}):
        triple = build_su2_triple(VertexSubset(j32, frozenset(subset)))
        dec = triple.decomposition
        worst = 0.0
        for n in range(2, args.n_max + 1):
            ws = OracleWorkspace(triple, n)
            for w in WEIGHTS[dec.r]:
                spec = oat_spec(dec, n, tuple(math.sqrt(x) for x in w))
                mean0 = abs(css_expectation_perp(spec))
                for mu in mu_grid:
                    a = squeeze_trace(spec, float(mu))
                    o = ws.squeezing(spec.coherent, float(mu))
                    worst = max(
                        worst,
                        abs(a.perp_expectation - o.perp_expectation),
                        abs(a.var_min - o.var_min),
                        abs(a.var_max - o.var_max),
                    )
                    if abs(a.perp_expectation) >= 1e-4 * mean0 and math.isfinite(o.xi2):
                        worst = max(worst, abs(a.xi2 - o.xi2) / max(1.0, abs(o.xi2)))
        print(f"subspins {dec.subspin_strings()}: worst discrepancy {worst:.3e}")
        overall = max(overall, worst)
    print(f"overall: {overall:.3e}")
    return 0 if overall <= 1e-9 else 2


if __name__ == "__main__":
    raise SystemExit(main())
