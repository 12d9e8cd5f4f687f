"""Scan Horodecki-type states: procedure REE versus the true REE.

Walks from the generalized-Horodecki limit (A = D = lambda1/2) outward by
lowering D at fixed A, and prints how far the procedure's closest
separable state drifts from the true one.
"""
from __future__ import annotations

import argparse

import numpy as np

from qree.families import HorodeckiTypeSpec, horodecki_type
from qree.oracle import OracleConfig, ree_numeric
from qree.procedure import ree_from_eof


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a1", type=float, default=0.2)
    ap.add_argument("--a4", type=float, default=0.1)
    ap.add_argument("--steps", type=int, default=8)
    ap.add_argument("--oracle", action="store_true")
    args = ap.parse_args()

    a = (1.0 - args.a1 - args.a4) / 2
    print(f"{'D':>8} {'x*':>10} {'procedure':>12} {'true':>12} {'gap':>11} {'css dist':>10}" + ("  oracle" if args.oracle else ""))
    for d in np.linspace(a, 0.5 * a, args.steps):
        spec = HorodeckiTypeSpec(args.a1, args.a4, a, float(d))
        if not spec.entangled:
            continue
        case = horodecki_type(spec)
        trace = ree_from_eof(case.rho)
        dist = np.linalg.norm(trace.sigma_star.matrix - case.true_css.matrix)
        line = (
            f"{d:>8.4f} {case.x_star:>10.6f} {trace.ree_value:>12.8f} {case.true_ree:>12.8f} "
            f"{trace.ree_value - case.true_ree:>11.3e} {dist:>10.3e}"
        )
        if args.oracle:
            line += f"  {ree_numeric(case.rho, OracleConfig(restarts=2)).ree:.8f}"
        print(line)


if __name__ == "__main__":
    main()
