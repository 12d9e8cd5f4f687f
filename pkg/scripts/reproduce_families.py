"""Run the procedure on sampled members of each family and summarise worst errors."""
from __future__ import annotations

import argparse
from collections import defaultdict

from qree.verify import FAMILY_ORDER, VerifyConfig, run_verification


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--oracle", action="store_true", help="include numeric REE rows (slower)")
    args = ap.parse_args()

    cfg = VerifyConfig(samples=args.samples, seed=args.seed, oracle=args.oracle)
    rows = run_verification(FAMILY_ORDER, cfg)

    worst = defaultdict(float)
    fails = defaultdict(int)
    for r in rows:
        key = (r.family, r.quantity)
        if r.comparison == "abs":
            worst[key] = max(worst[key], r.abs_error)
        else:
            worst[key] = min(worst.get(key, float("inf")), r.abs_error)
        fails[key] += not r.passed

    print(f"{'family':<6} {'quantity':<24} {'worst':>12} {'failures':>9}")
    for (fam, qty), value in worst.items():
        print(f"{fam:<6} {qty:<24} {value:>12.3e} {fails[fam, qty]:>9d}")


if __name__ == "__main__":
    main()
