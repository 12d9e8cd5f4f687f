"""Regenerate the golden procedure traces under tests/golden/."""
from __future__ import annotations

import argparse
from pathlib import Path

from qree.procedure import ree_from_eof
from qree.statefile import dumps, parse_state, trace_to_dict

GOLDEN_INPUTS = {
    "bd": {"kind": "family", "name": "bell_diagonal",
           "params": {"lambda1": 0.1, "lambda2": 0.15, "lambda3": 0.6, "lambda4": 0.15}},
    "gvp": {"kind": "family", "name": "gvp", "params": {"lambda1": 0.5, "lambda2": 0.3, "lambda3": 0.2}},
    "gh": {"kind": "family", "name": "gen_horodecki", "params": {"lambda1": 0.6, "lambda2": 0.3, "lambda3": 0.1}},
    "vpt": {"kind": "family", "name": "vp_type", "params": {"A2": 0.7, "A3": 0.3, "D": 0.4}},
    "ht": {"kind": "family", "name": "horodecki_type", "params": {"A1": 0.2, "A4": 0.1, "A": 0.35, "D": 0.3}},
}


def render(source: dict) -> str:
    trace = ree_from_eof(parse_state(source).rho)
    return dumps(trace_to_dict(trace, source))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parents[1] / "tests" / "golden")
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for short, source in GOLDEN_INPUTS.items():
        path = args.out / f"{short}.json"
        path.write_text(render(source), encoding="utf-8")
        print(path)


if __name__ == "__main__":
    main()
