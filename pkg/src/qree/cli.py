"""``qree`` command line.

Exit codes: 0 success, 1 verification or procedure failure, 2 bad input.
Set ``QREE_LOG`` to ``quiet``, ``info`` or ``debug`` for stderr diagnostics.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from .errors import InfeasibleMixingError, SeparableStateError, ValidationError
from .measures import MeasureReport, Method, concurrence_mixed, eof
from .oracle import OracleConfig, ree_numeric
from .procedure import ree_from_eof
from .schmidt import ree_pure
from .statefile import dumps, load_state, trace_to_dict
from .verify import FAMILY_ORDER, VerifyConfig, format_table, run_verification

log = logging.getLogger("qree")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2

LOG_LEVELS = {"quiet": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}


def _configure_logging() -> None:
    level = LOG_LEVELS.get(os.environ.get("QREE_LOG", "quiet").lower(), logging.ERROR)
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True)


def _print_rows(pairs) -> None:
    width = max(len(k) for k, _ in pairs)
    for key, value in pairs:
        text = f"{value:.6f}" if isinstance(value, float) else str(value)
        print(f"{key:<{width}}  {text}")


def cmd_measure(args) -> int:
    state = load_state(args.file)
    rho = state.rho
    if state.pure is not None:
        report = MeasureReport(concurrence_mixed(rho), eof(rho), ree_pure(state.pure), Method.CLOSED_FORM)
    else:
        trace = ree_from_eof(rho)
        report = MeasureReport(concurrence_mixed(rho), eof(rho), trace.ree_value, Method.PROCEDURE)
    out = report.as_dict()
    if args.oracle:
        out["oracle_ree"] = ree_numeric(rho).ree
    if args.json:
        print(json.dumps(out))
    else:
        _print_rows(list(out.items()))
    return EXIT_OK


def cmd_trace(args) -> int:
    state = load_state(args.file)
    trace = ree_from_eof(state.rho)
    text = dumps(trace_to_dict(trace, state.raw))
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return EXIT_OK


def cmd_verify(args) -> int:
    families = FAMILY_ORDER if args.family == "all" else (args.family,)
    cfg = VerifyConfig(
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        oracle=not args.no_oracle,
        oracle_restarts=args.oracle_restarts,
    )
    rows = run_verification(families, cfg)
    failed = [r for r in rows if not r.passed]
    if args.json:
        print(json.dumps([r.as_dict() for r in rows]))
    else:
        print(format_table(rows))
        print(f"\n{len(rows) - len(failed)}/{len(rows)} rows pass")
        if failed:
            print("\nfailing rows:")
            print(format_table(failed))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_oracle(args) -> int:
    state = load_state(args.file)
    cfg = OracleConfig(restarts=args.restarts, max_iters=args.iters, tol=args.tol, seed=args.seed)
    res = ree_numeric(state.rho, cfg)
    out = res.as_dict()
    out["sigma"] = [[[z.real, z.imag] for z in row] for row in res.sigma.matrix.tolist()]
    print(json.dumps(out))
    return EXIT_OK


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qree", description="Two-qubit entanglement measures and REE checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("measure", help="concurrence, EOF and REE of a state file")
    p.add_argument("file")
    p.add_argument("--oracle", action="store_true", help="also run the numeric REE minimiser")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("trace", help="write every intermediate of the EOF-to-REE procedure")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True, help="output path, or - for stdout")
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("verify", help="compare against closed forms on sampled family members")
    p.add_argument("--family", choices=("all",) + FAMILY_ORDER, default="all")
    p.add_argument("--samples", type=_positive_int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=_positive_float, default=1e-8, help="Frobenius tolerance for matrix rows")
    p.add_argument("--oracle-restarts", type=_positive_int, default=2)
    p.add_argument("--no-oracle", action="store_true", help="skip the numeric REE rows")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("oracle", help="numeric REE by minimising over product-state mixtures")
    p.add_argument("file")
    p.add_argument("--restarts", type=_positive_int, default=8)
    p.add_argument("--iters", type=_positive_int, default=2000)
    p.add_argument("--tol", type=_positive_float, default=1e-7)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, SeparableStateError, ValueError) as exc:
        print(f"qree: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"qree: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleMixingError as exc:
        print(f"qree: procedure failed: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
