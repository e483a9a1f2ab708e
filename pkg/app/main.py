"""
LNS kit command line.

    python -m app.main gen-table   --p 3 --q 2 [--out PATH]
    python -m app.main convert     9/4 --p 3 --q 2
    python -m app.main verify      --p 4 --q 3 [--table PATH] [--seed N]
    python -m app.main eval        "3/2*3/2 + 1" [--mode tight|loose] [--min A --max B]
    python -m app.main demo-exp    1/3 --p 3 --q 2
    python -m app.main bench-table --p 3 --q 2 [--force]

Exit status: 0 success, 1 a property or axiom failed, 2 usage error.
Reports go to stdout; logging goes to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from app import report, sweeps, table_store
from app.config import settings
from app.errors import AxiomError, InvariantError
from app.exactq import Base, require_admissible
from app.expression import (
    parse_expression,
    parse_rational,
    taylor_exp_tree,
    taylor_exp_tree_reversed,
    taylor_exp_value,
    taylor_input,
)
from app.level2 import RangeConfig, evaluate_level_2
from app.lnscore import (
    build_table,
    compute_table,
    compute_table_reference,
    sizing_report,
    verify_axioms,
)
from app.logconv import (
    floor_log,
    floor_log_fast,
    is_exact_power,
    reference_cost,
    reference_work,
)
from app.tolerance import AddMode, FLOORED, certify_expression, tol_holds

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _base(args: argparse.Namespace) -> Base:
    return require_admissible(Base(p=args.p, q=args.q))


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


def cmd_gen_table(args: argparse.Namespace) -> int:
    base = _base(args)
    table = build_table(base)
    path = args.out or table_store.default_path(base, settings.table_dir)
    table_store.save_table(table, path)
    print(report.table_written(table, str(path)))
    return EXIT_OK


def cmd_convert(args: argparse.Namespace) -> int:
    base = _base(args)
    value = parse_rational(args.value)
    z = floor_log_fast(value, base)
    cost = reference_cost(value, base)
    work = reference_work(value, base, z)
    affordable = cost <= settings.reference_budget and work <= settings.reference_work_budget
    reference = floor_log(value, base) if affordable else None
    print(report.conversion(z, is_exact_power(value, base, z), reference, cost, work))
    if reference is not None and reference != z:
        logger.error("fast and reference conversion disagree for %s in base %s", value, base)
        return EXIT_FAILED
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    if args.table:
        table = table_store.load_table(args.table)
    else:
        table = compute_table(_base(args))
    axioms = verify_axioms(table)
    results = sweeps.addition_log_sweeps(table)
    results.append(sweeps.level1_oracle_sweep(table, settings.sweep_samples, args.seed))
    print(report.verify_report(axioms, results))
    return EXIT_OK if axioms.ok and all(r.ok for r in results) else EXIT_FAILED


def cmd_eval(args: argparse.Namespace) -> int:
    base = _base(args)
    expr = parse_expression(args.expr)
    if (args.min is None) != (args.max is None):
        raise ValueError("--min and --max must be given together")
    table = table_store.get_table(base)
    tr, exact = certify_expression(table, expr, AddMode(args.mode))
    holds = tol_holds(base, tr, exact)
    print(report.certificate(base, tr, exact, holds))
    if args.min is not None:
        cfg = RangeConfig(min_rep=args.min, max_rep=args.max)
        print(evaluate_level_2(cfg, table, expr))
    return EXIT_OK if holds else EXIT_FAILED


def cmd_demo_exp(args: argparse.Namespace) -> int:
    base = _base(args)
    table = table_store.get_table(base)
    x = parse_rational(args.x)
    x_lit = taylor_input(x, FLOORED)
    forward, exact = certify_expression(table, taylor_exp_tree(x_lit))
    reverse, _ = certify_expression(table, taylor_exp_tree_reversed(x_lit))
    forward_ok = forward.tol == sweeps.TAYLOR_CERTIFICATE and tol_holds(base, forward, exact)
    reverse_ok = reverse.tol == sweeps.TAYLOR_REVERSED_CERTIFICATE and tol_holds(
        base, reverse, exact
    )
    if not exact.same_value(taylor_exp_value(x)):
        raise InvariantError(f"e^x program evaluates {exact} for x={x}")
    print(report.taylor(x, forward, reverse, exact, forward_ok, reverse_ok))
    return EXIT_OK if forward_ok and reverse_ok else EXIT_FAILED


def cmd_bench_table(args: argparse.Namespace) -> int:
    base = _base(args)
    sizing = sizing_report(base)
    too_big = sizing.entries > settings.max_table_entries
    too_slow = (
        sizing.naive_iterations > settings.reference_budget
        or sizing.naive_work > settings.reference_work_budget
    )
    if too_big or (too_slow and not args.force):
        logger.warning("bench-table refused for %s", base)
        print(report.bench_refused(sizing, settings.max_table_entries, args.force))
        return EXIT_OK

    started = time.perf_counter()
    naive = compute_table_reference(base)
    naive_seconds = time.perf_counter() - started
    started = time.perf_counter()
    fast = compute_table(base)
    fast_seconds = time.perf_counter() - started

    same = naive == fast
    print(report.bench_result(base, same, len(fast.st)))
    print(report.bench_timings(naive_seconds, fast_seconds))
    return EXIT_OK if same else EXIT_FAILED


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lnskit", description="Verifiable logarithmic number system arithmetic."
    )
    base_args = argparse.ArgumentParser(add_help=False)
    base_args.add_argument("--p", type=int, default=settings.default_p, help="base numerator")
    base_args.add_argument("--q", type=int, default=settings.default_q, help="base denominator")

    commands = parser.add_subparsers(dest="command", required=True)

    gen = commands.add_parser("gen-table", parents=[base_args], help="write an LNS1 table")
    gen.add_argument("--out", help="output path (default: <table_dir>/lns1-P-Q.txt)")
    gen.set_defaults(handler=cmd_gen_table)

    convert = commands.add_parser("convert", parents=[base_args], help="floor_log of N/D")
    convert.add_argument("value", help="positive rational N or N/D")
    convert.set_defaults(handler=cmd_convert)

    verify = commands.add_parser("verify", parents=[base_args], help="check axioms and properties")
    verify.add_argument("--table", help="verify this LNS1 file instead of building one")
    verify.add_argument("--seed", type=int, default=settings.sweep_seed)
    verify.set_defaults(handler=cmd_verify)

    evaluate = commands.add_parser("eval", parents=[base_args], help="certify an expression")
    evaluate.add_argument("expr")
    evaluate.add_argument("--mode", choices=[m.value for m in AddMode], default="loose")
    evaluate.add_argument("--min", type=int, help="Level-2 minimum representation")
    evaluate.add_argument("--max", type=int, help="Level-2 maximum representation")
    evaluate.set_defaults(handler=cmd_eval)

    demo = commands.add_parser("demo-exp", parents=[base_args], help="e^x Taylor certificate")
    demo.add_argument("x", help="positive rational input")
    demo.set_defaults(handler=cmd_demo_exp)

    bench = commands.add_parser("bench-table", parents=[base_args],
                                help="naive against fast table construction")
    bench.add_argument("--force", action="store_true",
                       help="run the naive build above the iteration budget")
    bench.set_defaults(handler=cmd_bench_table)
    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=settings.log_level)
    args = build_parser().parse_args(argv)
    logger.info("Running %s", args.command)
    try:
        return args.handler(args)
    except AxiomError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except InvariantError as exc:
        logger.error("invariant failed: %s", exc)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
