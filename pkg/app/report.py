"""
Report text for every CLI command.

Rationals are printed exactly as N/D in lowest terms; nothing here goes
through floating point. Only ``bench_timings`` prints measured times, and it
is always the last section of the bench output.
"""

from __future__ import annotations

from app.config import settings
from app.exactq import Base, PosRational, pow_rational
from app.lnscore import AxiomReport, SizingReport, SumTable
from app.sweeps import SweepResult
from app.tolerance import TolRep


def rational(value: PosRational) -> str:
    return str(value.reduced())


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# ---------------------------------------------------------------------------
# Tables
# ---------------------------------------------------------------------------


def table_written(table: SumTable, path: str) -> str:
    return (
        f"base {table.base}\n"
        f"SEZ={table.sez}\n"
        f"entries={len(table.st)}\n"
        f"written to {path}"
    )


def axiom_lines(report: AxiomReport) -> list[str]:
    lines = []
    for check in report.checks:
        line = f"axiom ({check.axiom}): {_status(check.passed)}"
        if not check.passed:
            line += f"  {check.detail}"
        lines.append(line)
    return lines


def sweep_line(result: SweepResult) -> str:
    line = f"{result.name}: {_status(result.ok)} ({result.checked} checked)"
    if not result.ok:
        line += f"  {result.counterexample}"
    return line


def verify_report(report: AxiomReport, sweeps: list[SweepResult]) -> str:
    lines = [f"base {report.base}", f"SEZ={report.sez}"]
    lines.extend(axiom_lines(report))
    lines.extend(sweep_line(s) for s in sweeps)
    for result in sweeps:
        lines.extend(f"note: {note}" for note in result.notes)
    ok = report.ok and all(s.ok for s in sweeps)
    lines.append("all properties hold" if ok else "verification FAILED")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# Conversion and evaluation
# ---------------------------------------------------------------------------


def conversion(z: int, exact: bool, reference: int | None, cost: int, work: int) -> str:
    line = f"Z={z} {'exact' if exact else 'inexact'}"
    if reference is None:
        return (
            f"{line}\nreference: skipped ({cost} iterations, about {work} bit-operations; "
            f"budgets {settings.reference_budget} and {settings.reference_work_budget})"
        )
    return f"{line}\nreference: Z={reference} {'agrees' if reference == z else 'DISAGREES'}"


def certificate(base: Base, tr: TolRep, exact: PosRational, holds: bool) -> str:
    lo, hi = tr.lo_exponent, tr.hi_exponent
    return (
        f"Z={tr.rep}\n"
        f"tol={tr.tol}\n"
        f"lower=b^{lo}={rational(pow_rational(base, lo))}\n"
        f"upper=b^{hi}={rational(pow_rational(base, hi))}\n"
        f"exact={rational(exact)}\n"
        f"{_status(holds)}"
    )


def taylor(
    x: PosRational,
    forward: TolRep,
    reverse: TolRep,
    exact: PosRational,
    forward_ok: bool,
    reverse_ok: bool,
) -> str:
    return (
        f"x={rational(x)}\n"
        f"e^x ~ {rational(exact)}\n"
        f"x^3/6 + (x^2/2 + (x + 1)): Z={forward.rep} tol={forward.tol} "
        f"{_status(forward_ok)}\n"
        f"((x^3/6 + x^2/2) + x) + 1: Z={reverse.rep} tol={reverse.tol} "
        f"{_status(reverse_ok)}"
    )


# ---------------------------------------------------------------------------
# Sizing and benchmark
# ---------------------------------------------------------------------------


def sizing(report: SizingReport) -> str:
    return (
        f"base {report.base}\n"
        f"precision F={report.precision}\n"
        f"floor(log_b 2)={report.log_b_two}\n"
        f"SEZ={report.sez}\n"
        f"entries={report.entries} (2^{report.entries_log2} or more)\n"
        f"naive build loop iterations ~ {report.naive_iterations}\n"
        f"naive build bit-operations ~ {report.naive_work}"
    )


def bench_refused(report: SizingReport, limit: int, forced: bool) -> str:
    lines = [sizing(report)]
    if report.entries > limit:
        lines.append(
            f"refused: {report.entries} entries exceed the table limit of {limit}; "
            f"the naive search would also need about {report.naive_iterations} "
            f"iterations on integers growing with every step"
        )
    elif not forced:
        lines.append(
            f"refused: naive build needs about {report.naive_iterations} iterations and "
            f"{report.naive_work} bit-operations, above the budgets of "
            f"{settings.reference_budget} and {settings.reference_work_budget}; "
            f"rerun with --force"
        )
    return "\n".join(lines)


def bench_result(base: Base, same: bool, entries: int) -> str:
    return (
        f"base {base}\n"
        f"entries={entries}\n"
        f"tables {'identical' if same else 'DIFFER'}"
    )


def bench_timings(naive_seconds: float, fast_seconds: float) -> str:
    ratio = naive_seconds / fast_seconds if fast_seconds > 0 else float("inf")
    return (
        "--- timings ---\n"
        f"naive {naive_seconds:.6f}s\n"
        f"fast  {fast_seconds:.6f}s\n"
        f"ratio {ratio:.1f}"
    )
