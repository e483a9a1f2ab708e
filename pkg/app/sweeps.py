"""
Seeded property sweeps.

Each sweep checks one property over a deterministic sample and returns a
``SweepResult``: how many cases were checked and the first counterexample,
if any. ``verify`` prints them; the test suite asserts on them.
"""

from __future__ import annotations

import logging
import random
from typing import Callable

from pydantic import BaseModel, ConfigDict

from app.config import settings
from app.errors import LnsError, SoundnessError
from app.exactq import Base, Ordering, PosRational, cmp_pow, pow_plus_one, pow_rational
from app.expression import (
    Add,
    Div,
    Expr,
    Mult,
    lit,
    taylor_exp_tree,
    taylor_exp_tree_reversed,
    taylor_exp_value,
    taylor_input,
)
from app.level2 import (
    InRange,
    OutOfRange,
    RangeConfig,
    add_level_2,
    div_level_2,
    in_range,
    mult_level_2,
)
from app.lnscore import (
    SumTable,
    add_level_1,
    build_table,
    div_level_1,
    exact_rep,
    mult_level_1,
    s_quantized,
    sez_pq,
)
from app.logconv import floor_log, floor_log_fast
from app.tolerance import AddMode, FLOORED, Tolerance, certify_expression, convert_literal

logger = logging.getLogger(__name__)

TAYLOR_CERTIFICATE = Tolerance(t_lo=-1, t_hi=4)
TAYLOR_REVERSED_CERTIFICATE = Tolerance(t_lo=-1, t_hi=6)


class SweepResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    checked: int
    counterexample: str | None = None
    notes: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.counterexample is None


def _run(name: str, cases, check: Callable[..., str | None]) -> SweepResult:
    checked = 0
    for case in cases:
        checked += 1
        problem = check(case)
        if problem is not None:
            logger.warning("%s failed: %s", name, problem)
            return SweepResult(name=name, checked=checked, counterexample=problem)
    return SweepResult(name=name, checked=checked)


# ---------------------------------------------------------------------------
# Addition logarithm
# ---------------------------------------------------------------------------


def sweep_points(sez: int, cap: int | None = None) -> list[int]:
    """
    Z values in [-3*SEZ, 3*SEZ], every one of them when there are at most
    ``cap``, otherwise an even stride plus the points around 0, +-SEZ and the
    ends of the range.
    """
    cap = settings.sweep_cap if cap is None else cap
    span = 3 * max(sez, 1)
    if 2 * span + 1 <= cap:
        return list(range(-span, span + 1))
    edges = {
        z
        for centre in (-span, -sez, 0, sez, span)
        for z in range(centre - 2, centre + 3)
        if -span <= z <= span
    }
    stride = -(-(2 * span + 1) // max(cap - len(edges), 1))
    return sorted(edges.union(range(-span, span + 1, stride)))


def sum_bracket_sweep(table: SumTable, cap: int | None = None) -> SweepResult:
    """b^S(Z) <= b^Z + 1 < b^(S(Z)+1) for every sampled Z."""
    base = table.base

    def check(z: int) -> str | None:
        s = s_quantized(table, z)
        value = pow_plus_one(base, z)
        if cmp_pow(value, base, s) is Ordering.LESS:
            return f"Z={z}: b^{s} > b^{z} + 1"
        if cmp_pow(value, base, s + 1) is not Ordering.LESS:
            return f"Z={z}: b^{z} + 1 >= b^{s + 1}"
        return None

    return _run("sum bracket", sweep_points(table.sez, cap), check)


def reflection_sweep(table: SumTable, cap: int | None = None) -> SweepResult:
    def check(z: int) -> str | None:
        lhs, rhs = s_quantized(table, z), s_quantized(table, -z) + z
        return None if lhs == rhs else f"Z={z}: S(Z)={lhs}, S(-Z)+Z={rhs}"

    return _run("reflection", sweep_points(table.sez, cap), check)


def first_difference_sweep(table: SumTable, cap: int | None = None) -> SweepResult:
    def check(z: int) -> str | None:
        step = s_quantized(table, z + 1) - s_quantized(table, z)
        return None if 0 <= step <= 1 else f"Z={z}: S(Z+1)-S(Z)={step}"

    return _run("first difference", sweep_points(table.sez, cap), check)


def addition_log_sweeps(table: SumTable, cap: int | None = None) -> list[SweepResult]:
    return [
        sum_bracket_sweep(table, cap),
        reflection_sweep(table, cap),
        first_difference_sweep(table, cap),
    ]


# ---------------------------------------------------------------------------
# Level 1 against exact arithmetic
# ---------------------------------------------------------------------------


def level1_oracle_sweep(table: SumTable, samples: int, seed: int) -> SweepResult:
    """
    Exact inputs b^x and b^y: products and quotients stay exact, and the sum's
    representation is the floor_log of the exact sum.
    """
    rng = random.Random(seed)
    base = table.base
    reach = table.sez + 2
    pairs = []
    for _ in range(samples):
        x = rng.randint(-2 * reach, 2 * reach)
        pairs.append((x, x + rng.randint(-reach, reach)))

    def check(pair: tuple[int, int]) -> str | None:
        x, y = pair
        bx, by = pow_rational(base, x), pow_rational(base, y)
        if not exact_rep(mult_level_1(x, y), bx * by, base):
            return f"mult({x}, {y}) is not exact"
        if not exact_rep(div_level_1(x, y), bx / by, base):
            return f"div({x}, {y}) is not exact"
        z = add_level_1(table, x, y)
        expected = floor_log_fast(bx + by, base)
        if z != expected:
            return f"add({x}, {y}) = {z}, floor_log of the sum is {expected}"
        if z != y + s_quantized(table, x - y):
            return f"add({x}, {y}) = {z} differs from Y + S(X - Y)"
        return None

    return _run("level-1 oracle", pairs, check)


# ---------------------------------------------------------------------------
# Conversion
# ---------------------------------------------------------------------------


def random_base(rng: random.Random, max_p: int) -> Base:
    """A base with 1 < Q < P < 2Q and P <= max_p."""
    p = rng.randint(3, max_p)
    return Base(p=p, q=rng.randint(p // 2 + 1, p - 1))


def conversion_sweep(
    samples: int,
    seed: int,
    max_nd: int = 10**6,
    max_p: int = 10**4,
    max_steps: int = 4096,
) -> SweepResult:
    """
    floor_log_fast against the reference floor_log, plus the bracket
    b^Z <= N/D < b^(Z+1) on each result.

    The reference loop runs |Z| times, so tuples whose answer lies further
    than ``max_steps`` from zero are redrawn.
    """
    rng = random.Random(seed)
    cases: list[tuple[PosRational, Base, int]] = []
    while len(cases) < samples:
        base = random_base(rng, max_p)
        value = PosRational(num=rng.randint(1, max_nd), den=rng.randint(1, max_nd))
        z = floor_log_fast(value, base)
        if abs(z) <= max_steps:
            cases.append((value, base, z))

    def check(case: tuple[PosRational, Base, int]) -> str | None:
        value, base, z = case
        reference = floor_log(value, base)
        if reference != z:
            return f"{value} base {base}: fast {z}, reference {reference}"
        if cmp_pow(value, base, z) is Ordering.LESS or (
            cmp_pow(value, base, z + 1) is not Ordering.LESS
        ):
            return f"{value} base {base}: Z={z} does not bracket"
        return None

    return _run("conversion", cases, check)


# ---------------------------------------------------------------------------
# Tolerance soundness
# ---------------------------------------------------------------------------


def random_expression(rng: random.Random, depth: int, max_literal: int = 50) -> Expr:
    if depth == 0 or rng.random() < 0.25:
        return lit(rng.randint(1, max_literal), rng.randint(1, max_literal))
    node = rng.choice((Mult, Div, Add))
    return node(
        left=random_expression(rng, depth - 1, max_literal),
        right=random_expression(rng, depth - 1, max_literal),
    )


def tolerance_sweep(table: SumTable, samples: int, seed: int, depth: int = 6) -> SweepResult:
    """Both addition modes certify soundly and the tight bound sits inside the loose one."""
    rng = random.Random(seed)
    trees = [random_expression(rng, depth) for _ in range(samples)]

    def check(tree: Expr) -> str | None:
        try:
            tight, _ = certify_expression(table, tree, AddMode.TIGHT)
            loose, _ = certify_expression(table, tree, AddMode.LOOSE)
        except SoundnessError as exc:
            return str(exc)
        if tight.rep != loose.rep:
            return f"{tree}: tight Z={tight.rep}, loose Z={loose.rep}"
        if tight.lo_exponent < loose.lo_exponent or tight.hi_exponent > loose.hi_exponent:
            return f"{tree}: tight {tight.tol} not inside loose {loose.tol}"
        return None

    return _run("tolerance soundness", trees, check)


def taylor_sweep(table: SumTable, samples: int, seed: int, max_literal: int = 50) -> SweepResult:
    """
    The e^x program over inexact inputs x < 1 certifies to (-1, 4), the
    reversed summation order to (-1, 6), and both contain the exact value.
    """
    rng = random.Random(seed)
    base = table.base
    inputs: list[PosRational] = []
    while len(inputs) < samples:
        den = rng.randint(2, max_literal)
        x = PosRational(num=rng.randint(1, den - 1), den=den)
        if convert_literal(base, x).tol == FLOORED:
            inputs.append(x)

    def check(x: PosRational) -> str | None:
        x_lit = taylor_input(x)
        try:
            forward, value = certify_expression(table, taylor_exp_tree(x_lit))
            reverse, _ = certify_expression(table, taylor_exp_tree_reversed(x_lit))
        except SoundnessError as exc:
            return str(exc)
        if not value.same_value(taylor_exp_value(x)):
            return f"x={x}: program value {value} is not 1 + x + x^2/2 + x^3/6"
        if forward.tol != TAYLOR_CERTIFICATE:
            return f"x={x}: certificate {forward.tol}"
        if reverse.tol != TAYLOR_REVERSED_CERTIFICATE:
            return f"x={x}: reversed certificate {reverse.tol}"
        return None

    return _run("taylor certificate", inputs, check)


# ---------------------------------------------------------------------------
# Level 2
# ---------------------------------------------------------------------------


def _level2_ops(table: SumTable) -> dict[str, tuple[Callable, Callable]]:
    return {
        "mult": (lambda cfg, x, y: mult_level_2(cfg, x, y), mult_level_1),
        "div": (lambda cfg, x, y: div_level_2(cfg, x, y), div_level_1),
        "add": (
            lambda cfg, x, y: add_level_2(cfg, table, x, y),
            lambda x, y: add_level_1(table, x, y),
        ),
    }


def _random_range(rng: random.Random) -> RangeConfig:
    low = rng.randint(-20, 5)
    return RangeConfig(min_rep=low, max_rep=low + rng.randint(1, 30))


def level2_sweep(table: SumTable, samples: int, seed: int) -> SweepResult:
    """
    In-range Level-2 results equal Level 1 and come from in-range operands;
    an out-of-range operand poisons a chain of three further operations.
    """
    rng = random.Random(seed)
    ops = _level2_ops(table)
    cases = []
    for name in ops:
        for _ in range(samples):
            cfg = _random_range(rng)
            x = rng.randint(cfg.min_rep - 5, cfg.max_rep + 5)
            y = rng.randint(cfg.min_rep - 5, cfg.max_rep + 5)
            chain = [
                (rng.choice(list(ops)), rng.randint(cfg.min_rep, cfg.max_rep), rng.random() < 0.5)
                for _ in range(3)
            ]
            cases.append((name, cfg, x, y, chain))

    def check(case) -> str | None:
        name, cfg, x, y, chain = case
        level2, level1 = ops[name]
        result = level2(cfg, x, y)
        if isinstance(result, InRange):
            if result.z != level1(x, y):
                return f"{name}({x}, {y}) in {cfg}: {result.z} != level 1 {level1(x, y)}"
            if not (in_range(cfg, x) and in_range(cfg, y)):
                return f"{name}({x}, {y}) in {cfg}: in range from out-of-range operands"
        elif result.sentinel != cfg.max_rep + 1 or in_range(cfg, result.sentinel):
            return f"{name}({x}, {y}) in {cfg}: bad signal {result.sentinel}"

        z = cfg.max_rep + 1
        for step, other, signal_left in chain:
            op = ops[step][0]
            value = op(cfg, z, other) if signal_left else op(cfg, other, z)
            if not isinstance(value, OutOfRange):
                return f"{step} with the signal in {cfg} gave {value}"
            z = value.encode()
        return None

    return _run("level-2 agreement", cases, check)


# ---------------------------------------------------------------------------
# Admissible bases
# ---------------------------------------------------------------------------


def base_family_sweep(samples: int, seed: int, max_p: int = 2**12) -> SweepResult:
    """
    Random admissible bases: every base with SEZ >= 1 builds a table that
    passes the axiom checks. Bases with SEZ = 0 cannot meet axiom (2); they
    are listed in ``notes`` and not counted as checked.
    """
    rng = random.Random(seed)
    notes: list[str] = []
    checked = 0
    while checked < samples:
        base = random_base(rng, max_p)
        if sez_pq(base) == 0:
            notes.append(f"{base}: SEZ=0, axiom (2) cannot hold")
            continue
        checked += 1
        try:
            build_table(base)
        except LnsError as exc:
            logger.warning("base family sweep failed at %s", base)
            return SweepResult(
                name="admissible bases", checked=checked,
                counterexample=f"{base}: {exc}", notes=tuple(notes),
            )
    return SweepResult(name="admissible bases", checked=checked, notes=tuple(notes))
