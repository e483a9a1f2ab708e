"""
Tolerance calculus for Level-1 programs.

A tolerance (T_L, T_H) relates a representation Z to the exact rational N/D
it tracks:

    b^(Z + T_L) <= N/D <= b^(Z + T_H)

Both ends are closed, so the tolerance (0, 0) says exactly what ``exact_rep``
says. The propagation rules below carry tolerances through mult, reciprocal,
div and add; ``certify_expression`` applies them to a whole expression tree
while computing the exact value alongside, and refuses to return a
certificate the exact value does not satisfy.
"""

from __future__ import annotations

import enum
import logging

from pydantic import BaseModel, ConfigDict, model_validator

from app.errors import SoundnessError, UnsupportedOperationError
from app.exactq import Base, PosRational, in_closed_interval
from app.lnscore import (
    Rep,
    SumTable,
    add_level_1,
    div_level_1,
    exact_rep,
    mult_level_1,
    s_quantized,
)
from app.logconv import floor_log_fast

logger = logging.getLogger(__name__)


class Tolerance(BaseModel):
    model_config = ConfigDict(frozen=True)

    t_lo: int
    t_hi: int

    @model_validator(mode="after")
    def _ordered(self) -> Tolerance:
        if self.t_lo > self.t_hi:
            raise ValueError(f"tolerance ({self.t_lo}, {self.t_hi}) has t_lo > t_hi")
        return self

    @classmethod
    def of(cls, t_lo: int, t_hi: int) -> Tolerance:
        return cls(t_lo=t_lo, t_hi=t_hi)

    @property
    def width(self) -> int:
        return self.t_hi - self.t_lo

    def __str__(self) -> str:
        return f"({self.t_lo},{self.t_hi})"


EXACT = Tolerance(t_lo=0, t_hi=0)
FLOORED = Tolerance(t_lo=0, t_hi=1)


class TolRep(BaseModel):
    model_config = ConfigDict(frozen=True)

    rep: Rep
    tol: Tolerance

    @property
    def lo_exponent(self) -> int:
        return self.rep + self.tol.t_lo

    @property
    def hi_exponent(self) -> int:
        return self.rep + self.tol.t_hi


class AddMode(str, enum.Enum):
    TIGHT = "tight"
    LOOSE = "loose"


# ---------------------------------------------------------------------------
# Predicate and propagation rules
# ---------------------------------------------------------------------------


def tol_holds(base: Base, tr: TolRep, value: PosRational) -> bool:
    return in_closed_interval(value, base, tr.lo_exponent, tr.hi_exponent)


def tol_mult(x: Tolerance, y: Tolerance) -> Tolerance:
    return Tolerance(t_lo=x.t_lo + y.t_lo, t_hi=x.t_hi + y.t_hi)


def tol_recip(x: Tolerance) -> Tolerance:
    return Tolerance(t_lo=-x.t_hi, t_hi=-x.t_lo)


def tol_div(x: Tolerance, y: Tolerance) -> Tolerance:
    return Tolerance(t_lo=x.t_lo - y.t_hi, t_hi=x.t_hi - y.t_lo)


def tol_add_tight(table: SumTable, x: TolRep, y: TolRep) -> TolRep:
    """Sum anchored at x: Z = X + S(Y - X), tolerances from the S differences."""
    s = s_quantized(table, y.rep - x.rep)
    t_lo = (
        x.tol.t_lo
        + s_quantized(table, y.rep + y.tol.t_lo - x.rep - x.tol.t_lo)
        - s
    )
    t_hi = (
        x.tol.t_hi
        + s_quantized(table, y.rep + y.tol.t_hi - x.rep - x.tol.t_hi)
        - s
        + 1
    )
    return TolRep(rep=x.rep + s, tol=Tolerance(t_lo=t_lo, t_hi=t_hi))


def tol_add_loose(x: Tolerance, y: Tolerance) -> Tolerance:
    """
    Addition bound that needs no knowledge of the representations.

    0 <= S(Z+1) - S(Z) <= 1 bounds the tight T_HA by max(T_HX, T_HY) + 1 and
    the tight T_LA from below by min(T_LX, T_LY), whichever operand the sum
    is anchored at.
    """
    return Tolerance(t_lo=min(x.t_lo, y.t_lo), t_hi=max(x.t_hi, y.t_hi) + 1)


def tol_add_loose_displayed(x: Tolerance, y: Tolerance) -> Tolerance:
    """
    (min(T_LX, T_LY), max(T_HX, T_HY + 1)), x being the anchor.

    Narrower than ``tol_add_loose`` when T_HX > T_HY, and then not sound:
    with y negligible next to x the sum keeps x's representation but exceeds
    b^(X + T_HX) whenever x sits at its upper bound. Kept for comparison only.
    """
    return Tolerance(t_lo=min(x.t_lo, y.t_lo), t_hi=max(x.t_hi, y.t_hi + 1))


# ---------------------------------------------------------------------------
# Literal conversion
# ---------------------------------------------------------------------------


def convert_literal(base: Base, value: PosRational) -> TolRep:
    """floor_log conversion: (0, 0) when exact, else (0, 1)."""
    z = floor_log_fast(value, base)
    return TolRep(rep=z, tol=EXACT if exact_rep(z, value, base) else FLOORED)


# ---------------------------------------------------------------------------
# Expression certification
# ---------------------------------------------------------------------------


def certify_expression(
    table: SumTable, expr, mode: AddMode = AddMode.LOOSE
) -> tuple[TolRep, PosRational]:
    """
    Certified (representation, tolerance) and exact value of ``expr``.

    Every node's certificate is checked against the node's exact value; a
    failure raises ``SoundnessError``.
    """
    from app import expression  # noqa: PLC0415

    base = table.base

    def walk(node) -> tuple[TolRep, PosRational]:
        match node:
            case expression.Lit(value=value, tol=declared):
                tr = convert_literal(base, value)
                if declared is not None:
                    tr = TolRep(rep=tr.rep, tol=declared)
                exact = value
            case expression.Mult(left=left, right=right):
                (x, vx), (y, vy) = walk(left), walk(right)
                tr = TolRep(rep=mult_level_1(x.rep, y.rep), tol=tol_mult(x.tol, y.tol))
                exact = vx * vy
            case expression.Div(left=left, right=right):
                (x, vx), (y, vy) = walk(left), walk(right)
                tr = TolRep(rep=div_level_1(x.rep, y.rep), tol=tol_div(x.tol, y.tol))
                exact = vx / vy
            case expression.Add(left=left, right=right):
                (x, vx), (y, vy) = walk(left), walk(right)
                if mode is AddMode.TIGHT:
                    tr = tol_add_tight(table, x, y)
                else:
                    tr = TolRep(rep=add_level_1(table, x.rep, y.rep),
                                tol=tol_add_loose(x.tol, y.tol))
                exact = vx + vy
            case expression.Sub():
                raise UnsupportedOperationError(
                    "subtraction has no Level-1 implementation"
                )
            case _:
                raise TypeError(f"not an expression node: {node!r}")
        if not tol_holds(base, tr, exact):
            logger.error("Certificate %s %s fails for %s at %s", tr.rep, tr.tol, exact, node)
            raise SoundnessError(
                f"certificate Z={tr.rep} tol={tr.tol} does not contain {exact} "
                f"for {node} in base {base}"
            )
        return tr, exact

    return walk(expr)
