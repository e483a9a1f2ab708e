"""
Level 2: Level-1 arithmetic with representations bounded to [min_rep, max_rep].

Any operation whose operands or result leave the range yields the single
out-of-range signal, written as max_rep + 1. Because the signal is itself out
of range it poisons every later operation. Whenever a Level-2 result is in
range it is the Level-1 result, so certificates proved at Level 1 carry over.
"""

from __future__ import annotations

import logging
from typing import Callable, Union

from pydantic import BaseModel, ConfigDict, model_validator

from app import expression
from app.errors import UnsupportedOperationError
from app.lnscore import Rep, SumTable, add_level_1, div_level_1, mult_level_1
from app.tolerance import convert_literal

logger = logging.getLogger(__name__)


class RangeConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    min_rep: int
    max_rep: int

    @model_validator(mode="after")
    def _ordered(self) -> RangeConfig:
        if self.min_rep > self.max_rep:
            raise ValueError(f"min_rep {self.min_rep} must not exceed max_rep {self.max_rep}")
        return self

    @property
    def sentinel(self) -> int:
        return self.max_rep + 1


class InRange(BaseModel):
    model_config = ConfigDict(frozen=True)

    z: Rep

    def encode(self) -> int:
        return self.z

    def __str__(self) -> str:
        return f"Z={self.z}"


class OutOfRange(BaseModel):
    model_config = ConfigDict(frozen=True)

    sentinel: int

    def encode(self) -> int:
        return self.sentinel

    def __str__(self) -> str:
        return f"OUT-OF-RANGE {self.sentinel}"


Level2Value = Union[InRange, OutOfRange]


# ---------------------------------------------------------------------------
# Range checks
# ---------------------------------------------------------------------------


def in_range(cfg: RangeConfig, z: int) -> bool:
    return cfg.min_rep <= z <= cfg.max_rep


def signal_out_range(cfg: RangeConfig) -> OutOfRange:
    return OutOfRange(sentinel=cfg.sentinel)


def clip(cfg: RangeConfig, x: int, y: int, result: int) -> Level2Value:
    if in_range(cfg, x) and in_range(cfg, y) and in_range(cfg, result):
        return InRange(z=result)
    return signal_out_range(cfg)


def encode(value: Level2Value) -> int:
    return value.encode()


# ---------------------------------------------------------------------------
# Operations
# ---------------------------------------------------------------------------


def mult_level_2(cfg: RangeConfig, x: int, y: int) -> Level2Value:
    return clip(cfg, x, y, mult_level_1(x, y))


def div_level_2(cfg: RangeConfig, x: int, y: int) -> Level2Value:
    return clip(cfg, x, y, div_level_1(x, y))


def add_level_2(cfg: RangeConfig, table: SumTable, x: int, y: int) -> Level2Value:
    return clip(cfg, x, y, add_level_1(table, x, y))


# ---------------------------------------------------------------------------
# Expression evaluation
# ---------------------------------------------------------------------------


def evaluate_level_2(cfg: RangeConfig, table: SumTable, expr: expression.Expr) -> Level2Value:
    """
    Evaluate ``expr`` with Level-2 operations.

    A literal is converted with ``floor_log`` and then range checked on its
    own; from there on values travel as their encoded integers, so an
    out-of-range literal poisons the whole result.
    """
    ops: dict[type, Callable[[int, int], Level2Value]] = {
        expression.Mult: lambda x, y: mult_level_2(cfg, x, y),
        expression.Div: lambda x, y: div_level_2(cfg, x, y),
        expression.Add: lambda x, y: add_level_2(cfg, table, x, y),
    }

    def walk(node) -> int:
        if isinstance(node, expression.Lit):
            z = convert_literal(table.base, node.value).rep
            return z if in_range(cfg, z) else cfg.sentinel
        if isinstance(node, expression.Sub):
            raise UnsupportedOperationError("subtraction has no Level-2 implementation")
        op = ops[type(node)]
        return op(walk(node.left), walk(node.right)).encode()

    z = walk(expr)
    result: Level2Value = InRange(z=z) if in_range(cfg, z) else signal_out_range(cfg)
    if isinstance(result, OutOfRange):
        logger.info("Level-2 evaluation of %s left [%d, %d]", expr, cfg.min_rep, cfg.max_rep)
    return result
