from __future__ import annotations

import hypothesis
import pytest
from hypothesis import strategies as hst
from pydantic import ValidationError

from app.exactq import Base
from app.expression import parse_expression
from app.level2 import (
    InRange,
    OutOfRange,
    RangeConfig,
    add_level_2,
    clip,
    div_level_2,
    encode,
    evaluate_level_2,
    in_range,
    mult_level_2,
)
from app.lnscore import add_level_1
from app.table_store import get_table

CFG = RangeConfig(min_rep=-8, max_rep=8)
THREE_HALVES = Base(p=3, q=2)


@hst.composite
def range_configs(draw) -> RangeConfig:
    low = draw(hst.integers(min_value=-30, max_value=30))
    return RangeConfig(min_rep=low, max_rep=low + draw(hst.integers(min_value=0, max_value=40)))


def test_range_must_be_nonempty():
    with pytest.raises(ValidationError):
        RangeConfig(min_rep=3, max_rep=2)


def test_single_point_range():
    cfg = RangeConfig(min_rep=0, max_rep=0)
    assert in_range(cfg, 0)
    assert not in_range(cfg, 1)
    assert cfg.sentinel == 1
    assert mult_level_2(cfg, 0, 0) == InRange(z=0)
    assert mult_level_2(cfg, 0, 1) == OutOfRange(sentinel=1)


@pytest.mark.parametrize("z,expected", [(0, True), (9, False), (-8, True), (8, True), (-9, False)])
def test_in_range(z, expected):
    assert in_range(CFG, z) is expected


def test_clip():
    assert clip(CFG, 1, 2, 3) == InRange(z=3)
    assert clip(CFG, 9, 2, 3) == OutOfRange(sentinel=9)
    assert clip(CFG, 1, 2, 10) == OutOfRange(sentinel=9)


def test_operation_examples():
    table = get_table(THREE_HALVES)
    assert mult_level_2(CFG, 3, 4) == InRange(z=7)
    assert mult_level_2(CFG, 5, 5) == OutOfRange(sentinel=9)
    assert div_level_2(CFG, -5, 5) == OutOfRange(sentinel=9)
    assert add_level_2(CFG, table, 0, 0) == InRange(z=1)


def test_out_of_range_encodes_as_max_plus_one():
    signal = mult_level_2(CFG, 5, 5)
    assert encode(signal) == 9
    assert str(signal) == "OUT-OF-RANGE 9"
    assert not in_range(CFG, encode(signal))


@hypothesis.given(
    range_configs(),
    hst.integers(min_value=-80, max_value=80),
    hst.integers(min_value=-80, max_value=80),
)
def test_in_range_results_agree_with_level_1(cfg, x, y):
    table = get_table(THREE_HALVES)
    level1 = {"mult": x + y, "div": x - y, "add": add_level_1(table, x, y)}
    results = {
        "mult": mult_level_2(cfg, x, y),
        "div": div_level_2(cfg, x, y),
        "add": add_level_2(cfg, table, x, y),
    }
    for name, result in results.items():
        if isinstance(result, InRange):
            assert result.z == level1[name]
            assert in_range(cfg, x) and in_range(cfg, y)
        else:
            assert result.sentinel == cfg.max_rep + 1


@hypothesis.given(range_configs(), hst.lists(hst.integers(min_value=-80, max_value=80), min_size=3, max_size=3))
def test_signal_poisons_a_chain(cfg, others):
    table = get_table(THREE_HALVES)
    z = cfg.max_rep + 1
    for other, op in zip(others, ("mult", "div", "add")):
        if op == "mult":
            value = mult_level_2(cfg, other, z)
        elif op == "div":
            value = div_level_2(cfg, z, other)
        else:
            value = add_level_2(cfg, table, other, z)
        assert isinstance(value, OutOfRange)
        z = encode(value)


def test_evaluate_expression():
    table = get_table(THREE_HALVES)
    assert evaluate_level_2(RangeConfig(min_rep=0, max_rep=0), table, parse_expression("2")) == (
        OutOfRange(sentinel=1)
    )
    assert evaluate_level_2(CFG, table, parse_expression("3/2*3/2 + 1")) == InRange(z=2)
    assert evaluate_level_2(CFG, table, parse_expression("3/2*3/2*3/2*3/2*3/2")) == InRange(z=5)
    big = parse_expression("9/4*9/4*9/4*9/4*9/4")
    assert evaluate_level_2(CFG, table, big) == OutOfRange(sentinel=9)
