"""Counted property sweeps at the sizes the kit is accepted at."""

from __future__ import annotations

import pytest

from app.exactq import Base
from app.sweeps import (
    addition_log_sweeps,
    base_family_sweep,
    conversion_sweep,
    level1_oracle_sweep,
    level2_sweep,
    sweep_points,
    taylor_sweep,
    tolerance_sweep,
)
from app.table_store import get_table


def test_sweep_points_cover_everything_when_small():
    assert sweep_points(1, cap=100) == list(range(-3, 4))
    assert sweep_points(0, cap=100) == list(range(-3, 4))


def test_sweep_points_are_capped_with_edges():
    points = sweep_points(7101, cap=5000)
    assert len(points) <= 5000
    for z in (-21303, -7102, -7101, -7100, -1, 0, 1, 7100, 7101, 7102, 21303):
        assert z in points
    assert points == sorted(set(points))


@pytest.mark.parametrize("p,q", [(3, 2), (4, 3)])
def test_addition_log_sweeps_small_bases(p, q):
    for result in addition_log_sweeps(get_table(Base(p=p, q=q))):
        assert result.ok, result.counterexample
        assert result.checked == 6 * max(get_table(Base(p=p, q=q)).sez, 1) + 1


def test_addition_log_sweeps_1025_1024(table_1025_1024):
    for result in addition_log_sweeps(table_1025_1024, cap=5000):
        assert result.ok, result.counterexample
        assert result.checked <= 5000


def test_level1_oracle(small_table):
    result = level1_oracle_sweep(small_table, samples=1000, seed=1)
    assert result.ok, result.counterexample
    assert result.checked == 1000


def test_level1_oracle_1025_1024(table_1025_1024):
    result = level1_oracle_sweep(table_1025_1024, samples=50, seed=1)
    assert result.ok, result.counterexample


def test_conversion_equivalence():
    result = conversion_sweep(samples=2000, seed=3)
    assert result.ok, result.counterexample
    assert result.checked == 2000


def test_tolerance_master_soundness(small_table):
    result = tolerance_sweep(small_table, samples=500, seed=5)
    assert result.ok, result.counterexample
    assert result.checked == 500


def test_taylor_sweep(small_table):
    result = taylor_sweep(small_table, samples=100, seed=9)
    assert result.ok, result.counterexample


def test_level2_agreement(table_3_2):
    result = level2_sweep(table_3_2, samples=1000, seed=2)
    assert result.ok, result.counterexample
    assert result.checked == 3000


def test_base_family_small():
    result = base_family_sweep(samples=40, seed=4, max_p=200)
    assert result.ok, result.counterexample
    assert result.checked == 40
    assert all("SEZ=0" in note for note in result.notes)


@pytest.mark.slow
def test_base_family_full():
    result = base_family_sweep(samples=200, seed=4)
    assert result.ok, result.counterexample
    assert result.checked == 200
