from __future__ import annotations

import random

import hypothesis
import pytest
from hypothesis import strategies as hst
from pydantic import ValidationError

from app.errors import SoundnessError, UnsupportedOperationError
from app.exactq import Base, PosRational, pow_rational
from app.expression import (
    Add,
    Lit,
    Mult,
    Sub,
    lit,
    parse_expression,
    taylor_exp_tree,
    taylor_exp_tree_reversed,
    taylor_exp_value,
    taylor_input,
)
from app.lnscore import add_level_1
from app.sweeps import random_expression
from app.table_store import get_table
from app.tolerance import (
    EXACT,
    FLOORED,
    AddMode,
    Tolerance,
    TolRep,
    certify_expression,
    convert_literal,
    tol_add_loose,
    tol_add_loose_displayed,
    tol_add_tight,
    tol_div,
    tol_holds,
    tol_mult,
    tol_recip,
)

THREE_HALVES = Base(p=3, q=2)

offsets = hst.integers(min_value=-6, max_value=6)


@hst.composite
def tolerances(draw) -> Tolerance:
    lo = draw(offsets)
    return Tolerance(t_lo=lo, t_hi=lo + draw(hst.integers(min_value=0, max_value=6)))


def test_tolerance_must_be_ordered():
    with pytest.raises(ValidationError):
        Tolerance(t_lo=1, t_hi=0)


def test_rule_examples():
    assert tol_mult(Tolerance.of(0, 1), Tolerance.of(0, 1)) == Tolerance.of(0, 2)
    assert tol_recip(Tolerance.of(0, 1)) == Tolerance.of(-1, 0)
    assert tol_div(Tolerance.of(0, 2), Tolerance.of(0, 1)) == Tolerance.of(-1, 2)
    assert tol_add_loose(Tolerance.of(0, 1), Tolerance.of(0, 1)) == Tolerance.of(0, 2)
    # anchored at the wider operand the displayed rule would keep (-1, 4)
    assert tol_add_loose(Tolerance.of(-1, 4), Tolerance.of(0, 1)) == Tolerance.of(-1, 5)
    assert tol_add_loose_displayed(Tolerance.of(-1, 4), Tolerance.of(0, 1)) == Tolerance.of(-1, 4)


@hypothesis.given(tolerances(), tolerances())
def test_div_is_mult_by_reciprocal(x, y):
    assert tol_div(x, y) == tol_mult(x, tol_recip(y))


@hypothesis.given(tolerances(), tolerances())
def test_rules_never_narrow(x, y):
    widest = max(x.width, y.width)
    assert tol_mult(x, y).width >= widest
    assert tol_div(x, y).width >= widest
    assert tol_recip(x).width == x.width
    assert tol_add_loose(x, y).width >= widest
    assert tol_add_loose(x, y) == tol_add_loose(y, x)


@hypothesis.given(
    hst.integers(min_value=-20, max_value=20),
    hst.integers(min_value=-20, max_value=20),
    tolerances(),
    tolerances(),
)
def test_tight_add_inside_loose_and_never_too_narrow(x_rep, y_rep, x_tol, y_tol):
    for base in (THREE_HALVES, Base(p=4, q=3)):
        table = get_table(base)
        x, y = TolRep(rep=x_rep, tol=x_tol), TolRep(rep=y_rep, tol=y_tol)
        tight = tol_add_tight(table, x, y)
        loose = tol_add_loose(x_tol, y_tol)
        assert tight.rep == add_level_1(table, x_rep, y_rep)
        assert loose.t_lo <= tight.tol.t_lo
        assert tight.tol.t_hi <= loose.t_hi
        assert tight.tol.width >= min(x_tol.width, y_tol.width) + 1


def test_convert_literal():
    assert convert_literal(THREE_HALVES, PosRational(num=9, den=4)) == TolRep(rep=2, tol=EXACT)
    assert convert_literal(THREE_HALVES, PosRational(num=2)) == TolRep(rep=1, tol=FLOORED)


def test_tol_holds_is_closed():
    value = PosRational(num=9, den=4)
    assert tol_holds(THREE_HALVES, TolRep(rep=2, tol=EXACT), value)
    assert tol_holds(THREE_HALVES, TolRep(rep=1, tol=FLOORED), value)
    assert not tol_holds(THREE_HALVES, TolRep(rep=0, tol=FLOORED), value)


# ---------------------------------------------------------------------------
# Loose addition rule as usually displayed
# ---------------------------------------------------------------------------


def test_displayed_loose_rule_is_unsound():
    table = get_table(THREE_HALVES)
    # x = 11/5 converts to Z=1 (0,1), so x*x is Z=2 (0,2) with b^2 <= 121/25 <= b^4
    x = PosRational(num=11, den=5)
    square = TolRep(rep=2, tol=Tolerance.of(0, 2))
    one = TolRep(rep=0, tol=EXACT)
    exact = x * x + PosRational(num=1)
    rep = add_level_1(table, square.rep, one.rep)
    assert tol_holds(THREE_HALVES, square, x * x)

    displayed = TolRep(rep=rep, tol=tol_add_loose_displayed(square.tol, one.tol))
    assert displayed.tol == Tolerance.of(0, 2)
    assert not tol_holds(THREE_HALVES, displayed, exact)

    sound = TolRep(rep=rep, tol=tol_add_loose(square.tol, one.tol))
    assert tol_holds(THREE_HALVES, sound, exact)


# ---------------------------------------------------------------------------
# Certification
# ---------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text,rep,tol",
    [
        ("1+1", 1, (0, 1)),
        ("3/2*3/2", 2, (0, 0)),
        ("9/4 / 3/2", 1, (0, 0)),
        ("2", 1, (0, 1)),
        ("2*2", 2, (0, 2)),
    ],
)
def test_certify_examples(text, rep, tol):
    tr, _ = certify_expression(get_table(THREE_HALVES), parse_expression(text))
    assert tr.rep == rep
    assert (tr.tol.t_lo, tr.tol.t_hi) == tol


@pytest.mark.parametrize("mode", list(AddMode))
def test_random_trees_certify_soundly(small_table, mode):
    rng = random.Random(7)
    for _ in range(60):
        tr, exact = certify_expression(small_table, random_expression(rng, 5), mode)
        assert tol_holds(small_table.base, tr, exact)


def test_wrong_declared_tolerance_is_caught():
    tree = Lit(value=PosRational(num=2), tol=EXACT)
    with pytest.raises(SoundnessError):
        certify_expression(get_table(THREE_HALVES), tree)


def test_subtraction_is_refused():
    tree = Sub(left=lit(3), right=lit(2))
    with pytest.raises(UnsupportedOperationError):
        certify_expression(get_table(THREE_HALVES), tree)


def test_taylor_certificates(small_table):
    rng = random.Random(11)
    checked = 0
    while checked < 100:
        den = rng.randint(2, 60)
        x = PosRational(num=rng.randint(1, den - 1), den=den)
        if convert_literal(small_table.base, x).tol != FLOORED:
            continue
        checked += 1
        x_lit = taylor_input(x)
        forward, value = certify_expression(small_table, taylor_exp_tree(x_lit))
        reverse, _ = certify_expression(small_table, taylor_exp_tree_reversed(x_lit))
        assert forward.tol == Tolerance.of(-1, 4)
        assert reverse.tol == Tolerance.of(-1, 6)
        assert value.same_value(taylor_exp_value(x))
        assert tol_holds(small_table.base, forward, value)
        assert tol_holds(small_table.base, reverse, value)


def test_taylor_certificate_ignores_exactness_of_x(table_3_2):
    x = taylor_input(pow_rational(THREE_HALVES, 2), FLOORED)
    forward, _ = certify_expression(table_3_2, taylor_exp_tree(x))
    assert forward.tol == Tolerance.of(-1, 4)


def test_tight_mode_is_never_looser_on_taylor(table_4_3):
    x = taylor_input(PosRational(num=1, den=3))
    tight, _ = certify_expression(table_4_3, taylor_exp_tree(x), AddMode.TIGHT)
    loose, _ = certify_expression(table_4_3, taylor_exp_tree(x), AddMode.LOOSE)
    assert tight.rep == loose.rep
    assert loose.tol.t_lo <= tight.tol.t_lo <= tight.tol.t_hi <= loose.tol.t_hi


def test_mult_node_of_exact_literals_stays_exact(table_3_2):
    tree = Add(left=Mult(left=lit(3, 2), right=lit(3, 2)), right=lit(1))
    tr, exact = certify_expression(table_3_2, tree, AddMode.TIGHT)
    assert exact.same_value(PosRational(num=13, den=4))
    assert tol_holds(THREE_HALVES, tr, exact)
