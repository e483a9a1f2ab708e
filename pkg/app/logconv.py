"""
Conversion of positive rationals to Level-1 representations.

Two families live here:

* the reference searches ``ceiling_log_ge1`` / ``floor_log_ge1`` / ``floor_log``,
  which walk L = 0, 1, 2, ... accumulating (P/Q)^L in I/J exactly, with
  the loop budget C = N*Q; the bound L < N*Q means it is never exhausted;
* ``floor_log_fast``, which brackets the answer by exponent doubling and then
  bisects, using only ``exactq.cmp_pow``. It is the one every other module
  uses; tests check it against the reference searches.
"""

from __future__ import annotations

import logging

from app.errors import InvariantError, PreconditionError
from app.exactq import Base, Ordering, PosRational, cmp_pow

logger = logging.getLogger(__name__)

TWO = PosRational(num=2, den=1)


def _require_at_least_one(value: PosRational) -> None:
    if not value.at_least_one():
        raise PreconditionError(f"{value} is below 1")


# ---------------------------------------------------------------------------
# Reference searches
# ---------------------------------------------------------------------------


def ceiling_log_ge1(value: PosRational, base: Base) -> int:
    """Least L >= 0 with N/D <= (P/Q)^L."""
    _require_at_least_one(value)
    n, d, p, q = value.num, value.den, base.p, base.q
    level, i, j, budget = 0, 1, 1, n * q
    while d * i < n * j:
        if budget == 0:
            raise InvariantError(
                f"ceiling_log_ge1({value}, {base}) ran out of its N*Q budget"
            )
        level, i, j, budget = level + 1, i * p, j * q, budget - 1
    return level


def floor_log_ge1(value: PosRational, base: Base) -> int:
    """Greatest L >= 0 with (P/Q)^L <= N/D."""
    _require_at_least_one(value)
    n, d, p, q = value.num, value.den, base.p, base.q
    # i/j holds (P/Q)^(level+1)
    level, i, j, budget = 0, p, q, n * q
    while d * i <= n * j:
        if budget == 0:
            raise InvariantError(
                f"floor_log_ge1({value}, {base}) ran out of its N*Q budget"
            )
        level, i, j, budget = level + 1, i * p, j * q, budget - 1
    return level


def floor_log(value: PosRational, base: Base) -> int:
    """floor(log_b(N/D)) by the reference searches."""
    if value.at_least_one():
        return floor_log_ge1(value, base)
    return -ceiling_log_ge1(value.reciprocal(), base)


def reference_cost(value: PosRational, base: Base) -> int:
    """Loop budget the reference search for ``value`` would be granted."""
    if value.at_least_one():
        return value.num * base.q
    return value.den * base.q


def reference_work(value: PosRational, base: Base, z: int) -> int:
    """
    Estimated bit-operations of the reference search that stops at ``z``.

    Each of the |z|+1 iterations multiplies N or D by an I/J that has grown to
    about |z|*log2(P) bits, so the total is quadratic in |z| even when the
    iteration count N*Q looks affordable.
    """
    steps = abs(z) + 1
    width = steps * base.p.bit_length() + value.num.bit_length() + value.den.bit_length()
    return steps * width


# ---------------------------------------------------------------------------
# Fast conversion
# ---------------------------------------------------------------------------


def floor_log_fast(value: PosRational, base: Base) -> int:
    """floor(log_b(N/D)); same answer as ``floor_log``."""
    if value.at_least_one():
        lo, hi = 0, 1
        while cmp_pow(value, base, hi) is not Ordering.LESS:
            lo, hi = hi, 2 * hi
    else:
        lo, hi = -1, 0
        while cmp_pow(value, base, lo) is Ordering.LESS:
            lo, hi = 2 * lo, lo
    # b^lo <= value < b^hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if cmp_pow(value, base, mid) is Ordering.LESS:
            hi = mid
        else:
            lo = mid
    return lo


def is_exact_power(value: PosRational, base: Base, z: int) -> bool:
    return cmp_pow(value, base, z) is Ordering.EQUAL


# ---------------------------------------------------------------------------
# Precision
# ---------------------------------------------------------------------------


def log_b_two(base: Base) -> int:
    """floor(log_b 2)."""
    return floor_log_fast(TWO, base)


def precision_of_base(base: Base) -> int:
    """
    F = floor(log2(log_b 2)).

    Computed as floor(log2(G)) with G = floor(log_b 2). The two agree because
    log_b 2 lies in [G, G+1) and no power of two lies strictly inside an
    interval of integers that short. The defining property
    b^(2^F) <= 2 < b^(2^(F+1)) is re-checked exactly before returning.
    """
    if base.p >= 2 * base.q:
        raise PreconditionError(f"base {base} is not below 2, precision undefined")
    f = log_b_two(base).bit_length() - 1
    if cmp_pow(TWO, base, 1 << f) is Ordering.LESS or (
        cmp_pow(TWO, base, 1 << (f + 1)) is not Ordering.LESS
    ):
        raise InvariantError(f"precision {f} of base {base} fails its defining bracket")
    return f
