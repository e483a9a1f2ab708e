"""
Exact comparison kernel: a positive rational N/D against an integer power of
a rational base P/Q.

Everything else in the kit is checked against this module, so nothing here
touches floating point. Comparisons are done by cross-multiplying integers:

    e >= 0:  N/D ? (P/Q)^e   <=>   N * Q^e ? D * P^e
    e <  0:  N/D ? (P/Q)^e   <=>   N * P^|e| ? D * Q^|e|

For very large exponents the products run to hundreds of millions of bits.
Before paying for them, ``cmp_pow`` brackets b^e between two integer
fixed-point bounds computed with directed rounding; only when the bracket
cannot decide does it fall back to the exact products.
"""

from __future__ import annotations

import enum
import logging
from math import gcd
from typing import Annotated

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config import settings
from app.errors import PreconditionError

logger = logging.getLogger(__name__)

PositiveInt = Annotated[int, Field(strict=True, ge=1)]


# ---------------------------------------------------------------------------
# Value types
# ---------------------------------------------------------------------------


class PosRational(BaseModel):
    """A positive rational num/den, not necessarily in lowest terms."""

    model_config = ConfigDict(frozen=True)

    num: PositiveInt
    den: PositiveInt = 1

    @classmethod
    def of(cls, num: int, den: int = 1) -> PosRational:
        return cls(num=num, den=den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den}"

    def __mul__(self, other: PosRational) -> PosRational:
        return PosRational(num=self.num * other.num, den=self.den * other.den)

    def __truediv__(self, other: PosRational) -> PosRational:
        return PosRational(num=self.num * other.den, den=self.den * other.num)

    def __add__(self, other: PosRational) -> PosRational:
        return PosRational(
            num=self.num * other.den + other.num * self.den,
            den=self.den * other.den,
        )

    def reciprocal(self) -> PosRational:
        return PosRational(num=self.den, den=self.num)

    def reduced(self) -> PosRational:
        g = gcd(self.num, self.den)
        return PosRational(num=self.num // g, den=self.den // g)

    def same_value(self, other: PosRational) -> bool:
        return self.num * other.den == other.num * self.den

    def at_least_one(self) -> bool:
        return self.num >= self.den


ONE = PosRational(num=1, den=1)


class Base(BaseModel):
    """
    A rational base b = p/q larger than one.

    Only 0 < q < p is enforced here, which is all the conversion routines
    need. Table construction and everything built on it additionally require
    axiom (1), 1 < q < p < 2q; see ``admissible``.
    """

    model_config = ConfigDict(frozen=True)

    p: PositiveInt
    q: PositiveInt

    @model_validator(mode="after")
    def _larger_than_one(self) -> Base:
        if self.p <= self.q:
            raise ValueError(f"base {self.p}/{self.q} is not larger than 1")
        return self

    @classmethod
    def of(cls, p: int, q: int) -> Base:
        return cls(p=p, q=q)

    def __str__(self) -> str:
        return f"{self.p}/{self.q}"

    def admissible(self) -> bool:
        return 1 < self.q < self.p < 2 * self.q

    def as_rational(self) -> PosRational:
        return PosRational(num=self.p, den=self.q)


def require_admissible(base: Base) -> Base:
    if not base.admissible():
        raise PreconditionError(
            f"base {base} violates axiom (1): need 1 < Q < P < 2*Q"
        )
    return base


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


# ---------------------------------------------------------------------------
# Exact comparison
# ---------------------------------------------------------------------------


def _sign(a: int, b: int) -> Ordering:
    if a < b:
        return Ordering.LESS
    if a > b:
        return Ordering.GREATER
    return Ordering.EQUAL


def cmp_pow_exact(value: PosRational, base: Base, e: int) -> Ordering:
    """Order of value against base**e by cross-multiplication. Always exact."""
    if e >= 0:
        return _sign(value.num * pow(base.q, e), value.den * pow(base.p, e))
    n = -e
    return _sign(value.num * pow(base.p, n), value.den * pow(base.q, n))


# ---------------------------------------------------------------------------
# Bounded comparison (large exponents)
#
# A bound is a pair (m, x) standing for m * 2**x. Lower bounds are rounded
# toward zero after every product and upper bounds away from it, so a product
# of lower bounds stays a lower bound of the true product.
# ---------------------------------------------------------------------------


def _scaled(num: int, den: int, bits: int, up: bool) -> tuple[int, int]:
    shift = bits - num.bit_length() + den.bit_length()
    if shift >= 0:
        m, r = divmod(num << shift, den)
    else:
        m, r = divmod(num, den << -shift)
    if up and r:
        m += 1
    return m, -shift


def _trim(m: int, x: int, bits: int, up: bool) -> tuple[int, int]:
    excess = m.bit_length() - bits
    if excess <= 0:
        return m, x
    if up:
        return -((-m) >> excess), x + excess
    return m >> excess, x + excess


def _pow_bound(num: int, den: int, n: int, bits: int, up: bool) -> tuple[int, int]:
    result = (1, 0)
    acc = _scaled(num, den, bits, up)
    while n:
        if n & 1:
            result = _trim(result[0] * acc[0], result[1] + acc[1], bits, up)
        n >>= 1
        if n:
            acc = _trim(acc[0] * acc[0], 2 * acc[1], bits, up)
    return result


def _cmp_scaled(value: PosRational, m: int, x: int) -> Ordering:
    """Order of value against m * 2**x."""
    rhs = value.den * m
    lhs_bits = value.num.bit_length() + max(0, -x)
    rhs_bits = rhs.bit_length() + max(0, x)
    if lhs_bits != rhs_bits:
        return Ordering.LESS if lhs_bits < rhs_bits else Ordering.GREATER
    lhs = value.num
    if x >= 0:
        rhs <<= x
    else:
        lhs <<= -x
    return _sign(lhs, rhs)


def _cmp_pow_bounded(
    value: PosRational, base: Base, e: int, limit: int
) -> Ordering | None:
    num, den = (base.p, base.q) if e >= 0 else (base.q, base.p)
    n = abs(e)
    bits = 2 * n.bit_length() + 64
    while bits < limit:
        lo = _pow_bound(num, den, n, bits, up=False)
        if _cmp_scaled(value, *lo) is Ordering.LESS:
            return Ordering.LESS
        hi = _pow_bound(num, den, n, bits, up=True)
        if _cmp_scaled(value, *hi) is Ordering.GREATER:
            return Ordering.GREATER
        bits *= 2
    return None


# ---------------------------------------------------------------------------
# Public API
# ---------------------------------------------------------------------------


def cmp_pow(value: PosRational, base: Base, e: int) -> Ordering:
    """Three-way comparison of value against (p/q)**e."""
    size = abs(e) * max(base.p.bit_length(), base.q.bit_length())
    if size > settings.exact_pow_bits:
        ordering = _cmp_pow_bounded(value, base, e, limit=size)
        if ordering is not None:
            return ordering
        logger.debug("bounded comparison undecided for e=%d, going exact", e)
    return cmp_pow_exact(value, base, e)


def in_closed_interval(value: PosRational, base: Base, lo: int, hi: int) -> bool:
    """True iff base**lo <= value <= base**hi."""
    if lo > hi:
        raise PreconditionError(f"empty interval: lo={lo} > hi={hi}")
    return (
        cmp_pow(value, base, lo) is not Ordering.LESS
        and cmp_pow(value, base, hi) is not Ordering.GREATER
    )


def pow_rational(base: Base, e: int) -> PosRational:
    if e >= 0:
        return PosRational(num=pow(base.p, e), den=pow(base.q, e))
    return PosRational(num=pow(base.q, -e), den=pow(base.p, -e))


def pow_plus_one(base: Base, z: int) -> PosRational:
    """b**z + 1 as an exact rational."""
    b = pow_rational(base, z)
    return PosRational(num=b.num + b.den, den=b.den)


# Binary predicates named after the side the arbitrary rational sits on.


def l_lessp(value: PosRational, base: Base, e: int) -> bool:
    return cmp_pow(value, base, e) is Ordering.LESS


def l_geq(value: PosRational, base: Base, e: int) -> bool:
    return not l_lessp(value, base, e)


def r_lessp(value: PosRational, base: Base, e: int) -> bool:
    return cmp_pow(value, base, e) is Ordering.GREATER


def r_geq(value: PosRational, base: Base, e: int) -> bool:
    return not r_lessp(value, base, e)
