"""
Level-1 logarithmic number system.

A positive rational x is represented by the integer Z = floor(log_b x) for a
rational base b = P/Q. Multiplication and division are integer addition and
subtraction. Addition needs the quantized addition logarithm

    S(Z) = floor(log_b(b^Z + 1))

which is realized by a finite table ST(0..SEZ) plus the asymptotes S(Z) = Z
above SEZ and S(Z) = 0 below -SEZ. The table must satisfy

    (1) 1 < Q < P < 2Q
    (2) 0 < SEZ
    (3) b^(SEZ+1) + 1 < b^(SEZ+2)
    (4) ST(Z) > 0                              for 0 <= Z <= SEZ
    (5) b^ST(Z) <= b^Z + 1 < b^(ST(Z)+1)       for 0 <= Z <= SEZ

and every one of them is checked by exact comparison, both when a table is
built and on demand through ``verify_axioms``.
"""

from __future__ import annotations

import logging
from typing import Annotated, TypeAlias

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config import settings
from app.errors import AxiomError, PreconditionError, TableIndexError
from app.exactq import (
    Base,
    Ordering,
    PosRational,
    cmp_pow,
    pow_plus_one,
    require_admissible,
)
from app.logconv import floor_log, floor_log_fast, log_b_two, precision_of_base

logger = logging.getLogger(__name__)

Rep: TypeAlias = int


# ---------------------------------------------------------------------------
# Table
# ---------------------------------------------------------------------------


class SumTable(BaseModel):
    """SEZ and ST(0..SEZ) for one base. Structure only; axioms are separate."""

    model_config = ConfigDict(frozen=True)

    base: Base
    sez: Annotated[int, Field(strict=True, ge=0)]
    st: tuple[int, ...]

    @model_validator(mode="after")
    def _one_entry_per_index(self) -> SumTable:
        if len(self.st) != self.sez + 1:
            raise ValueError(
                f"ST has {len(self.st)} entries, SEZ={self.sez} needs {self.sez + 1}"
            )
        return self

    def entry(self, z: int) -> int:
        if not 0 <= z <= self.sez:
            raise TableIndexError(f"ST index {z} outside 0..{self.sez}")
        return self.st[z]


def sez_pq(base: Base) -> int:
    """floor(log_b(Q / (P - Q)))."""
    require_admissible(base)
    return floor_log_fast(PosRational(num=base.q, den=base.p - base.q), base)


def st_pq(z: int, base: Base) -> int:
    """floor(log_b((P^z + Q^z) / Q^z)) = floor(s_b(z))."""
    sez = sez_pq(base)
    if not 0 <= z <= sez:
        raise TableIndexError(f"ST index {z} outside 0..{sez} for base {base}")
    return floor_log_fast(pow_plus_one(base, z), base)


def compute_table(base: Base) -> SumTable:
    """
    SEZ and ST for ``base`` with no axiom checks.

    ST(z+1) is at least ST(z), so each entry continues the search from the
    previous one and usually costs a single comparison.
    """
    require_admissible(base)
    sez = sez_pq(base)
    if sez + 1 > settings.max_table_entries:
        raise PreconditionError(
            f"base {base} needs {sez + 1} table entries, "
            f"above the limit of {settings.max_table_entries}"
        )
    s = log_b_two(base)
    entries = [s]
    pz, qz = 1, 1
    for _ in range(sez):
        pz, qz = pz * base.p, qz * base.q
        value = PosRational(num=pz + qz, den=qz)
        while cmp_pow(value, base, s + 1) is not Ordering.LESS:
            s += 1
        entries.append(s)
    return SumTable(base=base, sez=sez, st=tuple(entries))


def compute_table_reference(base: Base) -> SumTable:
    """SEZ and every ST entry by the reference searches alone; for benchmarking."""
    require_admissible(base)
    sez = floor_log(PosRational(num=base.q, den=base.p - base.q), base)
    st = tuple(floor_log(pow_plus_one(base, z), base) for z in range(sez + 1))
    return SumTable(base=base, sez=sez, st=st)


def build_table(base: Base) -> SumTable:
    table = compute_table(base)
    report = verify_axioms(table)
    failure = report.first_failure()
    if failure is not None:
        logger.warning("Table for %s failed axiom (%d)", base, failure.axiom)
        raise AxiomError(failure.axiom, failure.index, failure.detail)
    logger.info("Table built for %s: SEZ=%d, %d entries", base, table.sez, table.sez + 1)
    return table


# ---------------------------------------------------------------------------
# Axiom checker
# ---------------------------------------------------------------------------


class AxiomCheck(BaseModel):
    model_config = ConfigDict(frozen=True)

    axiom: int
    passed: bool
    index: int | None = None
    detail: str = ""


class AxiomReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    base: Base
    sez: int
    checks: tuple[AxiomCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def first_failure(self) -> AxiomCheck | None:
        return next((c for c in self.checks if not c.passed), None)


def above_golden_ratio(base: Base) -> bool:
    """b^2 > b + 1, i.e. P*(P-Q) > Q^2. Exactly the bases whose SEZ_PQ is 0."""
    return base.p * (base.p - base.q) > base.q * base.q


def verify_axioms(table: SumTable) -> AxiomReport:
    base, sez, st = table.base, table.sez, table.st
    checks = [AxiomCheck(axiom=1, passed=base.admissible(),
                         detail="" if base.admissible() else f"{base} is not 1 < Q < P < 2Q")]

    if sez > 0:
        checks.append(AxiomCheck(axiom=2, passed=True))
    else:
        detail = "SEZ=0"
        if above_golden_ratio(base):
            detail += (
                "; P/Q lies above the golden ratio, where floor(log_b(Q/(P-Q))) is 0,"
                " so the parameterized SEZ cannot satisfy 0 < SEZ"
            )
        checks.append(AxiomCheck(axiom=2, passed=False, detail=detail))

    axiom3 = cmp_pow(pow_plus_one(base, sez + 1), base, sez + 2) is Ordering.LESS
    checks.append(AxiomCheck(
        axiom=3, passed=axiom3,
        detail="" if axiom3 else f"b^{sez + 1} + 1 is not below b^{sez + 2}",
    ))

    bad = next((z for z, s in enumerate(st) if s <= 0), None)
    checks.append(AxiomCheck(
        axiom=4, passed=bad is None, index=bad,
        detail="" if bad is None else f"ST({bad}) = {st[bad]} is not positive",
    ))

    bad = None
    for z, s in enumerate(st):
        value = pow_plus_one(base, z)
        if cmp_pow(value, base, s) is Ordering.LESS or (
            cmp_pow(value, base, s + 1) is not Ordering.LESS
        ):
            bad = z
            break
    checks.append(AxiomCheck(
        axiom=5, passed=bad is None, index=bad,
        detail="" if bad is None else (
            f"b^{st[bad]} <= b^{bad} + 1 < b^{st[bad] + 1} does not hold"
        ),
    ))
    return AxiomReport(base=base, sez=sez, checks=tuple(checks))


# ---------------------------------------------------------------------------
# Quantized addition logarithm and Level-1 operations
# ---------------------------------------------------------------------------


def s_quantized(table: SumTable, z: int) -> int:
    """S(Z), defined for every integer Z."""
    if z < -table.sez:
        return 0
    if z < 0:
        return z + table.st[-z]
    if z <= table.sez:
        return table.st[z]
    return z


def exact_rep(z: Rep, value: PosRational, base: Base) -> bool:
    return cmp_pow(value, base, z) is Ordering.EQUAL


def mult_level_1(x: Rep, y: Rep) -> Rep:
    return x + y


def div_level_1(x: Rep, y: Rep) -> Rep:
    return x - y


def add_level_1(table: SumTable, x: Rep, y: Rep) -> Rep:
    """floor(log_b(b^x + b^y)) for exact x, y; equal to y + S(x - y)."""
    d = x - y
    if d < -table.sez:
        return y
    if d < 0:
        return x + table.st[-d]
    if d <= table.sez:
        return y + table.st[d]
    return x


# ---------------------------------------------------------------------------
# Sizing
# ---------------------------------------------------------------------------


class SizingReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    base: Base
    precision: int
    log_b_two: int
    sez: int
    entries: int
    entries_log2: int
    naive_iterations: int
    naive_work: int


def _sum_of_squares(n: int) -> int:
    return n * (n + 1) * (2 * n + 1) // 6


def sizing_report(base: Base) -> SizingReport:
    """
    Precision and table size of ``base`` without building the table.

    ``naive_iterations`` bounds the loop iterations the reference search
    needs to fill the whole table: ST(z) <= z + floor(log_b 2) + 1, summed over
    0 <= z <= SEZ. It counts iterations only; the integers multiplied in each
    iteration grow to about ST(z) * log2(P) bits, which is what makes the
    naive build hopeless for precisions near single precision.

    ``naive_work`` estimates those bit-operations: entry z takes at most
    k = z + floor(log_b 2) + 2 iterations on products of about 2k*log2(P) bits.
    """
    require_admissible(base)
    g = log_b_two(base)
    sez = sez_pq(base)
    entries = sez + 1
    squares = _sum_of_squares(sez + g + 2) - _sum_of_squares(g + 1)
    return SizingReport(
        base=base,
        precision=precision_of_base(base),
        log_b_two=g,
        sez=sez,
        entries=entries,
        entries_log2=entries.bit_length() - 1,
        naive_iterations=entries * sez // 2 + entries * (g + 1),
        naive_work=2 * base.p.bit_length() * squares,
    )
