"""
Table store: built tables cached in memory, plus the LNS1 table file format.

LNS1 is line-oriented text:

    LNS1
    P=<decimal>
    Q=<decimal>
    SEZ=<decimal>
    <z> <st(z)>        one line per z = 0..SEZ, ascending

Every line ends with a newline and carries no trailing whitespace. A loaded
table is re-checked against the axioms before it is handed out.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

from pydantic import ValidationError

from app.errors import AxiomError, TableFormatError
from app.exactq import Base
from app.lnscore import SumTable, build_table, verify_axioms

logger = logging.getLogger(__name__)

MAGIC = "LNS1"

_HEADER = re.compile(r"^(P|Q|SEZ)=(0|[1-9][0-9]*)$")
_ENTRY = re.compile(r"^(0|[1-9][0-9]*) (-?[0-9]+)$")

# ---------------------------------------------------------------------------
# In-memory cache
# ---------------------------------------------------------------------------

tables: dict[Base, SumTable] = {}


def get_table(base: Base) -> SumTable:
    """Build (and verify) the table for ``base`` once per process."""
    table = tables.get(base)
    if table is None:
        table = build_table(base)
        tables[base] = table
    return table


# ---------------------------------------------------------------------------
# LNS1 text
# ---------------------------------------------------------------------------


def format_table(table: SumTable) -> str:
    lines = [
        MAGIC,
        f"P={table.base.p}",
        f"Q={table.base.q}",
        f"SEZ={table.sez}",
    ]
    lines.extend(f"{z} {s}" for z, s in enumerate(table.st))
    return "\n".join(lines) + "\n"


def parse_table(text: str) -> SumTable:
    """Parse LNS1 text and re-verify the axioms. Raises on any defect."""
    if not text.endswith("\n"):
        raise TableFormatError("table file must end with a newline")
    lines = text[:-1].split("\n")
    if len(lines) < 4 or lines[0] != MAGIC:
        raise TableFormatError(f"missing {MAGIC} header")

    header: dict[str, int] = {}
    for lineno, (line, key) in enumerate(zip(lines[1:4], ("P", "Q", "SEZ")), start=2):
        match = _HEADER.match(line)
        if not match or match.group(1) != key:
            raise TableFormatError(f"line {lineno}: expected {key}=<decimal>, got {line!r}")
        header[key] = int(match.group(2))

    sez = header["SEZ"]
    body = lines[4:]
    if len(body) != sez + 1:
        raise TableFormatError(f"SEZ={sez} needs {sez + 1} entries, found {len(body)}")
    st: list[int] = []
    for z, line in enumerate(body):
        match = _ENTRY.match(line)
        if not match or int(match.group(1)) != z:
            raise TableFormatError(f"line {z + 5}: expected '{z} <st>', got {line!r}")
        st.append(int(match.group(2)))

    try:
        table = SumTable(base=Base(p=header["P"], q=header["Q"]), sez=sez, st=tuple(st))
    except ValidationError as exc:
        raise TableFormatError(f"invalid table contents: {exc}") from exc

    report = verify_axioms(table)
    failure = report.first_failure()
    if failure is not None:
        raise AxiomError(failure.axiom, failure.index, failure.detail)
    return table


# ---------------------------------------------------------------------------
# Files
# ---------------------------------------------------------------------------


def save_table(table: SumTable, path: str | Path) -> Path:
    path = Path(path)
    path.write_text(format_table(table), encoding="utf-8", newline="\n")
    logger.info("Table for %s written to %s", table.base, path)
    return path


def load_table(path: str | Path) -> SumTable:
    path = Path(path)
    table = parse_table(path.read_text(encoding="utf-8"))
    tables.setdefault(table.base, table)
    logger.info("Table for %s loaded from %s (SEZ=%d)", table.base, path, table.sez)
    return table


def default_path(base: Base, directory: str | Path) -> Path:
    return Path(directory) / f"lns1-{base.p}-{base.q}.txt"
