#!/usr/bin/env python3
"""
Regenerate the LNS1 regression fixtures under tests/fixtures/.

Run:
    python scripts/write_fixtures.py

Commit the files only after checking the diff: the fixtures pin the tables
the test suite compares against.
"""

import os
import sys

# Allow running from repo root
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
sys.path.insert(0, ROOT)

from dotenv import load_dotenv
load_dotenv()

from app import table_store
from app.exactq import Base
from app.lnscore import build_table

FIXTURE_BASES = [(3, 2), (4, 3)]


def main():
    directory = os.path.join(ROOT, "tests", "fixtures")
    os.makedirs(directory, exist_ok=True)
    for p, q in FIXTURE_BASES:
        table = build_table(Base(p=p, q=q))
        path = table_store.save_table(table, table_store.default_path(table.base, directory))
        print(f"[OK] {table.base}: SEZ={table.sez} -> {path}")


if __name__ == "__main__":
    main()
