#!/usr/bin/env python3
"""
Print the precision and table size of one or more bases without building
any table.

Run:
    python scripts/sizing_report.py 3/2 1025/1024 12500001/12500000

The last base is the one whose precision matches single-precision floating
point; expect its SEZ computation to take a while.
"""

import os
import sys

# Allow running from repo root
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from dotenv import load_dotenv
load_dotenv()

from app import report
from app.errors import LnsError
from app.exactq import Base
from app.lnscore import sizing_report


def main():
    bases = sys.argv[1:] or ["3/2", "4/3", "1025/1024"]
    for text in bases:
        p, _, q = text.partition("/")
        try:
            sizing = sizing_report(Base(p=int(p), q=int(q or 1)))
        except (LnsError, ValueError) as exc:
            print(f"{text}: {exc}")
            continue
        print(report.sizing(sizing))
        print()


if __name__ == "__main__":
    main()
