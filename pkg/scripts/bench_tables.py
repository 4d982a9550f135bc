#!/usr/bin/env python3
"""Time full restriction-table builds, method by method, across a roster of
root systems, and confirm the three constructions agree entry-wise.

    python3 scripts/bench_tables.py
    python3 scripts/bench_tables.py --systems A2,B3 --chamber minus --json
"""

import argparse
import json
import re
import sys
import time

from stabcalc.root_system import build_root_system
from stabcalc.stable_basis import METHODS, stab_table

DEFAULT_ROSTER = "A1,A2,B2,G2,A3,B3,C3"


def parse_system(text: str) -> tuple[str, int]:
    m = re.fullmatch(r"([A-G])(\d+)", text.strip())
    if m is None:
        raise SystemExit(f"bad system label {text!r}; expected e.g. B3")
    return m.group(1), int(m.group(2))


def bench_one(ctype: str, rank: int, chambers: list[str]) -> dict:
    rs = build_root_system(ctype, rank)
    row = {
        "system": f"{ctype}{rank}",
        "order": rs.weyl_group_order,
        "timings": {},
        "agree": True,
    }
    for chamber in chambers:
        built = {}
        for method in METHODS:
            start = time.perf_counter()
            built[method] = stab_table(rs, chamber, method)
            row["timings"][f"{chamber}/{method}"] = round(
                time.perf_counter() - start, 4
            )
        reference = built[METHODS[0]]
        if any(built[m] != reference for m in METHODS[1:]):
            row["agree"] = False
    return row


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--systems", default=DEFAULT_ROSTER,
                        help="comma-separated, e.g. A2,B3")
    parser.add_argument("--chamber", choices=["minus", "plus", "both"],
                        default="both")
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    chambers = ["minus", "plus"] if args.chamber == "both" else [args.chamber]
    rows = [bench_one(*parse_system(s), chambers)
            for s in args.systems.split(",")]

    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        for row in rows:
            print(f"{row['system']}  |W|={row['order']}")
            for phase, seconds in row["timings"].items():
                print(f"  {phase:22s} {seconds:8.3f}s")
            print(f"  methods agree: {'yes' if row['agree'] else 'NO'}")
    return 0 if all(r["agree"] for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
