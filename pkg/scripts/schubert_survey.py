#!/usr/bin/env python3
"""Survey the hbar-free limit values across whole Weyl groups: support
density, degrees, coefficient growth, and a timing comparison of the direct
subword formula against the route through the equivariant table.

    python3 scripts/schubert_survey.py
    python3 scripts/schubert_survey.py --systems B3 --json
"""

import argparse
import json
import sys
import time

from stabcalc.root_system import build_root_system
from stabcalc.schubert_limit import billey_from_limit, billey_restriction
from stabcalc.stable_basis import stab_table

from bench_tables import parse_system

DEFAULT_ROSTER = "A2,B2,G2,A3,B3"


def survey_one(ctype: str, rank: int) -> dict:
    rs = build_root_system(ctype, rank)
    g = rs.weyl()
    order = len(g.elements)

    start = time.perf_counter()
    direct = {}
    for w in g.elements:
        for y in g.elements:
            direct[w.index, y.index] = billey_restriction(rs, w, y.word)
    direct_seconds = time.perf_counter() - start

    start = time.perf_counter()
    minus = stab_table(rs, "minus")
    mismatches = 0
    for (a, b), expected in direct.items():
        via = billey_from_limit(
            rs, g.elements[a], g.elements[b].word,
            minus_entry=minus.entry(a, b),
        )
        if via != expected:
            mismatches += 1
    limit_seconds = time.perf_counter() - start

    nonzero = [v for v in direct.values() if not v.is_zero]
    return {
        "system": f"{ctype}{rank}",
        "order": order,
        "pairs": order * order,
        "nonzero": len(nonzero),
        "support_density": round(len(nonzero) / order**2, 4),
        "max_degree": max(v.total_degree() for v in nonzero),
        "max_coefficient": str(max(c for v in nonzero for c in v.terms.values())),
        "direct_seconds": round(direct_seconds, 3),
        "via_limit_seconds": round(limit_seconds, 3),
        "limit_mismatches": mismatches,
    }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--systems", default=DEFAULT_ROSTER)
    parser.add_argument("--json", action="store_true")
    args = parser.parse_args()

    rows = [survey_one(*parse_system(s)) for s in args.systems.split(",")]
    if args.json:
        print(json.dumps(rows, indent=2, sort_keys=True))
    else:
        header = (f"{'system':8s} {'|W|':>5s} {'nonzero':>8s} {'density':>8s} "
                  f"{'maxdeg':>7s} {'maxcoef':>8s} {'direct':>8s} {'limit':>8s}")
        print(header)
        for r in rows:
            print(f"{r['system']:8s} {r['order']:5d} {r['nonzero']:8d} "
                  f"{r['support_density']:8.4f} {r['max_degree']:7d} "
                  f"{r['max_coefficient']:>8s} {r['direct_seconds']:8.3f} "
                  f"{r['via_limit_seconds']:8.3f}")
            if r["limit_mismatches"]:
                print(f"  WARNING: {r['limit_mismatches']} limit mismatches")
    return 0 if all(r["limit_mismatches"] == 0 for r in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
