"""
Per-chi table and the (c2, c1^2) scatter for chi <= 8.

Writes geography.csv and geography.svg into the current directory.
"""

import sys

from finew2 import check_inequalities, chern, classify_range, emit_geography, report

gmax = int(sys.argv[1]) if len(sys.argv) > 1 else 8
records = list(classify_range(2, gmax))

print(" chi  count  c1^2 range")
for row in report(records):
    print(f"{row.chi:4d} {row.count:6d}  [{row.c1sq_min}, {row.c1sq_max}]")

flags = [check_inequalities(chern(r.fine_interior)) for r in records]
print("BMY and Noether hold everywhere:", all(f.bmy and f.noether for f in flags))
scott_fail = [r for r, f in zip(records, flags) if f.scott_bound is False]
print("lattice F below the Scott-derived line:", [list(r.fine_interior.doubled.vertices) for r in scott_fail])

emit_geography(records, "geography.csv", "geography.svg")
print("wrote geography.csv and geography.svg")
