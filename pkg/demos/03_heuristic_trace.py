"""
Watching the heuristic reason
=============================

Blue edges must be on every Hamiltonian cycle.  A claw forces three of them
onto one vertex, which no cycle can use.
"""

import json

from hypertrap import faults, run_heuristic
from hypertrap.heuristic import validate_trace

claw = faults(3, [(1, 3), (2, 6), (4, 5)])
out = run_heuristic(3, claw)
print("verdict:", out.verdict)
for step in out.trace:
    print("  ", json.dumps(step.to_json()))

# every step can be rechecked against the state it was applied to
validate_trace(3, claw, out.trace)
print("trace re-validated")

# a single fault: the partition count colors the other even edge blue
one = run_heuristic(3, faults(3, [(0, 1)]))
print("\none fault:", one.verdict, "blue:", [tuple(e) for e in one.blue])

# a hard instance from Q_4 stays undecided
from hypertrap.catalog import hard_q4
print("hard Q_4 set:", run_heuristic(4, hard_q4(8)[0]).verdict)
