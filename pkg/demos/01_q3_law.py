"""
When does Q_3 lose its Hamiltonian cycle?
=========================================

Walk every one of the 4096 fault sets of the 3-cube, ask the exact solver,
and compare with the three small traps.
"""

from collections import Counter

from hypertrap import FaultSet, detect_traps, faults, find_hamiltonian
from hypertrap.cycles import Kind

# a healthy cube and its certificate
v = find_hamiltonian(3, FaultSet(3))
print("healthy Q_3:", v.cycle)

tally = Counter()
for mask in range(1 << 12):
    f = FaultSet.from_mask(3, mask)
    ham = find_hamiltonian(3, f).hamiltonian
    kinds = {r.kind for r in detect_traps(3, f)}
    small = kinds & {Kind.Q1DHW, Kind.Q2DHW, Kind.CL}
    tally[ham, bool(small)] += 1

print("Hamiltonian, no trap:     ", tally[True, False])
print("non-Hamiltonian, trapped: ", tally[False, True])
print("mismatches:               ", tally[True, True] + tally[False, False])

# the smallest culprits, one of each
for edges in ([(0, 2), (0, 4)], [(0, 4), (3, 7)], [(1, 3), (2, 6), (4, 5)]):
    f = faults(3, edges)
    r = detect_traps(3, f)[0]
    print(f"{edges}: {r.kind.value}, T={list(r.T)}")
