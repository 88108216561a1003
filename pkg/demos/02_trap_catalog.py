"""
Building traps in bigger cubes
==============================

Every trap kind is a small vertex set T whose majority side is cut off from
the rest of the cube.  Its fault count grows linearly in n.
"""

from hypertrap import generate_trap, is_hamiltonian
from hypertrap.catalog import TRAP_TABLE
from hypertrap.cycles import Kind
from hypertrap.symmetry import are_isomorphic

print(f"{'kind':6} {'|F|':7}", *(f"n={n:<3}" for n in range(3, 8)))
for kind, row in TRAP_TABLE.items():
    cells = [str(row.size(n)) if row.size(n) is not None else "-" for n in range(3, 8)]
    print(f"{kind.value:6} {row.formula:7}", *(f"{c:5}" for c in cells))

# the generated sets really have these sizes and kill every Hamiltonian cycle
f = generate_trap(Kind.C6_1, 5)
print("\nC6_1 in Q_5:", len(f), "faults, Hamiltonian?", is_hamiltonian(5, f))

# the two sides of a cycle trap are usually the same trap up to symmetry
for kind in (Kind.C8_3, Kind.C8_4, Kind.C8_6):
    same = [are_isomorphic(generate_trap(kind, n, 0), generate_trap(kind, n, 1)) for n in (4, 5)]
    print(f"{kind.value}: sides isomorphic at n=4,5 -> {same}")
