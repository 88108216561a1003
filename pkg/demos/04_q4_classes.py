"""
Classifying Q_4 fault sets up to symmetry
=========================================

Canonical augmentation visits one representative per isomorphism class.
The orbit sizes add back up to the binomial count.
"""

import math
import time

from hypertrap import canonical_form
from hypertrap.enumeration import classify_all, iter_classes
from hypertrap.symmetry import orbit

for k in range(6):
    reps = list(iter_classes(4, k))
    covered = sum(len(orbit(f)) for f in reps)
    print(f"k={k}: {len(reps):4} classes covering {covered} of {math.comb(32, k)} subsets")

# one class, seen through its canonical form
f = reps[-1]
cf = canonical_form(f)
print("\nlast k=5 class:", f.pairs(), "witness perm", cf.witness.perm, "xor", cf.witness.xor)

# what kills the non-Hamiltonian ones
for k in (5, 6):
    t = time.perf_counter()
    s = classify_all(4, k)
    print(f"\nk={k}: {s.counts} in {time.perf_counter() - t:.1f}s")
    print("   first trap found:", s.trapped_by_kind)
