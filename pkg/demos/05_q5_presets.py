"""
Ten faults, no named trap
=========================

Three ten-edge fault sets of Q_5 escape every listed trap kind.  A direct
search over connected vertex sets still finds the cut-off region.
"""

import time

from hypertrap import detect_traps, find_hamiltonian
from hypertrap.catalog import Q5_PRESETS
from hypertrap.traps import detect_generic_dhw

for name, p in Q5_PRESETS.items():
    f = p.fault_set()
    t = time.perf_counter()
    v = find_hamiltonian(5, f)
    dt = time.perf_counter() - t
    w = detect_generic_dhw(5, f, p.cycle_length)
    print(f"{name}: Hamiltonian={v.hamiltonian} ({dt:.1f}s, {v.nodes} nodes)")
    print(f"   named traps: {len(detect_traps(5, f))}, generic |T|={w.size}, side {w.side}")
    print(f"   T = {list(w.T)}")
