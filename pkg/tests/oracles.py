"""Independent reference implementations used to check the package.

Nothing here imports the package's search, symmetry or trap code; the only
shared notion is "an edge is a pair of labels differing in one bit".
"""

from __future__ import annotations

import itertools
from functools import lru_cache


def edges(n):
    return [(u, u | 1 << i) for u in range(1 << n) for i in range(n) if not u >> i & 1]


def sorted_edges(n):
    return sorted(edges(n))


def hamiltonian_brute(n, faults) -> bool:
    """Plain backtracking, no pruning, no symmetry breaking."""
    bad = {tuple(sorted(e)) for e in faults}
    N = 1 << n
    adj = {v: [v ^ 1 << i for i in range(n) if tuple(sorted((v, v ^ 1 << i))) not in bad] for v in range(N)}
    seen = [False] * N
    seen[0] = True

    def go(v, depth):
        if depth == N:
            return 0 in adj[v]
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                if go(w, depth + 1):
                    return True
                seen[w] = False
        return False

    return go(0, 1)


def all_cycles_brute(n, faults) -> set:
    """Every Hamiltonian cycle as a frozenset of edges."""
    bad = {tuple(sorted(e)) for e in faults}
    N = 1 << n
    adj = {v: [v ^ 1 << i for i in range(n) if tuple(sorted((v, v ^ 1 << i))) not in bad] for v in range(N)}
    out = set()
    path = [0]
    seen = [False] * N
    seen[0] = True

    def go(v):
        if len(path) == N:
            if 0 in adj[v]:
                cyc = path + [0]
                out.add(frozenset(tuple(sorted(p)) for p in zip(cyc, cyc[1:])))
            return
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                path.append(w)
                go(w)
                path.pop()
                seen[w] = False

    go(0)
    return out


@lru_cache(maxsize=None)
def automorphisms(n):
    """All maps x -> perm(x) xor t as dicts on vertices."""
    out = []
    N = 1 << n
    for perm in itertools.permutations(range(n)):
        for t in range(N):
            m = []
            for x in range(N):
                y = 0
                for i in range(n):
                    if x >> i & 1:
                        y |= 1 << perm[i]
                m.append(y ^ t)
            out.append(tuple(m))
    return out


def image(m, faults):
    return tuple(sorted(tuple(sorted((m[u], m[v]))) for u, v in faults))


def canonical_brute(n, faults):
    return min(image(m, faults) for m in automorphisms(n))


def orbit_brute(n, faults):
    return {image(m, faults) for m in automorphisms(n)}


def orbit_count_brute(n, k):
    E = sorted_edges(n)
    seen = set()
    classes = 0
    for comb in itertools.combinations(E, k):
        if comb in seen:
            continue
        classes += 1
        seen |= orbit_brute(n, comb)
    return classes


def has_dhw_brute(n, faults) -> bool:
    """Search every proper vertex subset for a DHW set (n <= 3 only)."""
    bad = {tuple(sorted(e)) for e in faults}
    N = 1 << n
    for mask in range(1, (1 << N) - 1):
        T = [v for v in range(N) if mask >> v & 1]
        for side in (0, 1):
            same = [v for v in T if bin(v).count("1") % 2 == side]
            if 2 * len(same) < len(T):
                continue
            ok = True
            for v in same:
                for i in range(n):
                    w = v ^ 1 << i
                    if not mask >> w & 1 and tuple(sorted((v, w))) not in bad:
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                return True
    return False


def has_claw_brute(n, faults) -> bool:
    bad = {tuple(sorted(e)) for e in faults}
    N = 1 << n
    deg = [sum(tuple(sorted((v, v ^ 1 << i))) not in bad for i in range(n)) for v in range(N)]
    for u in range(N):
        leaves = [u ^ 1 << i for i in range(n)
                  if tuple(sorted((u, u ^ 1 << i))) not in bad and deg[u ^ 1 << i] == 2]
        if len(leaves) >= 3:
            return True
    return False
