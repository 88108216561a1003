"""Exact Hamiltonian-cycle search in Q_n - F.

Depth-first path extension from vertex 0.  The first step goes to a
neighbor ``a`` of 0 and the cycle must return to 0 from a neighbor larger
than ``a``, so every undirected cycle is met exactly once.

Pruning (each may be switched off; none affects completeness):

* P1 - every unvisited vertex keeps two usable edges; a neighbor of the
  head that is about to lose its second-to-last option is the forced next
  step.
* P2 - per dimension, the even and odd crossing edges still usable must
  admit a balanced positive total together with those already on the path.
* P3 - the path never closes before all vertices are covered, and vertex 0
  keeps a free neighbor above ``a`` to close through.
* P4 - unvisited vertices stay connected to the head (checked every K steps).
* P5 - the residual degree demands (two per unvisited vertex, one per path
  end) are met by some bipartite b-matching of usable edges, i.e. a 2-factor
  relaxation of what remains.
* P6 - before the search, edges at degree-2 vertices are forced, a vertex
  with two forced edges loses its others, and an edge that would close a
  short forced path is dropped.  Dropped edges lie on no Hamiltonian cycle,
  so the search on what is left stays exact.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Optional

from .core import Edge, FaultSet, HypercubeError, cube


@dataclass(frozen=True)
class HamCycle:
    vertices: tuple[int, ...]

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [Edge.of(a, b) for a, b in zip(vs, vs[1:] + vs[:1])]

    def validate(self, faults: FaultSet) -> None:
        n = faults.n
        vs = self.vertices
        if len(vs) != 1 << n or sorted(vs) != list(range(1 << n)):
            raise HypercubeError("certificate does not visit every vertex exactly once")
        for e in self.edges():
            if e in faults:
                raise HypercubeError(f"certificate uses faulty edge {tuple(e)}")

    def is_valid(self, faults: FaultSet) -> bool:
        try:
            self.validate(faults)
        except HypercubeError:
            return False
        return True

    def __str__(self) -> str:
        return " ".join(map(str, self.vertices))


@dataclass(frozen=True)
class Verdict:
    hamiltonian: bool
    cycle: Optional[HamCycle] = None
    # "exhaustive", "trap" or "heuristic" for non-Hamiltonian verdicts
    reason: Optional[str] = None
    detail: object = field(default=None, compare=False)
    nodes: int = field(default=0, compare=False)

    @classmethod
    def yes(cls, cycle: HamCycle, nodes: int = 0) -> "Verdict":
        return cls(True, cycle, None, None, nodes)

    @classmethod
    def no(cls, reason: str = "exhaustive", detail=None, nodes: int = 0) -> "Verdict":
        return cls(False, None, reason, detail, nodes)


@dataclass(frozen=True)
class Pruning:
    degree: bool = True       # P1
    balance: bool = True      # P2
    premature: bool = True    # P3
    connectivity: bool = True  # P4
    matching: bool = True     # P5
    forcing: bool = True      # P6
    connectivity_every: Optional[int] = None

    def every(self, n: int) -> int:
        if self.connectivity_every is not None:
            return max(1, self.connectivity_every)
        return 1 if n <= 4 else 4


NO_PRUNING = Pruning(False, False, False, False, False, False)


def _propagate(nv: int, adj: list[set]) -> bool:
    """Root-level forcing on the adjacency sets ``adj``, in place (P6).

    Returns False when no Hamiltonian cycle can exist.
    """
    forced = [set() for _ in range(nv)]
    changed = True
    while changed:
        changed = False
        for v in range(nv):
            a = adj[v]
            if len(a) < 2:
                return False
            if len(a) == 2:
                for w in a - forced[v]:
                    forced[v].add(w)
                    forced[w].add(v)
                    if len(forced[w]) > 2:
                        return False
                    changed = True
            if len(forced[v]) == 2 and len(a) > 2:
                for w in a - forced[v]:
                    adj[w].discard(v)
                adj[v] = set(forced[v])
                changed = True
        # walk each forced path from one end; closing it early makes a short cycle
        seen = [False] * nv
        for v in range(nv):
            if seen[v] or len(forced[v]) != 1:
                continue
            prev, cur, length = -1, v, 1
            seen[v] = True
            while True:
                nxt = [w for w in forced[cur] if w != prev]
                if not nxt:
                    break
                prev, cur = cur, nxt[0]
                seen[cur] = True
                length += 1
            if length < nv and cur in adj[v] and cur not in forced[v]:
                adj[v].discard(cur)
                adj[cur].discard(v)
                changed = True
        # anything left with two forced edges lies on a forced cycle
        for v in range(nv):
            if seen[v] or len(forced[v]) != 2:
                continue
            prev, cur, length = -1, v, 1
            seen[v] = True
            while True:
                nxt = next(w for w in forced[cur] if w != prev)
                if nxt == v:
                    break
                prev, cur = cur, nxt
                seen[cur] = True
                length += 1
            if length < nv:
                return False
    return True


class _Search:
    def __init__(self, faults: FaultSet, pruning: Pruning, limit: Optional[int]):
        n = faults.n
        c = cube(n)
        self.n = n
        self.nv = c.nv
        inc = faults.incidence
        adj = [{v ^ (1 << i) for i in range(n) if not inc[v] >> i & 1} for v in range(c.nv)]
        self.infeasible = pruning.forcing and not _propagate(c.nv, adj)
        self.nbrs = [sorted(x) for x in adj]
        # healthy[i]: left endpoints u (bit i clear) whose dimension-i edge is usable
        self.healthy = [0] * n
        for i in range(n):
            b = 1 << i
            m = 0
            for u in range(c.nv):
                if not u & b and u ^ b in adj[u]:
                    m |= 1 << u
            self.healthy[i] = m
        self.even_left = [c.left_mask[i] & c.parity_mask[0] for i in range(n)]
        self.odd_left = [c.left_mask[i] & c.parity_mask[1] for i in range(n)]
        self.parity = c.parity
        self.quarter = c.nv >> 2
        self.p = pruning
        self.every = pruning.every(n)
        self.limit = limit
        self.found: list[tuple[int, ...]] = []
        self.nodes = 0

    # -- pruning helpers --------------------------------------------------

    def _balance_ok(self, free: int, used_e: list[int], used_o: list[int]) -> bool:
        for i in range(self.n):
            b = 1 << i
            pairs = free & (free >> b) & self.healthy[i]
            ue, uo = used_e[i], used_o[i]
            hi = min(ue + (pairs & self.even_left[i]).bit_count(), uo + (pairs & self.odd_left[i]).bit_count())
            lo = max(ue, uo, 1)
            if lo > hi:
                return False
        return True

    def _connected(self, region: int, head: int) -> bool:
        seen = 1 << head
        frontier = seen
        n = self.n
        healthy = self.healthy
        while frontier:
            nxt = 0
            for i in range(n):
                b = 1 << i
                h = healthy[i]
                nxt |= ((frontier & h) << b) | ((frontier >> b) & h)
            nxt &= region & ~seen
            seen |= nxt
            frontier = nxt
        return seen == region

    def _matching_ok(self, h: int) -> bool:
        nbrs = self.nbrs
        visited = self.visited
        nodes = [v for v in range(self.nv) if not visited[v]] + [h, 0]
        need = {v: 2 for v in nodes}
        need[h] = 1
        need[0] = 1
        parity = self.parity
        even = [v for v in nodes if not parity[v]]
        tot_e = sum(need[v] for v in even)
        if 2 * tot_e != sum(need.values()):
            return False
        mate: dict[int, list[int]] = {v: [] for v in nodes}
        skip = (h, 0) if len(self.path) == 2 else None
        adj = {}
        for u in even:
            adj[u] = [v for v in nbrs[u] if v in need and (u, v) != skip and (v, u) != skip]
        # greedy start
        for u in even:
            for v in adj[u]:
                if len(mate[u]) == need[u]:
                    break
                if len(mate[v]) < need[v]:
                    mate[u].append(v)
                    mate[v].append(u)
        for u in even:
            while len(mate[u]) < need[u]:
                if not self._augment(u, adj, mate, need):
                    return False
        return True

    @staticmethod
    def _augment(root, adj, mate, need) -> bool:
        # BFS over alternating paths: even -(free edge)-> odd -(matched edge)-> even
        prev = {root: None}
        queue = [root]
        for u in queue:
            for v in adj[u]:
                if v in prev or v in mate[u]:
                    continue
                prev[v] = u
                if len(mate[v]) < need[v]:
                    # flip the path ending at v
                    while True:
                        u0 = prev[v]
                        mate[u0].append(v)
                        mate[v].append(u0)
                        v_prev = prev[u0]
                        if v_prev is None:
                            return True
                        mate[u0].remove(v_prev)
                        mate[v_prev].remove(u0)
                        v = v_prev
                for u2 in mate[v]:
                    if u2 not in prev:
                        prev[u2] = v
                        queue.append(u2)
        return False

    # -- search -----------------------------------------------------------

    def run(self) -> None:
        if self.infeasible:
            return
        nv = self.nv
        nbrs = self.nbrs
        if self.p.degree and any(len(x) < 2 for x in nbrs):
            return
        if not nbrs[0]:
            return
        self.avail = [len(x) for x in nbrs]
        self.visited = [False] * nv
        self.visited[0] = True
        self.unvisited = ((1 << nv) - 1) ^ 1
        self.used_e = [0] * self.n
        self.used_o = [0] * self.n
        self.path = [0]
        for a in nbrs[0][:-1]:
            self.first = a
            self._step(0, a)
            if self._done():
                return

    def _done(self) -> bool:
        return self.limit is not None and len(self.found) >= self.limit

    def _step(self, h: int, w: int) -> None:
        """Move the head from ``h`` to ``w`` and continue; undo on return."""
        i = (h ^ w).bit_length() - 1
        lo = h if h < w else w
        odd = self.parity[lo]
        if odd:
            self.used_o[i] += 1
        else:
            self.used_e[i] += 1
        self.visited[w] = True
        self.unvisited ^= 1 << w
        self.path.append(w)
        self._extend(w)
        self.path.pop()
        self.unvisited ^= 1 << w
        self.visited[w] = False
        if odd:
            self.used_o[i] -= 1
        else:
            self.used_e[i] -= 1

    def _extend(self, h: int) -> None:
        self.nodes += 1
        nv = self.nv
        path = self.path
        if len(path) == nv:
            if h in self.nbrs[0] and h > self.first:
                self.found.append(tuple(path))
            return
        p = self.p
        visited = self.visited
        nbrs_h = self.nbrs[h]
        if p.balance or (p.connectivity and len(path) % self.every == 0):
            free = self.unvisited | (1 << h) | 1
            if p.balance and not self._balance_ok(free, self.used_e, self.used_o):
                return
            if p.connectivity and len(path) % self.every == 0 and not self._connected(free, h):
                return
        cands = [w for w in nbrs_h if not visited[w]]
        if not cands:
            return
        if p.matching and not self._matching_ok(h):
            return
        if not p.degree:
            for w in cands:
                self._step(h, w)
                if self._done():
                    return
            return
        # h becomes interior once the head leaves it
        avail = self.avail
        for x in nbrs_h:
            avail[x] -= 1
        try:
            forced = None
            for x in nbrs_h:
                if visited[x]:
                    continue
                if avail[x] < 1:
                    return
                if avail[x] < 2:
                    if forced is not None:
                        return
                    forced = x
            # vertex 0 still needs its closing edge from a free neighbor above `first`
            if p.premature and h in self.nbrs[0] and h > self.first:
                if not any(not visited[x] for x in self.nbrs[0] if x > self.first):
                    return
            if avail[0] < 1:
                return
            if forced is not None:
                cands = [forced]
            else:
                # fewest remaining options first
                cands.sort(key=avail.__getitem__)
            for w in cands:
                self._step(h, w)
                if self._done():
                    return
        finally:
            for x in nbrs_h:
                avail[x] += 1


def _search(faults: FaultSet, pruning: Pruning, limit: Optional[int]) -> _Search:
    if faults.n < 2:
        raise HypercubeError("Hamiltonian cycles need n >= 2")
    s = _Search(faults, pruning, limit)
    old = sys.getrecursionlimit()
    need = 4 * s.nv + 100
    if old < need:
        sys.setrecursionlimit(need)
    s.run()
    return s


def find_hamiltonian(n: int, faults: FaultSet | None = None, pruning: Pruning = Pruning()) -> Verdict:
    """Decide whether Q_n - F has a Hamiltonian cycle, with a certificate if so."""
    if faults is None:
        faults = FaultSet(n)
    if faults.n != n:
        raise HypercubeError(f"fault set is for Q_{faults.n}, not Q_{n}")
    s = _search(faults, pruning, 1)
    if s.found:
        return Verdict.yes(HamCycle(s.found[0]), s.nodes)
    return Verdict.no("exhaustive", nodes=s.nodes)


def is_hamiltonian(n: int, faults: FaultSet | None = None, pruning: Pruning = Pruning()) -> bool:
    return find_hamiltonian(n, faults, pruning).hamiltonian


def count_hamiltonian(n: int, faults: FaultSet | None = None, limit: Optional[int] = None,
                      pruning: Pruning = Pruning()) -> int:
    """Number of undirected Hamiltonian cycles, capped at ``limit``."""
    return len(all_hamiltonian(n, faults, limit, pruning))


def all_hamiltonian(n: int, faults: FaultSet | None = None, limit: Optional[int] = None,
                    pruning: Pruning = Pruning()) -> list[HamCycle]:
    if faults is None:
        faults = FaultSet(n)
    s = _search(faults, pruning, limit)
    return [HamCycle(p) for p in s.found]
