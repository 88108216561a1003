"""Disconnected-halfway (DHW) sets, claw traps, and their generators.

A vertex set ``T`` is DHW on side ``s`` when at least half of ``T`` has
parity ``s`` and every edge from a parity-``s`` vertex of ``T`` to a vertex
outside ``T`` is faulty.  Such a set rules out Hamiltonian cycles: each
visit of ``T`` passes one more parity-(1-s) vertex than parity-``s`` ones.

A claw (CL) is a vertex ``u`` with three healthy neighbors of degree two;
a Hamiltonian cycle would need all three edges at ``u``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .core import Edge, FaultSet, HypercubeError, cube, mask_vertices, vertex_mask
from .cycles import BASE_CYCLES, Kind, classify_cycle, enumerate_cycles
from .symmetry import Automorphism, apply


class NotDisconnectedHalfway(ValueError):
    """``T`` fails the DHW conditions; ``edge`` is the first healthy boundary edge, if any."""

    def __init__(self, message: str, edge: Optional[Edge] = None):
        super().__init__(message)
        self.edge = edge


@dataclass(frozen=True)
class DhwWitness:
    T: tuple[int, ...]
    side: int
    boundary: tuple[Edge, ...]

    @property
    def size(self) -> int:
        return len(self.T)

    def counts(self) -> tuple[int, int]:
        c = [0, 0]
        for v in self.T:
            c[v.bit_count() & 1] += 1
        return c[0], c[1]


@dataclass(frozen=True)
class ClMark:
    center: int
    leaves: tuple[int, int, int]


@dataclass(frozen=True)
class TrapReport:
    kind: Kind
    side: Optional[int]
    witness: DhwWitness | ClMark
    faults: FaultSet = field(compare=False, repr=False)

    @property
    def T(self) -> tuple[int, ...]:
        if isinstance(self.witness, ClMark):
            return tuple(sorted((self.witness.center,) + self.witness.leaves))
        return self.witness.T

    @property
    def boundary(self) -> tuple[Edge, ...]:
        if isinstance(self.witness, ClMark):
            return cl_faults(self.faults, self.witness)
        return self.witness.boundary

    def sort_key(self):
        return (self.kind.order, self.T, -1 if self.side is None else self.side)

    def to_json(self) -> dict:
        d = {
            "kind": self.kind.value,
            "side": self.side,
            "T": list(self.T),
            "boundary": [list(e) for e in self.boundary],
            "faults": {"n": self.faults.n, "edges": [list(e) for e in self.faults.edges]},
        }
        if isinstance(self.witness, ClMark):
            d["center"] = self.witness.center
            d["leaves"] = list(self.witness.leaves)
        return d

    @classmethod
    def from_json(cls, d: dict) -> "TrapReport":
        f = FaultSet(d["faults"]["n"], tuple(Edge.of(*e) for e in d["faults"]["edges"]))
        kind = Kind(d["kind"])
        if kind is Kind.CL:
            w = ClMark(d["center"], tuple(d["leaves"]))
        else:
            w = DhwWitness(tuple(d["T"]), d["side"], tuple(Edge.of(*e) for e in d["boundary"]))
        return cls(kind, d["side"], w, f)


# --- verification ----------------------------------------------------------

def _boundary(n: int, T: set[int], side: int) -> list[Edge]:
    out = []
    for u in sorted(T):
        if u.bit_count() & 1 != side:
            continue
        for i in range(n):
            w = u ^ (1 << i)
            if w not in T:
                out.append(Edge.of(u, w))
    out.sort()
    return out


def dhw_boundary(n: int, T: Iterable[int], side: int) -> list[Edge]:
    """Edges joining the parity-``side`` vertices of ``T`` to the rest of Q_n."""
    Ts = _check_T(n, T)
    return _boundary(n, Ts, side)


def _check_T(n: int, T: Iterable[int]) -> set[int]:
    Ts = set(T)
    if not Ts:
        raise HypercubeError("T must be nonempty")
    if len(Ts) >= 1 << n:
        raise HypercubeError("T must be a proper subset of the vertices")
    if min(Ts) < 0 or max(Ts) >= 1 << n:
        raise HypercubeError(f"T has labels outside Q_{n}")
    return Ts


def verify_dhw(n: int, faults: FaultSet, T: Iterable[int], side: int) -> DhwWitness:
    Ts = _check_T(n, T)
    ns = sum(1 for v in Ts if v.bit_count() & 1 == side)
    if ns < len(Ts) - ns:
        raise NotDisconnectedHalfway(
            f"T has {ns} vertices of parity {side} and {len(Ts) - ns} of parity {1 - side}"
        )
    boundary = _boundary(n, Ts, side)
    for e in boundary:
        if e not in faults:
            raise NotDisconnectedHalfway(f"boundary edge {tuple(e)} is healthy", e)
    return DhwWitness(tuple(sorted(Ts)), side, tuple(boundary))


def is_dhw(n: int, faults: FaultSet, T: Iterable[int], side: int) -> bool:
    try:
        verify_dhw(n, faults, T, side)
    except NotDisconnectedHalfway:
        return False
    return True


def verify_cl(faults: FaultSet, mark: ClMark) -> bool:
    u = mark.center
    for v in mark.leaves:
        if (u ^ v).bit_count() != 1 or (u, v) in faults or faults.degree(v) != 2:
            return False
    return len(set(mark.leaves)) == 3


def cl_faults(faults: FaultSet, mark: ClMark) -> tuple[Edge, ...]:
    """The faulty edges at the leaves of a claw."""
    out = []
    for v in mark.leaves:
        for i in range(faults.n):
            e = Edge.of(v, v ^ (1 << i))
            if e in faults:
                out.append(e)
    return tuple(sorted(set(out)))


def verify_report(report: TrapReport, faults: FaultSet | None = None) -> bool:
    f = report.faults if faults is None else faults
    if isinstance(report.witness, ClMark):
        return verify_cl(f, report.witness)
    return is_dhw(f.n, f, report.witness.T, report.witness.side)


# --- generators ------------------------------------------------------------

_SUBCUBE_DIM = {Kind.Q1DHW: 1, Kind.Q2DHW: 2, Kind.Q3DHW: 3, Kind.Q4DHW: 4}


def base_vertex_set(kind: Kind, n: int) -> tuple[int, ...]:
    kind = Kind(kind)
    if kind in _SUBCUBE_DIM:
        k = _SUBCUBE_DIM[kind]
        if n <= k:
            raise HypercubeError(f"{kind} needs n > {k}, got n = {n}")
        return tuple(range(1 << k))
    if kind in BASE_CYCLES:
        cyc = BASE_CYCLES[kind]
        if max(cyc) >= 1 << n or len(cyc) >= 1 << n:
            raise HypercubeError(f"{kind} needs a larger cube than Q_{n}")
        return cyc
    raise HypercubeError(f"{kind} has no base vertex set")


def generate_trap(kind, n: int, side: int = 0, embedding: Optional[Automorphism] = None) -> FaultSet:
    """Fault set realizing a trap of the given kind, optionally moved by an automorphism.

    DHW kinds cut off the parity-``side`` vertices of the base subcube or
    cycle; ``CL`` ignores ``side`` and builds a claw centered at 0.
    """
    kind = Kind(kind)
    if side not in (0, 1):
        raise HypercubeError("side must be 0 or 1")
    if kind is Kind.CL:
        f = _claw(n)
    elif kind is Kind.GenericDHW:
        raise HypercubeError("GenericDHW has no generator; see the Q5 presets in hypertrap.catalog")
    else:
        T = base_vertex_set(kind, n)
        f = FaultSet(n, tuple(_boundary(n, set(T), side)))
    if embedding is not None:
        f = apply(embedding, f)
    return f


def _claw(n: int) -> FaultSet:
    if n < 3:
        raise HypercubeError("CL needs n >= 3")
    center = 0
    leaves = [1, 2, 4]
    deg = [n] * (1 << n)
    chosen: list[Edge] = []
    for v in leaves:
        taken = 0
        for i in range(n):
            w = v ^ (1 << i)
            if w == center:
                continue
            if taken == n - 2:
                break
            # keep every non-leaf at degree >= 2
            if w not in leaves and deg[w] <= 2:
                continue
            chosen.append(Edge.of(v, w))
            deg[v] -= 1
            deg[w] -= 1
            taken += 1
        if taken != n - 2:
            raise HypercubeError(f"could not cut leaf {v} down to degree 2")
    return FaultSet(n, tuple(chosen))


# --- detection -------------------------------------------------------------

@dataclass
class _Shell:
    kind: Kind
    T: int                  # vertex mask
    boundary: tuple[int, int]   # edge masks, per side
    cycles: list[tuple[Kind, int]]  # (kind, cycle edge mask); empty for subcubes


@lru_cache(maxsize=None)
def _shells(n: int) -> tuple[_Shell, ...]:
    c = cube(n)
    out: list[_Shell] = []

    def bmasks(T: set[int]) -> tuple[int, int]:
        return tuple(c.edge_mask(_boundary(n, T, s)) for s in (0, 1))

    for kind, k in ((Kind.Q2DHW, 2), (Kind.Q3DHW, 3), (Kind.Q4DHW, 4)):
        if k >= n:
            continue
        for dims in itertools.combinations(range(n), k):
            others = [i for i in range(n) if i not in dims]
            for fill in range(1 << len(others)):
                high = sum(1 << i for j, i in enumerate(others) if fill >> j & 1)
                T = {high | sum(1 << i for j, i in enumerate(dims) if x >> j & 1) for x in range(1 << k)}
                out.append(_Shell(kind, vertex_mask(T), bmasks(T), []))
    by_T: dict[int, _Shell] = {}
    for L in (6, 8):
        if L >= c.nv or L // 2 > n:
            continue
        for cyc in enumerate_cycles(n, L):
            kind = classify_cycle(cyc)
            if kind is Kind.C8_1:
                continue  # the Q3 subcube shell covers it
            tm = vertex_mask(cyc)
            em = c.edge_mask(Edge.of(a, b) for a, b in zip(cyc, cyc[1:] + cyc[:1]))
            sh = by_T.get(tm)
            if sh is None:
                sh = by_T[tm] = _Shell(kind, tm, bmasks(set(cyc)), [])
            sh.cycles.append((kind, em))
    for sh in by_T.values():
        sh.cycles.sort(key=lambda ke: ke[0].order)
        sh.kind = sh.cycles[0][0]
    out.extend(sorted(by_T.values(), key=lambda s: s.T))
    return tuple(out)


def detect_traps(n: int, faults: FaultSet, generic_max_T: Optional[int] = None,
                 healthy_cycles: bool = True) -> list[TrapReport]:
    """All traps with |T| <= 8, plus an optional generic DHW search.

    Q1-DHW vertices, Q2/Q3/Q4 subcubes, 6- and 8-cycles (through healthy
    edges when ``healthy_cycles``) and claws are scanned.  Reports are sorted
    by kind, then by vertex set and side.
    """
    if faults.n != n:
        raise HypercubeError(f"fault set is for Q_{faults.n}, not Q_{n}")
    reports: list[TrapReport] = []
    F = faults.mask
    inc = faults.incidence
    for v in range(1 << n):
        if inc[v].bit_count() >= n - 1:
            healthy = [v ^ (1 << i) for i in range(n) if not inc[v] >> i & 1]
            w = healthy[0] if healthy else v ^ 1
            T = tuple(sorted((v, w)))
            side = v.bit_count() & 1
            bd = tuple(e for e in _boundary(n, set(T), side))
            reports.append(TrapReport(Kind.Q1DHW, side, DhwWitness(T, side, bd), faults))
    for sh in _shells(n):
        for side in (0, 1):
            if sh.boundary[side] & ~F:
                continue
            kind = sh.kind
            if sh.cycles:
                ok = [k for k, em in sh.cycles if not (healthy_cycles and em & F)]
                if not ok:
                    continue
                kind = ok[0]
            T = tuple(mask_vertices(sh.T))
            bd = tuple(cube(n).edges_of(sh.boundary[side]))
            reports.append(TrapReport(kind, side, DhwWitness(T, side, bd), faults))
    for mark in find_claws(faults):
        reports.append(TrapReport(Kind.CL, None, mark, faults))
    if generic_max_T is not None:
        w = detect_generic_dhw(n, faults, generic_max_T)
        if w is not None and not any(r.T == w.T and r.side == w.side for r in reports):
            reports.append(TrapReport(Kind.GenericDHW, w.side, w, faults))
    reports.sort(key=TrapReport.sort_key)
    return reports


def find_claws(faults: FaultSet) -> list[ClMark]:
    n = faults.n
    inc = faults.incidence
    out = []
    for u in range(1 << n):
        leaves = [v for v in (u ^ (1 << i) for i in range(n) if not inc[u] >> i & 1)
                  if n - inc[v].bit_count() == 2]
        for trio in itertools.combinations(sorted(leaves), 3):
            out.append(ClMark(u, trio))
    return out


def trap_kinds(reports: Sequence[TrapReport]) -> set[Kind]:
    return {r.kind for r in reports}


# --- generic DHW search ----------------------------------------------------

def detect_generic_dhw(n: int, faults: FaultSet, max_T: int) -> Optional[DhwWitness]:
    """Smallest DHW set with |T| <= max_T whose induced subgraph is connected.

    For a side ``s`` the search grows sets ``S`` of parity-``s`` vertices,
    seeded at vertices with a faulty edge, and takes ``T = S + N(S)`` with
    ``N`` the healthy neighborhood.  ``T`` is DHW iff ``|N(S)| <= |S|``.
    A branch is cut once ``|T|`` plus the remaining deficit ``|N(S)| - |S|``
    exceeds ``max_T``, since each added vertex lowers the deficit by at most
    one.  Ties break on size, then on the sorted vertex list, then on side.
    """
    if max_T > (1 << n) - 2:
        raise HypercubeError(f"max_T must be at most {(1 << n) - 2}")
    c = cube(n)
    inc = faults.incidence
    hn = [vertex_mask(v ^ (1 << i) for i in range(n) if not inc[v] >> i & 1) for v in range(c.nv)]
    # parity-s vertices sharing a healthy neighbor with v
    best: Optional[tuple[int, tuple[int, ...], int]] = None
    for side in (0, 1):
        pm = c.parity_mask[side]
        seeds = [v for v in mask_vertices(pm) if inc[v]]
        if not seeds:
            continue
        link = [0] * c.nv
        for v in mask_vertices(pm):
            m = 0
            for w in mask_vertices(hn[v]):
                m |= hn[w]
            link[v] = m & ~(1 << v)
        seen: set[int] = set()
        stack = []
        for s in seeds:
            S = 1 << s
            if S not in seen:
                seen.add(S)
                stack.append((S, hn[s]))
        while stack:
            S, N = stack.pop()
            ns, nn = S.bit_count(), N.bit_count()
            size = ns + nn
            if size > max_T:
                continue
            if nn <= ns and size < c.nv:
                T = tuple(mask_vertices(S | N))
                cand = (size, T, side)
                if best is None or cand < best:
                    best = cand
                continue  # supersets are larger
            if best is not None and size + (nn - ns) > best[0]:
                continue
            if size + max(nn - ns, 0) > max_T:
                continue
            frontier = 0
            for v in mask_vertices(S):
                frontier |= link[v]
            frontier &= ~S
            for w in mask_vertices(frontier):
                S2 = S | (1 << w)
                if S2 in seen:
                    continue
                seen.add(S2)
                stack.append((S2, N | hn[w]))
    if best is None:
        return None
    size, T, side = best
    return verify_dhw(n, faults, T, side)


# --- reduction -------------------------------------------------------------

def _components(n: int, T: set[int], removed_edge: Optional[Edge] = None) -> list[set[int]]:
    left = set(T)
    comps = []
    while left:
        root = min(left)
        comp = {root}
        stack = [root]
        left.discard(root)
        while stack:
            v = stack.pop()
            for i in range(n):
                w = v ^ (1 << i)
                if w in left and (removed_edge is None or Edge.of(v, w) != removed_edge):
                    left.discard(w)
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def _balanced(T: set[int]) -> bool:
    odd = sum(v.bit_count() & 1 for v in T)
    return 2 * odd == len(T)


def reduce_witness(w: DhwWitness, faults: FaultSet) -> DhwWitness:
    """Shrink a DHW witness by the standard reductions until none applies.

    Faults inside ``T`` are ignored (only the boundary is kept).  Then, in
    order: drop surplus side vertices, keep one DHW component, resolve
    pendant vertices, and cut at a bridge between two balanced parts.
    """
    n = faults.n
    s = w.side
    verify_dhw(n, faults, w.T, s)
    T = set(w.T)

    def nbrs_in(v: int, S: set[int]) -> list[int]:
        return [v ^ (1 << i) for i in range(n) if v ^ (1 << i) in S]

    changed = True
    while changed:
        changed = False
        side_v = sorted(v for v in T if v.bit_count() & 1 == s)
        other = len(T) - len(side_v)
        if len(T) == 1:
            # a cut-off vertex: pair it with any neighbor
            v = side_v[0]
            T = {v, v ^ 1}
            break
        # surplus side vertices
        if len(side_v) > other:
            faulted = [v for v in side_v if any(Edge.of(v, x) in faults for x in _outside(n, v, T))]
            x = (faulted or side_v)[0]
            T.discard(x)
            changed = True
            continue
        comps = _components(n, T)
        if len(comps) > 1:
            for comp in comps:
                cs = sum(1 for v in comp if v.bit_count() & 1 == s)
                if 2 * cs >= len(comp):
                    T = comp
                    break
            changed = True
            continue
        if len(T) <= 2:
            break
        # pendant vertex
        for v in sorted(T):
            nb = nbrs_in(v, T)
            if len(nb) == 1:
                v0 = nb[0]
                if v.bit_count() & 1 == s:
                    T = {v, v0}
                else:
                    T = T - {v, v0}
                changed = True
                break
        if changed:
            continue
        # bridge between two balanced parts
        for v in sorted(T):
            for u in nbrs_in(v, T):
                if u < v:
                    continue
                e = Edge.of(u, v)
                parts = _components(n, T, e)
                if len(parts) == 2 and all(_balanced(p) for p in parts):
                    nonside = u if u.bit_count() & 1 != s else v
                    T = next(p for p in parts if nonside in p)
                    changed = True
                    break
            if changed:
                break
    return verify_dhw(n, faults, T, s)


def _outside(n: int, v: int, T: set[int]) -> list[int]:
    return [v ^ (1 << i) for i in range(n) if v ^ (1 << i) not in T]


# --- minimality ------------------------------------------------------------

def check_minimality(n: int, faults: FaultSet) -> bool:
    """True iff Q_n - F is non-Hamiltonian but removing any one fault restores a cycle."""
    from .solver import is_hamiltonian

    if is_hamiltonian(n, faults):
        return False
    return all(is_hamiltonian(n, faults.without(e)) for e in faults.edges)
