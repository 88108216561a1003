"""Automorphisms of Q_n and canonical forms of fault sets.

Every automorphism is a dimension permutation followed by an XOR
translation, ``a(x) = permute(x) ^ xor`` where bit ``j`` of ``permute(x)`` is
bit ``perm[j]`` of ``x``.  The group has ``2**n * n!`` elements.

The canonical form of a fault set is the lexicographically smallest sorted
edge list over its orbit.  For n <= 5 the whole group is swept with numpy
edge-image tables; above that only the automorphisms sending some fault onto
edge (0, 1) are tried, since the minimum always starts with that edge.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .core import Edge, FaultSet, HypercubeError, check_dim, cube

FULL_SWEEP_MAX_N = 5


@dataclass(frozen=True)
class Automorphism:
    perm: tuple[int, ...]
    xor: int = 0

    def __post_init__(self) -> None:
        if sorted(self.perm) != list(range(len(self.perm))):
            raise HypercubeError(f"{self.perm} is not a permutation")
        if not 0 <= self.xor < 1 << len(self.perm):
            raise HypercubeError(f"xor {self.xor} out of range")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "Automorphism":
        return cls(tuple(range(n)), 0)

    def permute(self, x: int) -> int:
        y = 0
        for j, src in enumerate(self.perm):
            if x >> src & 1:
                y |= 1 << j
        return y

    def __call__(self, x: int) -> int:
        return self.permute(x) ^ self.xor

    def edge(self, e: Edge) -> Edge:
        return Edge.of(self(e.lo), self(e.hi))

    def compose(self, other: "Automorphism") -> "Automorphism":
        """``self.compose(other)(x) == self(other(x))``."""
        if other.n != self.n:
            raise HypercubeError("dimension mismatch")
        # permute(a ^ b) = permute(a) ^ permute(b); perms compose by index chasing
        perm = tuple(other.perm[self.perm[j]] for j in range(self.n))
        return Automorphism(perm, self.permute(other.xor) ^ self.xor)

    def inverse(self) -> "Automorphism":
        inv = [0] * self.n
        for j, src in enumerate(self.perm):
            inv[src] = j
        inv_t = tuple(inv)
        return Automorphism(inv_t, Automorphism(inv_t).permute(self.xor))


def group(n: int) -> Iterator[Automorphism]:
    """All automorphisms of Q_n; permutation-major, identity first."""
    for perm in itertools.permutations(range(n)):
        for v in range(1 << n):
            yield Automorphism(perm, v)


def group_order(n: int) -> int:
    return (1 << n) * math.factorial(n)


def apply(a: Automorphism, faults: FaultSet) -> FaultSet:
    if a.n != faults.n:
        raise HypercubeError(f"automorphism of Q_{a.n} applied to a fault set of Q_{faults.n}")
    return FaultSet(faults.n, tuple(a.edge(e) for e in faults.edges))


def apply_vertices(a: Automorphism, vertices) -> list[int]:
    return sorted(a(v) for v in vertices)


@lru_cache(maxsize=None)
def _tables(n: int) -> tuple[list[Automorphism], np.ndarray]:
    """Group elements and the matching (|G|, E) table of edge-index images."""
    c = cube(n)
    elems = list(group(n))
    vimg = np.empty((len(elems), c.nv), dtype=np.int64)
    for g, a in enumerate(elems):
        base = [a.permute(x) for x in range(c.nv)]
        vimg[g] = np.asarray(base, dtype=np.int64) ^ a.xor
    lo = np.array([e.lo for e in c.edges])
    hi = np.array([e.hi for e in c.edges])
    a_lo, a_hi = vimg[:, lo], vimg[:, hi]
    key = np.minimum(a_lo, a_hi) * c.nv + np.maximum(a_lo, a_hi)
    lookup = np.full(c.nv * c.nv, -1, dtype=np.int64)
    for k, e in enumerate(c.edges):
        lookup[e.lo * c.nv + e.hi] = k
    etab = lookup[key].astype(np.int16 if c.ne < 32767 else np.int32)
    assert (etab >= 0).all()
    return elems, etab


def edge_table(n: int) -> np.ndarray:
    return _tables(n)[1]


def group_elements(n: int) -> list[Automorphism]:
    return _tables(n)[0]


def _edge_indices(faults: FaultSet) -> np.ndarray:
    idx = cube(faults.n).index
    return np.array([idx[e] for e in faults.edges], dtype=np.int64)


def _lexmin_row(rows: np.ndarray) -> int:
    """Index of the lexicographically smallest row (rows already sorted)."""
    # np.lexsort uses the last key as primary
    return int(np.lexsort(rows.T[::-1])[0])


def _candidates_pruned(faults: FaultSet) -> list[Automorphism]:
    """Automorphisms that send some fault onto edge (0, 1)."""
    n = faults.n
    out = []
    for f in faults.edges:
        d = f.dim
        rest = [i for i in range(n) if i != d]
        for tail in itertools.permutations(rest):
            perm = (d,) + tail
            p = Automorphism(perm)
            for end in (f.lo, f.hi):
                out.append(Automorphism(perm, p.permute(end)))
    return out


# numpy handles the pruned sweep up to this n; beyond it (n-1)! rows get too big
VECTOR_MAX_N = 9


@lru_cache(maxsize=None)
def _perms_with_first(n: int, d: int) -> np.ndarray:
    rest = [i for i in range(n) if i != d]
    return np.array([(d,) + t for t in itertools.permutations(rest)], dtype=np.int64)


@lru_cache(maxsize=None)
def _up_offsets(n: int) -> np.ndarray:
    """Index of the first edge (u, ...) in the sorted edge list, per vertex u."""
    up = n - np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)
    return np.concatenate(([0], np.cumsum(up)[:-1]))


def edge_indices(n: int, lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """Vectorized ``cube(n).index`` for edges given as endpoint arrays (lo < hi)."""
    below = (lo ^ hi) - 1
    return _up_offsets(n)[lo] + np.bitwise_count(~lo & below).astype(np.int64)


def _pruned_rows_numpy(faults: FaultSet) -> tuple[np.ndarray, list]:
    n = faults.n
    k = len(faults)
    X = np.array([e.lo for e in faults.edges] + [e.hi for e in faults.edges], dtype=np.int64)
    shifts = np.arange(n, dtype=np.int64)
    rows, wit = [], []
    for j, f in enumerate(faults.edges):
        P = _perms_with_first(n, f.dim)
        VX = (((X[None, :, None] >> P[:, None, :]) & 1) << shifts).sum(axis=2)
        for pos in (j, j + k):
            A = VX ^ VX[:, pos:pos + 1]
            lo = np.minimum(A[:, :k], A[:, k:])
            hi = np.maximum(A[:, :k], A[:, k:])
            rows.append(np.sort(edge_indices(n, lo, hi), axis=1))
            wit.append((P, VX[:, pos]))
    return np.concatenate(rows), wit


def _image_rows(faults: FaultSet) -> tuple[np.ndarray, list[Automorphism] | None]:
    n = faults.n
    if n <= FULL_SWEEP_MAX_N:
        etab = edge_table(n)
        rows = np.sort(etab[:, _edge_indices(faults)], axis=1)
        return rows, None
    c = cube(n)
    cands = _candidates_pruned(faults)
    rows = np.array(
        [sorted(c.index[a.edge(e)] for e in faults.edges) for a in cands], dtype=np.int64
    )
    return rows, cands


def _lexmin_pruned(faults: FaultSet) -> tuple[np.ndarray, Automorphism]:
    rows, wit = _pruned_rows_numpy(faults)
    best = _lexmin_row(rows)
    j = best
    for P, xors in wit:
        if j < len(P):
            return rows[best], Automorphism(tuple(int(x) for x in P[j]), int(xors[j]))
        j -= len(P)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class CanonicalForm:
    rep: FaultSet
    # an automorphism mapping the input onto rep
    witness: Automorphism


def canonical_form(faults: FaultSet) -> CanonicalForm:
    n = faults.n
    if not faults.edges:
        return CanonicalForm(faults, Automorphism.identity(n))
    c = cube(n)
    if FULL_SWEEP_MAX_N < n <= VECTOR_MAX_N:
        row, a = _lexmin_pruned(faults)
        return CanonicalForm(FaultSet(n, tuple(c.edges[int(k)] for k in row)), a)
    rows, cands = _image_rows(faults)
    best = _lexmin_row(rows)
    elems = cands if cands is not None else group_elements(n)
    rep = FaultSet(n, tuple(c.edges[int(k)] for k in rows[best]))
    return CanonicalForm(rep, elems[best])


def canonical_key(faults: FaultSet) -> tuple[Edge, ...]:
    return canonical_form(faults).rep.edges


def are_isomorphic(f1: FaultSet, f2: FaultSet) -> bool:
    if f1.n != f2.n:
        raise HypercubeError(f"fault sets of Q_{f1.n} and Q_{f2.n} cannot be compared")
    if len(f1) != len(f2):
        return False
    return canonical_key(f1) == canonical_key(f2)


def is_orderly_canonical(faults: FaultSet) -> bool:
    return canonical_key(faults) == faults.edges


def stabilizer_order(faults: FaultSet) -> int:
    """Number of automorphisms fixing ``faults`` setwise (full sweep)."""
    n = check_dim(faults.n)
    if n > FULL_SWEEP_MAX_N:
        raise HypercubeError("stabilizer sweep is limited to n <= 5")
    if not faults.edges:
        return group_order(n)
    idx = _edge_indices(faults)
    rows = np.sort(edge_table(n)[:, idx], axis=1)
    return int((rows == np.sort(idx)).all(axis=1).sum())


def orbit(faults: FaultSet) -> set[tuple[Edge, ...]]:
    """Distinct images of ``faults`` (full sweep, n <= 5)."""
    if faults.n > FULL_SWEEP_MAX_N:
        raise HypercubeError("orbit sweep is limited to n <= 5")
    c = cube(faults.n)
    if not faults.edges:
        return {()}
    rows = np.unique(np.sort(edge_table(faults.n)[:, _edge_indices(faults)], axis=1), axis=0)
    return {tuple(c.edges[int(k)] for k in r) for r in rows}
