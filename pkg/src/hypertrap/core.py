"""Vertices, edges and fault sets of the hypercube Q_n.

Vertices are plain integers ``0 <= v < 2**n``; bit ``i`` of a label is the
coordinate along dimension ``i``.  An edge is stored normalized as
``(lo, hi)`` with ``lo < hi`` and ``lo ^ hi`` a power of two.

Edges of Q_n are indexed in ``(lo, hi)`` order, which lets fault sets be held
as integer bitmasks over edge indices; the sorted edge list is the canonical
I/O form.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

MAX_DIM = 16


class HypercubeError(ValueError):
    """Raised for labels, pairs or dimensions that are not valid in Q_n."""


def check_dim(n: int) -> int:
    if not isinstance(n, int) or not 1 <= n <= MAX_DIM:
        raise HypercubeError(f"dimension must be an integer in [1, {MAX_DIM}], got {n!r}")
    return n


def parity(v: int) -> int:
    """Number of one-bits of ``v`` modulo 2."""
    return v.bit_count() & 1


class Edge(NamedTuple):
    lo: int
    hi: int

    @property
    def dim(self) -> int:
        return (self.lo ^ self.hi).bit_length() - 1

    @classmethod
    def of(cls, u: int, v: int) -> "Edge":
        """Normalize an unordered pair; raises if it is not a hypercube edge."""
        x = u ^ v
        if u < 0 or v < 0 or x == 0 or x & (x - 1):
            raise HypercubeError(f"({u}, {v}) is not a hypercube edge")
        return cls(u, v) if u < v else cls(v, u)

    def other(self, v: int) -> int:
        return self.hi if v == self.lo else self.lo

    def valid_in(self, n: int) -> bool:
        return self.hi < (1 << n)


@dataclass(frozen=True)
class CubeDim:
    n: int

    def __post_init__(self) -> None:
        check_dim(self.n)

    @property
    def vertex_count(self) -> int:
        return 1 << self.n

    @property
    def edge_count(self) -> int:
        return self.n << (self.n - 1)


class Cube:
    """Precomputed lookup tables for Q_n.  Use :func:`cube` to get a cached instance."""

    def __init__(self, n: int):
        check_dim(n)
        self.n = n
        self.nv = 1 << n
        self.ne = n << (n - 1)
        self.full = (1 << self.nv) - 1
        edges = [Edge(u, u | (1 << i)) for u in range(self.nv) for i in range(n) if not u >> i & 1]
        edges.sort()
        self.edges: list[Edge] = edges
        self.index: dict[Edge, int] = {e: k for k, e in enumerate(edges)}
        # edge_id[v][i] -> index of the edge (v, v ^ 2**i)
        self.edge_id = [[self.index[Edge.of(v, v ^ (1 << i))] for i in range(n)] for v in range(self.nv)]
        self.parity = [parity(v) for v in range(self.nv)]
        self.parity_mask = [0, 0]
        for v in range(self.nv):
            self.parity_mask[self.parity[v]] |= 1 << v
        # vertices with bit i clear, as a vertex bitmask
        self.left_mask = [sum(1 << v for v in range(self.nv) if not v >> i & 1) for i in range(n)]

    def neighbors(self, v: int) -> list[int]:
        return [v ^ (1 << i) for i in range(self.n)]

    def edge_mask(self, edges: Iterable[Edge | tuple[int, int]]) -> int:
        m = 0
        for e in edges:
            m |= 1 << self.index[Edge.of(*e)]
        return m

    def edges_of(self, mask: int) -> list[Edge]:
        out = []
        while mask:
            low = mask & -mask
            out.append(self.edges[low.bit_length() - 1])
            mask ^= low
        return out


@lru_cache(maxsize=None)
def cube(n: int) -> Cube:
    return Cube(n)


def vertex_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def mask_vertices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class FaultSet:
    """A set of faulty edges of Q_n, kept as a strictly sorted tuple of edges."""

    n: int
    edges: tuple[Edge, ...] = field(default=())

    def __post_init__(self) -> None:
        check_dim(self.n)
        norm = sorted({Edge.of(*e) for e in self.edges})
        for e in norm:
            if not e.valid_in(self.n):
                raise HypercubeError(f"edge {tuple(e)} is not in Q_{self.n}")
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "FaultSet":
        return cls(n, tuple(cube(n).edges_of(mask)))

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, e) -> bool:
        try:
            e = Edge.of(*e)
        except HypercubeError:
            return False
        return e.valid_in(self.n) and bool(self.mask >> cube(self.n).index[e] & 1)

    @cached_property
    def mask(self) -> int:
        return cube(self.n).edge_mask(self.edges)

    @cached_property
    def incidence(self) -> tuple[int, ...]:
        """Per vertex, a bitmask over dimensions of its faulty incident edges."""
        inc = [0] * (1 << self.n)
        for e in self.edges:
            bit = 1 << e.dim
            inc[e.lo] |= bit
            inc[e.hi] |= bit
        return tuple(inc)

    def fault_degree(self, v: int) -> int:
        return self.incidence[v].bit_count()

    def degree(self, v: int) -> int:
        """Healthy degree of ``v`` in Q_n - F."""
        return self.n - self.incidence[v].bit_count()

    def with_edges(self, edges: Iterable) -> "FaultSet":
        return FaultSet(self.n, self.edges + tuple(Edge.of(*e) for e in edges))

    def without(self, e) -> "FaultSet":
        e = Edge.of(*e)
        return FaultSet(self.n, tuple(x for x in self.edges if x != e))

    def pairs(self) -> list[tuple[int, int]]:
        return [tuple(e) for e in self.edges]

    def __repr__(self) -> str:
        return f"FaultSet(n={self.n}, edges={self.pairs()})"


def healthy_neighbors(n: int, v: int, faults: FaultSet) -> list[int]:
    """Neighbors of ``v`` joined to it by edges not in ``faults``, ascending."""
    if not 0 <= v < 1 << n:
        raise HypercubeError(f"vertex {v} is not in Q_{n}")
    inc = faults.incidence[v]
    return sorted(v ^ (1 << i) for i in range(n) if not inc >> i & 1)


class Crossing(enum.Enum):
    NOT_CROSSING = "not-crossing"
    EVEN = "even"
    ODD = "odd"


def classify_crossing(e: Edge | tuple[int, int], dim: int) -> Crossing:
    e = Edge.of(*e)
    if e.dim != dim:
        return Crossing.NOT_CROSSING
    # lo is the endpoint with bit `dim` clear
    return Crossing.EVEN if parity(e.lo) == 0 else Crossing.ODD


@dataclass(frozen=True)
class PartitionView:
    """Split of Q_n along one dimension into the halves with that bit 0 / 1."""

    n: int
    dim: int

    def __post_init__(self) -> None:
        check_dim(self.n)
        if not 0 <= self.dim < self.n:
            raise HypercubeError(f"dimension {self.dim} out of range for Q_{self.n}")

    def is_left(self, v: int) -> bool:
        return not v >> self.dim & 1

    def left(self) -> list[int]:
        return [v for v in range(1 << self.n) if self.is_left(v)]

    def right(self) -> list[int]:
        return [v for v in range(1 << self.n) if not self.is_left(v)]

    def crossing_edges(self) -> list[Edge]:
        b = 1 << self.dim
        return [Edge(u, u | b) for u in self.left()]

    def even_edges(self) -> list[Edge]:
        return [e for e in self.crossing_edges() if parity(e.lo) == 0]

    def odd_edges(self) -> list[Edge]:
        return [e for e in self.crossing_edges() if parity(e.lo) == 1]


# --- fault-set text format -------------------------------------------------

_HEADER = re.compile(r"^\s*n\s*=\s*(\d+)\s*$")


class FaultFileError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def parse_faults(text: str) -> FaultSet:
    """Parse the ``n=<int>`` / ``<u> <v>`` text format."""
    n = None
    pairs: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            m = _HEADER.match(line)
            if not m:
                raise FaultFileError("expected header 'n=<int>'", lineno)
            n = int(m.group(1))
            if not 1 <= n <= MAX_DIM:
                raise FaultFileError(f"dimension {n} out of range", lineno)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FaultFileError(f"expected '<u> <v>', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FaultFileError(f"non-integer vertex label in {line!r}", lineno) from None
        try:
            e = Edge.of(u, v)
        except HypercubeError as exc:
            raise FaultFileError(str(exc), lineno) from None
        if not e.valid_in(n):
            raise FaultFileError(f"({u}, {v}) is not an edge of Q_{n}", lineno)
        pairs.append(e)
    if n is None:
        raise FaultFileError("missing header 'n=<int>'")
    return FaultSet(n, tuple(pairs))


def format_faults(faults: FaultSet) -> str:
    lines = [f"n={faults.n}"]
    lines += [f"{e.lo} {e.hi}" for e in faults.edges]
    return "\n".join(lines) + "\n"


def read_faults(path) -> FaultSet:
    with open(path, encoding="utf-8") as fh:
        return parse_faults(fh.read())


def faults(n: int, pairs: Sequence[tuple[int, int]] = ()) -> FaultSet:
    """Shorthand constructor: ``faults(3, [(0, 1), (0, 2)])``."""
    return FaultSet(n, tuple(Edge.of(*p) for p in pairs))
