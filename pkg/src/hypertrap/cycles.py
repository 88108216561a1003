"""Short cycles of Q_n and their isomorphism classes.

Two cycles are isomorphic exactly when their dimension sequences agree up
to rotation, reflection and relabeling of dimensions, so the classifier
reduces a cycle to that canonical pattern and looks it up.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

from .core import Edge, HypercubeError, cube


class Kind(str, enum.Enum):
    Q1DHW = "Q1DHW"
    Q2DHW = "Q2DHW"
    Q3DHW = "Q3DHW"
    Q4DHW = "Q4DHW"
    C6_1 = "C6_1"
    C6_2 = "C6_2"
    C8_1 = "C8_1"
    C8_2 = "C8_2"
    C8_3 = "C8_3"
    C8_4 = "C8_4"
    C8_5 = "C8_5"
    C8_6 = "C8_6"
    C8_7 = "C8_7"
    CL = "CL"
    GenericDHW = "GenericDHW"

    @property
    def order(self) -> int:
        return _ORDER[self]

    def __str__(self) -> str:
        return self.value


_ORDER = {k: i for i, k in enumerate(Kind)}

# Base cycles, each starting at vertex 0.
BASE_CYCLES: dict[Kind, tuple[int, ...]] = {
    Kind.C6_1: (0, 1, 3, 2, 6, 4),
    Kind.C6_2: (0, 1, 3, 7, 6, 4),
    Kind.C8_1: (0, 1, 3, 2, 6, 7, 5, 4),
    Kind.C8_2: (0, 1, 3, 2, 6, 14, 12, 8),
    Kind.C8_3: (0, 1, 3, 2, 6, 14, 12, 4),
    Kind.C8_4: (0, 1, 3, 2, 6, 4, 12, 8),
    Kind.C8_5: (0, 1, 3, 7, 15, 14, 12, 8),
    Kind.C8_6: (0, 1, 3, 7, 15, 14, 12, 4),
    Kind.C8_7: (0, 1, 3, 7, 6, 14, 10, 8),
}


def dims_of(vertices) -> tuple[int, ...]:
    vs = list(vertices)
    out = []
    for a, b in zip(vs, vs[1:] + vs[:1]):
        out.append(Edge.of(a, b).dim)
    return tuple(out)


def canonical_pattern(dims) -> tuple[int, ...]:
    """Smallest relabeled dimension sequence over all rotations and reflections."""
    d = list(dims)
    L = len(d)
    best = None
    for seq in (d, d[::-1]):
        for r in range(L):
            rot = seq[r:] + seq[:r]
            relabel: dict[int, int] = {}
            pat = tuple(relabel.setdefault(x, len(relabel)) for x in rot)
            if best is None or pat < best:
                best = pat
    return best


@dataclass(frozen=True)
class CycleSpec:
    vertices: tuple[int, ...]

    def __post_init__(self) -> None:
        vs = tuple(self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 4 or len(vs) % 2:
            raise HypercubeError(f"a hypercube cycle has even length >= 4, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise HypercubeError("cycle repeats a vertex")
        dims = dims_of(vs)  # raises on a non-adjacent pair
        L = len(dims)
        for j in range(L):
            if dims[j] == dims[(j + 1) % L]:
                raise HypercubeError("two incident cycle edges share a dimension")
        for x in set(dims):
            if dims.count(x) % 2:
                raise HypercubeError(f"dimension {x} occurs an odd number of times")

    @property
    def dims(self) -> tuple[int, ...]:
        return dims_of(self.vertices)

    def edges(self) -> list[Edge]:
        vs = self.vertices
        return [Edge.of(a, b) for a, b in zip(vs, vs[1:] + vs[:1])]

    def __len__(self) -> int:
        return len(self.vertices)


@lru_cache(maxsize=None)
def _pattern_table() -> dict[tuple[int, ...], Kind]:
    table = {canonical_pattern(dims_of(vs)): k for k, vs in BASE_CYCLES.items()}
    # C8_6 has two printed dimension sequences; both must land on one pattern.
    assert canonical_pattern((0, 1, 2, 3, 0, 1, 3, 2)) == canonical_pattern((0, 1, 2, 3, 0, 2, 1, 3))
    return table


def classify_cycle(c: CycleSpec | tuple[int, ...]) -> Kind:
    if not isinstance(c, CycleSpec):
        c = CycleSpec(tuple(c))
    L = len(c)
    if L == 4:
        return Kind.Q2DHW
    if L not in (6, 8):
        raise HypercubeError(f"only cycles of length 4, 6 and 8 are classified, got {L}")
    pat = canonical_pattern(c.dims)
    try:
        return _pattern_table()[pat]
    except KeyError:
        raise HypercubeError(f"unrecognized cycle pattern {pat}") from None


@lru_cache(maxsize=None)
def enumerate_cycles(n: int, length: int) -> tuple[tuple[int, ...], ...]:
    """All cycles of the given length in Q_n, each listed once.

    A cycle is normalized to start at its smallest vertex with the second
    vertex smaller than the last.  Cycles of length 2k live in k-dimensional
    subcubes, so the search runs in Q_k and the results are embedded.
    """
    if length % 2 or length < 4:
        raise HypercubeError("cycle length must be even and >= 4")
    k = length // 2
    base = _base_cycles(min(k, n), length)
    if k >= n:
        return base
    seen: set[tuple[int, ...]] = set()
    out = []
    for dims in itertools.combinations(range(n), k):
        others = [i for i in range(n) if i not in dims]
        for fill in range(1 << len(others)):
            high = 0
            for j, i in enumerate(others):
                if fill >> j & 1:
                    high |= 1 << i
            for cyc in base:
                emb = []
                for x in cyc:
                    y = high
                    for j, i in enumerate(dims):
                        if x >> j & 1:
                            y |= 1 << i
                    emb.append(y)
                t = _normalize(emb)
                if t not in seen:
                    seen.add(t)
                    out.append(t)
    out.sort()
    return tuple(out)


def _normalize(vs) -> tuple[int, ...]:
    vs = list(vs)
    i = vs.index(min(vs))
    vs = vs[i:] + vs[:i]
    if vs[1] > vs[-1]:
        vs = [vs[0]] + vs[1:][::-1]
    return tuple(vs)


def _base_cycles(n: int, length: int) -> tuple[tuple[int, ...], ...]:
    c = cube(n)
    out = []
    path: list[int] = []
    used = [False] * c.nv

    for s in range(c.nv):
        path[:] = [s]
        used[s] = True
        _extend_closing(c, s, length, path, used, out)
        used[s] = False
    out.sort()
    return tuple(out)


def _extend_closing(c, s, length, path, used, out) -> None:
    v = path[-1]
    if len(path) == length:
        if path[1] < path[-1] and (v ^ s).bit_count() == 1:
            out.append(tuple(path))
        return
    for w in c.neighbors(v):
        if w > s and not used[w]:
            used[w] = True
            path.append(w)
            _extend_closing(c, s, length, path, used, out)
            path.pop()
            used[w] = False
