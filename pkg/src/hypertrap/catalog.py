"""Reference data: trap size formulas, known hard instances, Q_5 presets.

Everything here is fixed data, plus the
small helpers that turn it into fault sets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .core import FaultSet, faults
from .cycles import Kind
from .traps import base_vertex_set, check_minimality, detect_traps, generate_trap


# --- trap sizes -----------------------------------------------------------------

@dataclass(frozen=True)
class TrapRow:
    kind: Kind
    slope: int
    offset: int
    min_n: int
    # n values per side where the generated trap is not minimal
    not_minimal: tuple[frozenset, frozenset] = (frozenset(), frozenset())
    # the side-0 and side-1 traps are isomorphic for every n in this set
    sides_isomorphic: Optional[frozenset] = None

    @property
    def formula(self) -> str:
        head = "n" if self.slope == 1 else f"{self.slope}n"
        return f"{head}{self.offset:+d}" if self.offset else head

    def size(self, n: int) -> Optional[int]:
        """|F| for the trap in Q_n, or None where the trap does not exist."""
        if n < self.min_n:
            return None
        return self.slope * n + self.offset

    def minimal(self, n: int, side: int = 0) -> Optional[bool]:
        if n < self.min_n:
            return None
        return n not in self.not_minimal[side]


def _nm(*ns) -> frozenset:
    return frozenset(ns)


ALL_N = frozenset(range(3, 17))

TRAP_TABLE: dict[Kind, TrapRow] = {row.kind: row for row in (
    TrapRow(Kind.Q1DHW, 1, -1, 2, sides_isomorphic=ALL_N),
    TrapRow(Kind.Q2DHW, 2, -4, 3, sides_isomorphic=ALL_N),
    TrapRow(Kind.Q3DHW, 4, -12, 4, sides_isomorphic=ALL_N),
    TrapRow(Kind.Q4DHW, 8, -32, 5, sides_isomorphic=ALL_N),
    TrapRow(Kind.C6_1, 3, -7, 3, (_nm(3), _nm(3)), ALL_N),
    TrapRow(Kind.C6_2, 3, -6, 3, (_nm(3, 4), _nm(3, 4)), ALL_N),
    TrapRow(Kind.CL, 3, -6, 3),
    TrapRow(Kind.C8_1, 4, -12, 4, sides_isomorphic=ALL_N),
    TrapRow(Kind.C8_2, 4, -9, 4, (_nm(4), _nm(4)), ALL_N),
    TrapRow(Kind.C8_3, 4, -10, 4, sides_isomorphic=ALL_N),
    TrapRow(Kind.C8_4, 4, -10, 4, sides_isomorphic=_nm(4)),
    TrapRow(Kind.C8_5, 4, -8, 4, sides_isomorphic=ALL_N),
    TrapRow(Kind.C8_6, 4, -8, 4, (_nm(4), _nm(4)), frozenset()),
    TrapRow(Kind.C8_7, 4, -8, 4, (_nm(4, 5), _nm(4)), frozenset()),
)}


def trap_size(kind, n: int) -> Optional[int]:
    return TRAP_TABLE[Kind(kind)].size(n)


def is_minimal_trap(kind, n: int, side: int = 0) -> bool:
    """Whether the generated trap is minimal in the sense of the size tables.

    The fault set must be minimally non-Hamiltonian, and the set it cuts off
    must not already contain a smaller DHW set.  The second condition matters
    for C6_1 in Q_3, whose two boundary edges isolate a vertex.
    """
    kind = Kind(kind)
    f = generate_trap(kind, n, side)
    if not check_minimality(n, f):
        return False
    if kind is Kind.CL:
        return True
    size = len(base_vertex_set(kind, n))
    return not any(r.kind is not Kind.CL and len(r.T) < size for r in detect_traps(n, f))


# --- experiment families ------------------------------------------------------

# Trap kinds that explain all non-Hamiltonian cubes with k faults.
COMPLETE_FAMILIES: dict[tuple[int, int], frozenset] = {
    (3, None): frozenset({Kind.Q1DHW, Kind.Q2DHW, Kind.CL}),
    (4, 5): frozenset({Kind.Q1DHW, Kind.Q2DHW, Kind.Q3DHW, Kind.C6_1}),
    (4, 6): frozenset({Kind.CL, Kind.Q1DHW, Kind.Q2DHW, Kind.Q3DHW, Kind.C6_1, Kind.C8_3, Kind.C8_4}),
    (5, 8): frozenset({Kind.Q1DHW, Kind.Q2DHW, Kind.Q3DHW, Kind.Q4DHW, Kind.C6_1}),
    (5, 9): frozenset({Kind.Q1DHW, Kind.Q2DHW, Kind.Q3DHW, Kind.Q4DHW, Kind.C6_1, Kind.C6_2, Kind.CL}),
}

# Q_4 with 7 faults: non-Hamiltonian, trap-free, all caught by the heuristic.
Q4_K7_HEURISTIC_ONLY = 25


def family(n: int, k: Optional[int] = None) -> frozenset:
    key = (n, None) if n == 3 else (n, k)
    return COMPLETE_FAMILIES[key]


# --- hard Q_4 instances ---------------------------------------------------------

_HARD_COMMON = {
    8: [(0, 1), (7, 15)],
    9: [(0, 1), (2, 3), (7, 15)],
    10: [(0, 1), (2, 3), (4, 5), (7, 15)],
}

_HARD_EXTRA = {
    8: [
        [(10, 11), (1, 3), (12, 14), (2, 6), (8, 12), (0, 8)],
        [(10, 11), (1, 3), (4, 6), (2, 6), (8, 12), (2, 10)],
        [(2, 3), (0, 2), (13, 15), (3, 7), (8, 12), (5, 13)],
        [(2, 3), (4, 5), (8, 9), (0, 2), (12, 14), (11, 15)],
        [(2, 3), (4, 5), (8, 9), (0, 2), (12, 14), (1, 9)],
    ],
    9: [
        [(12, 13), (9, 11), (12, 14), (1, 5), (10, 14), (0, 8)],
        [(12, 13), (0, 2), (9, 11), (8, 12), (10, 14), (5, 13)],
        [(12, 13), (4, 6), (8, 10), (8, 12), (10, 14), (5, 13)],
        [(4, 5), (9, 11), (0, 4), (1, 5), (10, 14), (6, 14)],
        [(4, 5), (0, 2), (13, 15), (8, 12), (5, 13), (6, 14)],
        [(8, 9), (12, 13), (4, 6), (3, 7), (10, 14), (0, 8)],
        [(4, 5), (6, 7), (8, 9), (12, 14), (11, 15), (6, 14)],
        [(4, 5), (10, 11), (0, 2), (1, 3), (12, 14), (9, 13)],
    ],
    10: [
        [(0, 2), (1, 3), (8, 10), (9, 13), (11, 15), (6, 14)],
        [(1, 3), (8, 10), (9, 13), (11, 15), (4, 12), (6, 14)],
        [(4, 6), (8, 10), (12, 14), (10, 14), (11, 15), (3, 11)],
        [(10, 11), (12, 14), (0, 4), (2, 6), (9, 13), (3, 11)],
    ],
}


def hard_q4(k: int) -> list[FaultSet]:
    """Minimal non-Hamiltonian Q_4 fault sets that no listed trap or the heuristic explains."""
    if k not in _HARD_EXTRA:
        return []
    return [faults(4, _HARD_COMMON[k] + extra) for extra in _HARD_EXTRA[k]]


def all_hard_q4() -> dict[int, list[FaultSet]]:
    return {k: hard_q4(k) for k in sorted(_HARD_EXTRA)}


# --- ten-fault Q_5 traps ----------------------------------------------------------

@dataclass(frozen=True)
class Preset:
    name: str
    edges: tuple[tuple[int, int], ...]
    T: tuple[int, ...]
    side: int
    cycle_length: int
    notes: str = field(default="", compare=False)

    def fault_set(self) -> FaultSet:
        return faults(5, self.edges)


Q5_PRESETS: dict[str, Preset] = {p.name: p for p in (
    Preset("T",
           ((0, 2), (0, 4), (0, 8), (2, 18), (4, 20), (7, 23), (8, 24), (11, 27), (13, 29), (14, 30)),
           tuple(range(2, 16)), 1, 14,
           "Q^L minus the edge {0,1}"),
    Preset("S",
           ((0, 4), (0, 8), (3, 7), (3, 11), (4, 20), (7, 23), (8, 24), (11, 27), (13, 29), (14, 30)),
           tuple(range(4, 16)), 1, 12,
           "Q^L minus the square {0,1,2,3}"),
    Preset("R",
           ((0, 2), (2, 3), (5, 13), (3, 11), (0, 8), (2, 18), (8, 24), (11, 27), (13, 29), (14, 30)),
           (2, 6) + tuple(range(8, 16)), 1, 10,
           "Q^L minus the 6-cycle 0,1,3,7,5,4"),
)}


def preset(name: str) -> FaultSet:
    return Q5_PRESETS[name.upper()].fault_set()
