"""Blue-edge forcing heuristic for proving Q_n - F non-Hamiltonian.

Blue edges lie on every Hamiltonian cycle, removed edges on none (faults
start out removed).  Rules are applied in a fixed order until nothing
changes:

* R1  a vertex with exactly two remaining edges makes both blue;
* R2  a vertex with two blue edges loses all its other edges;
* R4  an edge closing a blue path into a cycle shorter than 2**n is removed;
* R3  three blue edges at a vertex, or a short blue cycle, end with "no HC";
* partition rules on the even/odd crossing-edge counts of each dimension.

At the fixpoint the trap scan runs on the removed set.  The outcome is
"no HC" or "unknown"; the heuristic never claims a cycle exists.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .core import Edge, FaultSet, cube
from .traps import detect_traps

NO_HC = "NoHC"
UNKNOWN = "Unknown"


class Rule(str, enum.Enum):
    DEGREE_TWO = "R1"
    TWO_BLUE = "R2"
    THREE_BLUE = "R3"
    SHORT_CYCLE_EDGE = "R4"
    SHORT_BLUE_CYCLE = "R4-cycle"
    PART_FULL = "P1"        # f_e or f_o equals 2**(n-2)
    PART_OVER = "P2"        # f_e + b_o or f_o + b_e exceeds 2**(n-2)
    PART_TIGHT_EVEN = "P3"  # f_e + b_o == 2**(n-2)
    PART_TIGHT_ODD = "P4"   # f_o + b_e == 2**(n-2)
    PART_LAST = "P5"        # a single healthy even (odd) edge left
    TRAP = "trap"


TERMINAL = {Rule.THREE_BLUE, Rule.SHORT_BLUE_CYCLE, Rule.PART_FULL, Rule.PART_OVER, Rule.TRAP}


@dataclass
class Step:
    rule: Rule
    vertex: Optional[int] = None
    dim: Optional[int] = None
    parity: Optional[str] = None
    edge: Optional[Edge] = None
    blue: tuple[Edge, ...] = ()
    removed: tuple[Edge, ...] = ()
    cycle: tuple[int, ...] = ()
    trap: Optional[dict] = None

    def to_json(self) -> dict:
        d: dict = {"rule": self.rule.value}
        for name in ("vertex", "dim", "parity"):
            val = getattr(self, name)
            if val is not None:
                d[name] = val
        if self.edge is not None:
            d["edge"] = list(self.edge)
        if self.blue:
            d["blue"] = [list(e) for e in self.blue]
        if self.removed:
            d["removed"] = [list(e) for e in self.removed]
        if self.cycle:
            d["cycle"] = list(self.cycle)
        if self.trap is not None:
            d["trap"] = self.trap
        return d

    @classmethod
    def from_json(cls, d: dict) -> "Step":
        return cls(
            Rule(d["rule"]), d.get("vertex"), d.get("dim"), d.get("parity"),
            Edge.of(*d["edge"]) if "edge" in d else None,
            tuple(Edge.of(*e) for e in d.get("blue", ())),
            tuple(Edge.of(*e) for e in d.get("removed", ())),
            tuple(d.get("cycle", ())), d.get("trap"),
        )


@dataclass
class HeuristicOutcome:
    verdict: str
    trace: list[Step]
    blue: tuple[Edge, ...] = ()
    removed: tuple[Edge, ...] = ()

    @property
    def no_hc(self) -> bool:
        return self.verdict == NO_HC

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "trace": [s.to_json() for s in self.trace],
            "blue": [list(e) for e in self.blue],
            "removed": [list(e) for e in self.removed],
        }


class _Stop(Exception):
    pass


@dataclass
class HeuristicState:
    """Blue and removed edge sets as bitmasks over the edge indices of Q_n."""

    n: int
    blue: int = 0
    removed: int = 0
    trace: list[Step] = field(default_factory=list)

    def __post_init__(self) -> None:
        c = cube(self.n)
        self.c = c
        self.quarter = 1 << (self.n - 2) if self.n >= 2 else 0
        self.even = [0] * self.n
        self.odd = [0] * self.n
        for k, e in enumerate(c.edges):
            if c.parity[e.lo]:
                self.odd[e.dim] |= 1 << k
            else:
                self.even[e.dim] |= 1 << k

    @classmethod
    def initial(cls, faults: FaultSet) -> "HeuristicState":
        return cls(faults.n, 0, faults.mask)

    # -- queries ----------------------------------------------------------

    def edges_at(self, v: int) -> list[int]:
        return self.c.edge_id[v]

    def live_at(self, v: int) -> list[int]:
        return [k for k in self.c.edge_id[v] if not self.removed >> k & 1]

    def blue_at(self, v: int) -> list[int]:
        return [k for k in self.c.edge_id[v] if self.blue >> k & 1]

    def stats(self, dim: int) -> tuple[int, int, int, int]:
        """(f_e, f_o, b_e, b_o) for the crossing edges of ``dim``."""
        return (
            (self.removed & self.even[dim]).bit_count(),
            (self.removed & self.odd[dim]).bit_count(),
            (self.blue & self.even[dim]).bit_count(),
            (self.blue & self.odd[dim]).bit_count(),
        )

    def _edges(self, mask: int) -> tuple[Edge, ...]:
        return tuple(self.c.edges_of(mask))

    def faults(self) -> FaultSet:
        return FaultSet.from_mask(self.n, self.removed)

    # -- mutation ---------------------------------------------------------

    def _color(self, mask: int) -> int:
        new = mask & ~self.blue
        assert not new & self.removed
        self.blue |= new
        return new

    def _remove(self, mask: int) -> int:
        new = mask & ~self.removed
        assert not new & self.blue
        self.removed |= new
        return new

    def _log(self, step: Step) -> None:
        self.trace.append(step)
        if step.rule in TERMINAL:
            raise _Stop

    # -- rules ------------------------------------------------------------

    def rule_degree_two(self) -> bool:
        changed = False
        for v in range(self.c.nv):
            live = self.live_at(v)
            if len(live) == 2:
                new = self._color((1 << live[0]) | (1 << live[1]))
                if new:
                    self._log(Step(Rule.DEGREE_TWO, vertex=v, blue=self._edges(new)))
                    changed = True
        return changed

    def rule_two_blue(self) -> bool:
        changed = False
        for v in range(self.c.nv):
            if len(self.blue_at(v)) == 2:
                other = 0
                for k in self.edges_at(v):
                    if not self.blue >> k & 1:
                        other |= 1 << k
                new = self._remove(other)
                if new:
                    self._log(Step(Rule.TWO_BLUE, vertex=v, removed=self._edges(new)))
                    changed = True
        return changed

    def _blue_components(self) -> tuple[list[int], list[list[int]]]:
        """Component id per vertex and member lists (blue degree <= 2 assumed)."""
        nv = self.c.nv
        comp = [-1] * nv
        members: list[list[int]] = []
        adj = [[self.c.edges[k].other(v) for k in self.blue_at(v)] for v in range(nv)]
        for s in range(nv):
            if comp[s] >= 0:
                continue
            cid = len(members)
            comp[s] = cid
            stack = [s]
            mem = [s]
            while stack:
                v = stack.pop()
                for w in adj[v]:
                    if comp[w] < 0:
                        comp[w] = cid
                        mem.append(w)
                        stack.append(w)
            members.append(mem)
        return comp, members

    def _trace_cycle(self, start: int) -> tuple[int, ...]:
        cyc = [start]
        prev, v = None, start
        while True:
            nxt = [self.c.edges[k].other(v) for k in self.blue_at(v)]
            w = nxt[0] if nxt[0] != prev else nxt[1]
            if w == start:
                return tuple(cyc)
            cyc.append(w)
            prev, v = v, w

    def rule_short_cycle(self) -> bool:
        nv = self.c.nv
        if any(len(self.blue_at(v)) > 2 for v in range(nv)):
            return False  # leave it to the three-blue check
        comp, members = self._blue_components()
        bdeg = [len(self.blue_at(v)) for v in range(nv)]
        for mem in members:
            if len(mem) > 1 and all(bdeg[v] == 2 for v in mem) and len(mem) < nv:
                self._log(Step(Rule.SHORT_BLUE_CYCLE, cycle=self._trace_cycle(min(mem))))
        changed = False
        for k, e in enumerate(self.c.edges):
            if self.blue >> k & 1 or self.removed >> k & 1:
                continue
            u, v = e
            if comp[u] == comp[v] and bdeg[u] == 1 and bdeg[v] == 1 and len(members[comp[u]]) < nv:
                self._remove(1 << k)
                self._log(Step(Rule.SHORT_CYCLE_EDGE, edge=e))
                changed = True
        return changed

    def rule_three_blue(self) -> None:
        for v in range(self.c.nv):
            b = self.blue_at(v)
            if len(b) >= 3:
                self._log(Step(Rule.THREE_BLUE, vertex=v, blue=self._edges(sum(1 << k for k in b))))

    def partition_rules(self, dim: int) -> bool:
        """Apply the crossing-count rules for one dimension; raises _Stop on "no HC"."""
        q = self.quarter
        fe, fo, be, bo = self.stats(dim)
        if fe == q or fo == q:
            self._log(Step(Rule.PART_FULL, dim=dim, parity="even" if fe == q else "odd"))
        if fe + bo > q or fo + be > q:
            self._log(Step(Rule.PART_OVER, dim=dim, parity="even" if fe + bo > q else "odd"))
        changed = False
        for tight, mine, theirs, rule, name in (
            (fe + bo == q, self.even[dim], self.odd[dim], Rule.PART_TIGHT_EVEN, "even"),
            (fo + be == q, self.odd[dim], self.even[dim], Rule.PART_TIGHT_ODD, "odd"),
        ):
            if not tight:
                continue
            got_blue = self._color(mine & ~self.removed)
            got_removed = self._remove(theirs & ~self.blue)
            if got_blue or got_removed:
                self._log(Step(rule, dim=dim, parity=name,
                               blue=self._edges(got_blue), removed=self._edges(got_removed)))
                changed = True
        fe, fo, be, bo = self.stats(dim)
        for count, mine, name in ((fe, self.even[dim], "even"), (fo, self.odd[dim], "odd")):
            if count == q - 1:
                got = self._color(mine & ~self.removed)
                if got:
                    self._log(Step(Rule.PART_LAST, dim=dim, parity=name, blue=self._edges(got)))
                    changed = True
        return changed

    def check_partition_conflicts(self) -> None:
        q = self.quarter
        for dim in range(self.n):
            fe, fo, be, bo = self.stats(dim)
            if fe == q or fo == q:
                self._log(Step(Rule.PART_FULL, dim=dim, parity="even" if fe == q else "odd"))
            if fe + bo > q or fo + be > q:
                self._log(Step(Rule.PART_OVER, dim=dim, parity="even" if fe + bo > q else "odd"))

    def run_pass(self) -> bool:
        changed = self.rule_degree_two()
        changed |= self.rule_two_blue()
        changed |= self.rule_short_cycle()
        self.rule_three_blue()
        self.check_partition_conflicts()
        for dim in range(self.n):
            changed |= self.partition_rules(dim)
        return changed


def run_heuristic(n: int, faults: FaultSet, trap_scan: bool = True,
                  generic_max_T: Optional[int] = None) -> HeuristicOutcome:
    """Propagate forced and excluded edges to a fixpoint, then scan for traps.

    ``generic_max_T`` defaults to 14 for Q_5 and is off otherwise.
    """
    if faults.n != n:
        raise ValueError(f"fault set is for Q_{faults.n}, not Q_{n}")
    st = HeuristicState.initial(faults)
    if n < 3:
        return HeuristicOutcome(UNKNOWN, [], (), st._edges(st.removed))
    limit = 2 * cube(n).ne + 2
    try:
        for _ in range(limit):
            if not st.run_pass():
                break
        else:  # pragma: no cover - blue and removed only grow
            raise RuntimeError("heuristic failed to reach a fixpoint")
        if trap_scan:
            if generic_max_T is None and n == 5:
                generic_max_T = 14
            reports = detect_traps(n, st.faults(), generic_max_T)
            if reports:
                st._log(Step(Rule.TRAP, trap=reports[0].to_json()))
    except _Stop:
        return HeuristicOutcome(NO_HC, st.trace, st._edges(st.blue), st._edges(st.removed))
    return HeuristicOutcome(UNKNOWN, st.trace, st._edges(st.blue), st._edges(st.removed))


def partition_rules(state: HeuristicState, dim: int) -> tuple[str, list[Step]]:
    """Apply the crossing-count rules for ``dim`` to ``state`` in place.

    Returns ``("NoHC", steps)`` when a conflict is found, else ``("ok", steps)``
    with the coloring/removal steps (empty when nothing applies).
    """
    before = len(state.trace)
    try:
        state.partition_rules(dim)
    except _Stop:
        return NO_HC, state.trace[before:]
    return "ok", state.trace[before:]


def validate_trace(n: int, faults: FaultSet, trace: list[Step]) -> None:
    """Replay ``trace`` from scratch, checking each step's premise at its own state.

    Raises AssertionError on the first step whose premise does not hold.
    """
    st = HeuristicState.initial(faults)
    q = st.quarter
    k_of = st.c.index
    for i, step in enumerate(trace):
        where = f"step {i} ({step.rule.value})"
        r = step.rule
        if r is Rule.DEGREE_TWO:
            live = st.live_at(step.vertex)
            assert len(live) == 2, where
            assert {k_of[e] for e in step.blue} <= set(live), where
        elif r is Rule.TWO_BLUE:
            assert len(st.blue_at(step.vertex)) == 2, where
            assert all(k_of[e] in st.edges_at(step.vertex) and not st.blue >> k_of[e] & 1
                       for e in step.removed), where
        elif r is Rule.SHORT_CYCLE_EDGE:
            k = k_of[step.edge]
            assert not st.blue >> k & 1 and not st.removed >> k & 1, where
            comp, members = st._blue_components()
            u, v = step.edge
            assert comp[u] == comp[v] and len(members[comp[u]]) < st.c.nv, where
        elif r is Rule.SHORT_BLUE_CYCLE:
            cyc = step.cycle
            assert len(cyc) < st.c.nv, where
            for a, b in zip(cyc, cyc[1:] + cyc[:1]):
                assert st.blue >> k_of[Edge.of(a, b)] & 1, where
            return
        elif r is Rule.THREE_BLUE:
            assert len(st.blue_at(step.vertex)) >= 3, where
            return
        elif r in (Rule.PART_FULL, Rule.PART_OVER, Rule.PART_TIGHT_EVEN, Rule.PART_TIGHT_ODD, Rule.PART_LAST):
            fe, fo, be, bo = st.stats(step.dim)
            if r is Rule.PART_FULL:
                assert fe == q or fo == q, where
                return
            if r is Rule.PART_OVER:
                assert fe + bo > q or fo + be > q, where
                return
            if r is Rule.PART_TIGHT_EVEN:
                assert fe + bo == q, where
            elif r is Rule.PART_TIGHT_ODD:
                assert fo + be == q, where
            else:
                assert (fe if step.parity == "even" else fo) == q - 1, where
        elif r is Rule.TRAP:
            from .traps import TrapReport, verify_report
            rep = TrapReport.from_json(step.trap)
            assert rep.faults.mask == st.removed, where
            assert verify_report(rep), where
            return
        for e in step.blue:
            st._color(1 << k_of[e])
        for e in step.removed:
            st._remove(1 << k_of[e])
        if r is Rule.SHORT_CYCLE_EDGE:
            st._remove(1 << k_of[step.edge])
