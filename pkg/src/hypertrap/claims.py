"""Reproduction harness for the reference Q_3, Q_4 and Q_5 results.

Each ``claim_*`` function recomputes one result from scratch and returns a
``ClaimResult``.  ``run_tier`` bundles them: "quick" runs in seconds at
reduced scale, "full" runs every claim at its stated scale, "extended" adds
the long Q_4 enumerations with 8 to 11 faults.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .catalog import (Q4_K7_HEURISTIC_ONLY, Q5_PRESETS, TRAP_TABLE, all_hard_q4, family,
                      hard_q4)
from .core import FaultSet, cube
from .enumeration import ClassifyOptions, classify_one, iter_classes
from .heuristic import NO_HC, UNKNOWN, run_heuristic
from .solver import all_hamiltonian, find_hamiltonian
from .symmetry import canonical_key, group_order, stabilizer_order
from .traps import check_minimality, detect_generic_dhw, detect_traps, generate_trap, verify_dhw


@dataclass
class ClaimResult:
    id: str
    claim: str
    expected: str
    observed: str
    passed: bool
    seconds: float = 0.0

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] {self.id} {self.claim}: expected {self.expected}; observed {self.observed} ({self.seconds:.1f}s)"

    def to_json(self) -> dict:
        return dict(self.__dict__)


def _timed(fn):
    def wrapper(*args, **kwargs):
        t = time.perf_counter()
        res = fn(*args, **kwargs)
        res.seconds = time.perf_counter() - t
        return res
    wrapper.__name__ = fn.__name__
    wrapper.__doc__ = fn.__doc__
    return wrapper


def _random_faults(rng: np.random.Generator, n: int, k: int) -> FaultSet:
    c = cube(n)
    idx = rng.choice(c.ne, size=k, replace=False)
    return FaultSet(n, tuple(c.edges[i] for i in idx))


# --- 1 ---------------------------------------------------------------------------

@_timed
def claim_q3_law() -> ClaimResult:
    """Q_3 - F is non-Hamiltonian iff it has a Q1-DHW, Q2-DHW or CL trap."""
    fam = family(3)
    bad = []
    nonham = 0
    for m in range(1 << cube(3).ne):
        f = FaultSet.from_mask(3, m)
        ham = find_hamiltonian(3, f).hamiltonian
        trapped = bool({r.kind for r in detect_traps(3, f)} & fam)
        nonham += not ham
        if ham == trapped:
            bad.append(f.pairs())
    return ClaimResult("1", "Q3 non-Hamiltonian iff Q1/Q2-DHW or CL", "0 mismatches over 4096 subsets",
                       f"{len(bad)} mismatches ({nonham} non-Hamiltonian)", not bad)


# --- 2 ---------------------------------------------------------------------------

@_timed
def claim_small_fault_sets(samples: int = 10_000, seed: int = 0) -> ClaimResult:
    """Every F with at most n-2 faults is Hamiltonian."""
    bad = 0
    checked = 0
    for n in (3, 4):
        E = cube(n).ne
        for k in range(n - 1):
            for idx in itertools.combinations(range(E), k):
                f = FaultSet(n, tuple(cube(n).edges[i] for i in idx))
                checked += 1
                bad += not find_hamiltonian(n, f).hamiltonian
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        k = int(rng.integers(0, 4))
        bad += not find_hamiltonian(5, _random_faults(rng, 5, k)).hamiltonian
        checked += 1
    return ClaimResult("2", "|F| <= n-2 implies Hamiltonian", "0 violations",
                       f"{bad} violations in {checked} sets (n=5: {samples} samples, seed {seed})", bad == 0)


# --- 3, 4 ------------------------------------------------------------------------

@_timed
def claim_q4_family(k: int) -> ClaimResult:
    """All non-Hamiltonian Q_4 classes with k faults contain a trap of the listed family."""
    fam = family(4, k)
    total = classes = nonham = 0
    bad = []
    G = group_order(4)
    for f in iter_classes(4, k):
        classes += 1
        total += G // stabilizer_order(f)
        if find_hamiltonian(4, f).hamiltonian:
            continue
        nonham += 1
        if not {r.kind for r in detect_traps(4, f)} & fam:
            bad.append(f.pairs())
    cover = math.comb(cube(4).ne, k)
    names = ", ".join(sorted(x.value for x in fam))
    return ClaimResult(f"{3 if k == 5 else 4}", f"Q4 k={k}: non-Hamiltonian only with {names}",
                       f"0 exceptions, orbits cover {cover} subsets",
                       f"{len(bad)} exceptions among {nonham} non-Hamiltonian of {classes} classes, "
                       f"orbits cover {total} subsets",
                       not bad and total == cover)


# --- 5 ---------------------------------------------------------------------------

@_timed
def claim_q4_k7() -> ClaimResult:
    opts = ClassifyOptions()
    trapfree = 0
    caught = 0
    for f in iter_classes(4, 7):
        r = classify_one(f, opts)
        if not r.hamiltonian and not r.traps:
            trapfree += 1
            caught += r.heuristic == NO_HC
    return ClaimResult("5", "Q4 k=7 trap-free non-Hamiltonian classes, all caught by the heuristic",
                       f"{Q4_K7_HEURISTIC_ONLY}, all NoHC", f"{trapfree}, {caught} NoHC",
                       trapfree == Q4_K7_HEURISTIC_ONLY and caught == trapfree)


# --- 6 ---------------------------------------------------------------------------

@_timed
def claim_hard_q4() -> ClaimResult:
    failures = []
    count = 0
    for k, sets in all_hard_q4().items():
        for i, f in enumerate(sets):
            count += 1
            checks = (
                not find_hamiltonian(4, f).hamiltonian,
                not detect_traps(4, f),
                run_heuristic(4, f).verdict == UNKNOWN,
                check_minimality(4, f),
            )
            if not all(checks):
                failures.append(f"k={k}#{i + 1}:{''.join('abcd'[j] for j, ok in enumerate(checks) if not ok)}")
    return ClaimResult("6", "hard Q4 sets: non-Hamiltonian, trap-free, heuristic Unknown, minimal",
                       "17 of 17 sets (5+8+4)", f"{count - len(failures)} of {count}"
                       + (f"; failing {failures}" if failures else ""), not failures and count == 17)


@_timed
def claim_hard_q4_complete(k: int, jobs: int = 1) -> ClaimResult:
    """Enumeration at k finds exactly the listed minimal undetected classes."""
    from .enumeration import classify_all
    s = classify_all(4, k, ClassifyOptions(minimality=True, jobs=jobs))
    got = sorted(canonical_key(FaultSet(4, tuple(map(tuple, e)))) for e in s.undetected_minimal)
    want = sorted(canonical_key(f) for f in hard_q4(k))
    return ClaimResult(f"6x.{k}", f"Q4 k={k}: minimal undetected classes",
                       f"{len(want)} listed classes",
                       f"{len(got)} found, " + ("identical to the list" if got == want else "different from the list"),
                       got == want)


# --- 7 ---------------------------------------------------------------------------

@_timed
def claim_trap_sizes(max_n: int = 7, solver_max_n: int = 5) -> ClaimResult:
    mismatches = []
    hamiltonian = []
    cells = 0
    for kind, row in TRAP_TABLE.items():
        for n in range(3, max_n + 1):
            want = row.size(n)
            if want is None:
                continue
            for side in (0, 1):
                f = generate_trap(kind, n, side)
                cells += 1
                if len(f) != want:
                    mismatches.append((kind.value, n, side, len(f), want))
                if n <= solver_max_n and find_hamiltonian(n, f).hamiltonian:
                    hamiltonian.append((kind.value, n, side))
    return ClaimResult("7", f"trap sizes for 3 <= n <= {max_n}; non-Hamiltonian for n <= {solver_max_n}",
                       "all cells match, none Hamiltonian",
                       f"{cells - len(mismatches)} of {cells} cells match, {len(hamiltonian)} Hamiltonian",
                       not mismatches and not hamiltonian)


# --- 8 ---------------------------------------------------------------------------

@_timed
def claim_q5_presets() -> ClaimResult:
    obs = []
    ok = True
    for name, p in Q5_PRESETS.items():
        f = p.fault_set()
        ham = find_hamiltonian(5, f).hamiltonian
        w = detect_generic_dhw(5, f, p.cycle_length)
        size = None if w is None else w.size
        valid = True
        try:
            verify_dhw(5, f, p.T, p.side)
        except ValueError:
            valid = False
        ok &= (not ham) and size == p.cycle_length and valid and len(f) == 10
        obs.append(f"{name}: {'H' if ham else 'non-H'}, |T|={size}")
    return ClaimResult("8", "Q5 ten-fault presets T, S, R", "non-H with |T| = 14, 12, 10",
                       "; ".join(obs), ok)


# --- 9 ---------------------------------------------------------------------------

@_timed
def claim_q5_sampled(k: int, samples: int = 10_000, seed: int = 0) -> ClaimResult:
    # distinct streams per k from one user seed
    rng = np.random.default_rng([seed, k])
    fam = family(5, k)
    nonham = 0
    bad = []
    for _ in range(samples):
        f = _random_faults(rng, 5, k)
        if find_hamiltonian(5, f).hamiltonian:
            continue
        nonham += 1
        if not {r.kind for r in detect_traps(5, f)} & fam:
            bad.append(f.pairs())
    return ClaimResult(f"9.{k}", f"Q5 k={k} sampled: non-Hamiltonian only with listed traps",
                       "0 counterexamples",
                       f"{len(bad)} counterexamples, {nonham} non-Hamiltonian of {samples} (seed {seed})"
                       + (f"; first {bad[0]}" if bad else ""), not bad)


# --- 10 --------------------------------------------------------------------------

def _edge_sets_of_cycles(cycles) -> list[set]:
    return [set(c.edges()) for c in cycles]


@_timed
def claim_heuristic_soundness(q4_k: int = 7) -> ClaimResult:
    false_nohc = 0
    bad_deductions = 0
    instances = 0
    for m in range(1 << cube(3).ne):
        f = FaultSet.from_mask(3, m)
        out = run_heuristic(3, f)
        cycles = all_hamiltonian(3, f)
        instances += 1
        if cycles and out.verdict == NO_HC:
            false_nohc += 1
        for c in _edge_sets_of_cycles(cycles):
            if not set(out.blue) <= c or set(out.removed) & c:
                bad_deductions += 1
                break
    for f in iter_classes(4, q4_k):
        instances += 1
        if find_hamiltonian(4, f).hamiltonian and run_heuristic(4, f).verdict == NO_HC:
            false_nohc += 1
    return ClaimResult("10", "heuristic never says NoHC on a Hamiltonian cube; deductions agree with all Q3 cycles",
                       "0 violations", f"{false_nohc} false NoHC, {bad_deductions} bad deductions over {instances} instances",
                       false_nohc == 0 and bad_deductions == 0)


# --- tiers -----------------------------------------------------------------------

TIERS = ("quick", "full", "extended")


def tier_claims(tier: str, jobs: int = 1, seed: int = 0) -> list[Callable[[], ClaimResult]]:
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}")
    if tier == "quick":
        return [
            claim_q3_law,
            lambda: claim_small_fault_sets(samples=500, seed=seed),
            claim_hard_q4,
            lambda: claim_trap_sizes(max_n=7, solver_max_n=4),
            lambda: claim_heuristic_soundness(q4_k=5),
        ]
    out = [
        claim_q3_law,
        lambda: claim_small_fault_sets(seed=seed),
        lambda: claim_q4_family(5),
        lambda: claim_q4_family(6),
        claim_q4_k7,
        claim_hard_q4,
        claim_trap_sizes,
        claim_q5_presets,
        lambda: claim_q5_sampled(8, seed=seed),
        lambda: claim_q5_sampled(9, seed=seed),
        claim_heuristic_soundness,
    ]
    if tier == "extended":
        out += [lambda k=k: claim_hard_q4_complete(k, jobs) for k in (8, 9, 10, 11)]
    return out


def run_tier(tier: str, jobs: int = 1, report: Optional[Callable[[ClaimResult], None]] = None,
             seed: int = 0) -> list[ClaimResult]:
    results = []
    for fn in tier_claims(tier, jobs, seed):
        r = fn()
        results.append(r)
        if report is not None:
            report(r)
    return results
