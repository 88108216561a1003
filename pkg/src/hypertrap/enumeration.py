"""Isomorphism-free enumeration and classification of fault sets.

Representatives are generated by canonical augmentation: a canonical
(lexicographically least) set is extended only by edges above its last
edge, and a child is kept iff it is canonical again.  Deleting the largest
edge of a canonical set leaves a canonical set, so every class is reached
exactly once, and the depth-first order is the lexicographic order of the
sorted edge lists.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterator, Optional

import numpy as np

from .core import FaultSet, cube
from .heuristic import run_heuristic
from .solver import find_hamiltonian
from .symmetry import edge_table, is_orderly_canonical
from .traps import check_minimality, detect_traps

CHECKPOINT_FORMAT = "hypertrap-checkpoint/1"

HAMILTONIAN = "hamiltonian"
TRAPPED = "trapped"
HEURISTIC = "heuristic"
UNDETECTED = "undetected"
CATEGORIES = (HAMILTONIAN, TRAPPED, HEURISTIC, UNDETECTED)


# --- enumeration -------------------------------------------------------------

def _weights(n: int) -> Optional[np.ndarray]:
    """(|G|, E) uint64 weights with bit E-1-image, or None if E > 64.

    A larger weight sum means a lexicographically smaller sorted edge list,
    so a set is canonical iff its own sum is the maximum over the group.
    """
    c = cube(n)
    if c.ne > 64:
        return None
    etab = edge_table(n).astype(np.uint64)
    return np.left_shift(np.uint64(1), np.uint64(c.ne - 1) - etab)


def iter_prefix(n: int, k: int, prefix: tuple[int, ...] = ()) -> Iterator[tuple[int, ...]]:
    """Edge-index tuples of all canonical k-sets extending a canonical ``prefix``."""
    c = cube(n)
    W = _weights(n)
    if W is not None:
        if prefix:
            base = W[:, list(prefix)].sum(axis=1, dtype=np.uint64)
        else:
            base = np.zeros(W.shape[0], dtype=np.uint64)
        yield from _dfs_fast(W, c.ne, k, prefix, base)
    else:
        yield from _dfs_slow(n, c.ne, k, prefix)


def _dfs_fast(W, ne, k, prefix, base):
    if len(prefix) == k:
        yield prefix
        return
    start = prefix[-1] + 1 if prefix else 0
    # leave room for the remaining edges
    stop = ne - (k - len(prefix) - 1)
    if start >= stop:
        return
    cand = np.arange(start, stop)
    M = base[:, None] + W[:, cand]
    keep = M.max(axis=0) == M[0]
    for j in np.flatnonzero(keep):
        e = int(cand[j])
        yield from _dfs_fast(W, ne, k, prefix + (e,), M[:, j])


def _dfs_slow(n, ne, k, prefix):
    if len(prefix) == k:
        yield prefix
        return
    c = cube(n)
    start = prefix[-1] + 1 if prefix else 0
    for e in range(start, ne - (k - len(prefix) - 1)):
        child = prefix + (e,)
        if is_orderly_canonical(FaultSet(n, tuple(c.edges[i] for i in child))):
            yield from _dfs_slow(n, ne, k, child)


def iter_classes(n: int, k: int) -> Iterator[FaultSet]:
    """One canonical representative per isomorphism class of k-fault sets, in lex order."""
    c = cube(n)
    for idx in iter_prefix(n, k):
        yield FaultSet(n, tuple(c.edges[i] for i in idx))


def enumerate_classes(n: int, k: int, visitor: Optional[Callable[[FaultSet], None]] = None) -> int:
    count = 0
    for f in iter_classes(n, k):
        if visitor is not None:
            visitor(f)
        count += 1
    return count


def class_counts(n: int, kmax: int) -> list[int]:
    return [enumerate_classes(n, k) for k in range(kmax + 1)]


# --- classification ----------------------------------------------------------

@dataclass
class ClassifyOptions:
    minimality: bool = False
    # run the heuristic on Hamiltonian classes too (for soundness audits)
    heuristic_all: bool = False
    healthy_cycles: bool = True
    jobs: int = 1
    out: Optional[str] = None
    checkpoint: Optional[str] = None
    checkpoint_every: int = 500


@dataclass
class EnumerationRecord:
    n: int
    k: int
    faults: list[list[int]]
    hamiltonian: bool
    category: str
    traps: list[str] = field(default_factory=list)
    heuristic: Optional[str] = None
    minimal: Optional[bool] = None

    def fault_set(self) -> FaultSet:
        return FaultSet(self.n, tuple(tuple(e) for e in self.faults))

    def to_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_line(cls, line: str) -> "EnumerationRecord":
        return cls(**json.loads(line))


def classify_one(faults: FaultSet, options: ClassifyOptions = ClassifyOptions()) -> EnumerationRecord:
    n = faults.n
    ham = find_hamiltonian(n, faults).hamiltonian
    kinds: list[str] = []
    heur = None
    minimal = None
    if not ham:
        reports = detect_traps(n, faults, healthy_cycles=options.healthy_cycles)
        kinds = sorted({r.kind.value for r in reports}, key=lambda s: _kind_order(s))
    if not ham or options.heuristic_all:
        heur = run_heuristic(n, faults).verdict
    if ham:
        cat = HAMILTONIAN
    elif kinds:
        cat = TRAPPED
    elif heur == "NoHC":
        cat = HEURISTIC
    else:
        cat = UNDETECTED
        if options.minimality:
            minimal = check_minimality(n, faults)
    return EnumerationRecord(n, len(faults), [list(p) for p in faults.pairs()], ham, cat, kinds, heur, minimal)


def _kind_order(name: str) -> int:
    from .cycles import Kind
    return Kind(name).order


def _classify_pair(args):
    f, options = args
    return classify_one(f, options)


@dataclass
class ClassificationSummary:
    n: int
    k: int
    total: int = 0
    counts: dict = field(default_factory=lambda: {c: 0 for c in CATEGORIES})
    trapped_by_kind: dict = field(default_factory=dict)
    # non-Hamiltonian classes containing at least one trap of each kind
    with_kind: dict = field(default_factory=dict)
    undetected: list = field(default_factory=list)
    undetected_minimal: list = field(default_factory=list)
    heuristic_nohc_on_hamiltonian: int = 0
    complete: bool = True

    def add(self, r: EnumerationRecord) -> None:
        self.total += 1
        self.counts[r.category] += 1
        if r.category == TRAPPED:
            first = r.traps[0]
            self.trapped_by_kind[first] = self.trapped_by_kind.get(first, 0) + 1
        for kname in r.traps:
            self.with_kind[kname] = self.with_kind.get(kname, 0) + 1
        if r.category == UNDETECTED:
            self.undetected.append(r.faults)
            if r.minimal:
                self.undetected_minimal.append(r.faults)
        if r.hamiltonian and r.heuristic == "NoHC":
            self.heuristic_nohc_on_hamiltonian += 1

    @property
    def non_hamiltonian(self) -> int:
        return self.total - self.counts[HAMILTONIAN]

    def to_json(self) -> dict:
        d = asdict(self)
        d["trapped_by_kind"] = dict(sorted(self.trapped_by_kind.items(), key=lambda kv: _kind_order(kv[0])))
        d["with_kind"] = dict(sorted(self.with_kind.items(), key=lambda kv: _kind_order(kv[0])))
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, d: dict) -> "ClassificationSummary":
        return cls(**d)


def summarize(records) -> ClassificationSummary:
    records = list(records)
    if not records:
        raise ValueError("no records")
    s = ClassificationSummary(records[0].n, records[0].k)
    for r in records:
        s.add(r)
    return s


def read_records(path) -> list[EnumerationRecord]:
    with open(path, encoding="utf-8") as fh:
        return [EnumerationRecord.from_line(line) for line in fh if line.strip()]


# --- checkpoints -------------------------------------------------------------

class CheckpointError(RuntimeError):
    pass


def _digest(payload: dict) -> str:
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _options_key(options: ClassifyOptions) -> dict:
    return {"minimality": options.minimality, "heuristic_all": options.heuristic_all,
            "healthy_cycles": options.healthy_cycles}


def save_checkpoint(path: str, n: int, k: int, options: ClassifyOptions, done: int,
                    summary: ClassificationSummary, out_bytes: Optional[int]) -> None:
    payload = {
        "format": CHECKPOINT_FORMAT, "n": n, "k": k, "options": _options_key(options),
        "done": done, "out_bytes": out_bytes, "summary": summary.to_json(),
    }
    payload["digest"] = _digest(payload)
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, sort_keys=True)
    os.replace(tmp, path)


def load_checkpoint(path: str) -> Optional[dict]:
    """Checkpoint payload, or None if ``path`` does not exist yet."""
    if not os.path.exists(path):
        return None
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise CheckpointError(f"unreadable checkpoint {path}: {exc}") from exc
    if not isinstance(payload, dict) or payload.get("format") != CHECKPOINT_FORMAT:
        raise CheckpointError(f"{path} is not a {CHECKPOINT_FORMAT} file")
    digest = payload.pop("digest", None)
    if digest != _digest(payload):
        raise CheckpointError(f"checkpoint {path} failed its integrity check")
    return payload


def resume_token(path: str) -> int:
    """Number of classes already classified according to the checkpoint at ``path``."""
    payload = load_checkpoint(path)
    return 0 if payload is None else int(payload["done"])


# --- driver --------------------------------------------------------------------

def classify_all(n: int, k: int, options: ClassifyOptions = ClassifyOptions(),
                 max_classes: Optional[int] = None) -> ClassificationSummary:
    """Classify every isomorphism class of k-fault sets of Q_n.

    With ``options.checkpoint`` the run can be interrupted (``max_classes``
    simulates that) and resumed; the final summary does not depend on where
    it stopped or on ``options.jobs``.
    """
    summary = ClassificationSummary(n, k)
    done = 0
    out_fh = None
    if options.checkpoint:
        payload = load_checkpoint(options.checkpoint)
        if payload is not None:
            if (payload["n"], payload["k"], payload["options"]) != (n, k, _options_key(options)):
                raise CheckpointError("checkpoint was written for a different run")
            done = payload["done"]
            summary = ClassificationSummary.from_json(payload["summary"])
            summary.complete = True
            if options.out:
                if payload["out_bytes"] is None or not os.path.exists(options.out):
                    raise CheckpointError("checkpoint refers to a missing record stream")
                with open(options.out, "r+b") as fh:
                    fh.truncate(payload["out_bytes"])
    if options.out:
        out_fh = open(options.out, "ab" if done else "wb")
    processed = 0
    try:
        it = iter_classes(n, k)
        for _ in range(done):
            next(it)
        pool = ProcessPoolExecutor(options.jobs) if options.jobs > 1 else None
        try:
            while True:
                size = options.checkpoint_every
                if max_classes is not None:
                    size = min(size, max_classes - processed)
                batch = list(itertools.islice(it, max(0, size)))
                if not batch:
                    break
                if pool is not None:
                    recs = list(pool.map(_classify_pair, [(f, options) for f in batch], chunksize=16))
                else:
                    recs = [classify_one(f, options) for f in batch]
                for r in recs:
                    summary.add(r)
                    if out_fh is not None:
                        out_fh.write((r.to_line() + "\n").encode())
                done += len(recs)
                processed += len(recs)
                if out_fh is not None:
                    out_fh.flush()
                if options.checkpoint:
                    save_checkpoint(options.checkpoint, n, k, options, done, summary,
                                    out_fh.tell() if out_fh is not None else None)
                if max_classes is not None and processed >= max_classes:
                    if next(it, None) is not None:
                        summary.complete = False
                    break
        finally:
            if pool is not None:
                pool.shutdown()
    finally:
        if out_fh is not None:
            out_fh.close()
    return summary
