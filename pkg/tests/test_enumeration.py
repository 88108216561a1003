import json
import math
import random

import pytest

from hypertrap.catalog import hard_q4
from hypertrap.core import FaultSet, cube
from hypertrap.enumeration import (CheckpointError, ClassificationSummary, ClassifyOptions, EnumerationRecord,
                                   class_counts, classify_all, classify_one, enumerate_classes, iter_classes,
                                   load_checkpoint, read_records, resume_token, summarize)
from hypertrap.heuristic import run_heuristic
from hypertrap.solver import is_hamiltonian
from hypertrap.symmetry import canonical_key, is_orderly_canonical, orbit
from hypertrap.traps import detect_traps

from oracles import canonical_brute, orbit_count_brute

# frozen from the brute-force orbit partition in tests/oracles.py
Q3_COUNTS = [1, 1, 4, 9, 18, 24, 30, 24, 18, 9, 4, 1, 1]
Q4_COUNTS = [1, 1, 6, 24, 140, 604, 2596, 9143, 28261]


def test_q3_counts_match_brute_force_orbits():
    assert class_counts(3, 12) == Q3_COUNTS
    for k in range(13):
        assert orbit_count_brute(3, k) == Q3_COUNTS[k]


def test_small_examples():
    assert enumerate_classes(3, 1) == 1
    assert enumerate_classes(3, 2) == 4
    assert enumerate_classes(4, 0) == 1


def test_q4_counts_low_k():
    assert class_counts(4, 5) == Q4_COUNTS[:6]


def test_q3_coverage_each_subset_once():
    for k in range(13):
        seen = set()
        total = 0
        for f in iter_classes(3, k):
            assert is_orderly_canonical(f)
            key = tuple(canonical_brute(3, f.pairs()))
            assert key not in seen
            seen.add(key)
            total += len(orbit(f))
        assert total == math.comb(12, k)


@pytest.mark.parametrize("k", [3, 4, 5])
def test_q4_orbits_sum_to_binomial(k):
    assert sum(len(orbit(f)) for f in iter_classes(4, k)) == math.comb(32, k)


def test_q4_sampled_subsets_hit_a_visited_class():
    rng = random.Random(4)
    E = cube(4).edges
    keys = {k: {f.edges for f in iter_classes(4, k)} for k in (4, 5)}
    for _ in range(300):
        k = rng.choice((4, 5))
        f = FaultSet(4, tuple(rng.sample(E, k)))
        assert canonical_key(f) in keys[k]


def test_order_is_deterministic():
    a = [f.edges for f in iter_classes(4, 4)]
    b = [f.edges for f in iter_classes(4, 4)]
    assert a == b


def test_record_round_trip():
    f = hard_q4(8)[0]
    r = classify_one(f, ClassifyOptions(minimality=True))
    assert r.category == "undetected" and r.minimal is True
    assert EnumerationRecord.from_line(r.to_line()) == r
    assert r.fault_set() == f


def test_q4_k5_summary():
    s = classify_all(4, 5)
    assert s.total == 604
    assert sum(s.counts.values()) == s.total
    assert s.counts["undetected"] == 0 and s.counts["heuristic"] == 0
    assert s.non_hamiltonian == s.counts["trapped"] == 87
    back = ClassificationSummary.from_json(json.loads(s.dumps()))
    assert back.dumps() == s.dumps()


def test_resume_gives_identical_summary(tmp_path):
    opts = dict(checkpoint_every=50)
    ref = classify_all(4, 5, ClassifyOptions(out=str(tmp_path / "ref.jsonl"), **opts))
    ck = str(tmp_path / "run.ckpt")
    out = str(tmp_path / "run.jsonl")
    o = ClassifyOptions(checkpoint=ck, out=out, **opts)
    assert resume_token(ck) == 0
    part = classify_all(4, 5, o, max_classes=300)
    assert not part.complete
    assert resume_token(ck) == 300
    # simulate a crash that wrote records past the checkpoint
    with open(out, "a") as fh:
        fh.write('{"garbage": true}\n')
    final = classify_all(4, 5, o)
    assert final.complete
    assert final.dumps() == ref.dumps()
    assert open(out, "rb").read() == open(tmp_path / "ref.jsonl", "rb").read()
    assert summarize(read_records(out)).dumps() == ref.dumps()


def test_corrupt_checkpoint_is_an_error(tmp_path):
    ck = tmp_path / "c.ckpt"
    classify_all(3, 4, ClassifyOptions(checkpoint=str(ck), checkpoint_every=5), max_classes=10)
    payload = json.loads(ck.read_text())
    payload["done"] += 1
    ck.write_text(json.dumps(payload))
    with pytest.raises(CheckpointError):
        load_checkpoint(str(ck))
    with pytest.raises(CheckpointError):
        classify_all(3, 4, ClassifyOptions(checkpoint=str(ck)))
    ck.write_text("{not json")
    with pytest.raises(CheckpointError):
        resume_token(str(ck))


def test_checkpoint_for_other_run_is_rejected(tmp_path):
    ck = str(tmp_path / "c.ckpt")
    classify_all(3, 4, ClassifyOptions(checkpoint=ck, checkpoint_every=5), max_classes=10)
    with pytest.raises(CheckpointError):
        classify_all(3, 5, ClassifyOptions(checkpoint=ck))


def test_jobs_do_not_change_the_result(tmp_path):
    a = classify_all(4, 4, ClassifyOptions(out=str(tmp_path / "a.jsonl")))
    b = classify_all(4, 4, ClassifyOptions(jobs=2, checkpoint_every=40, out=str(tmp_path / "b.jsonl")))
    assert a.dumps() == b.dumps()
    assert (tmp_path / "a.jsonl").read_bytes() == (tmp_path / "b.jsonl").read_bytes()


def test_undetected_records_revalidate():
    for f in hard_q4(8) + hard_q4(9):
        r = classify_one(f, ClassifyOptions(minimality=True))
        assert r.category == "undetected"
        assert not is_hamiltonian(4, r.fault_set())
        assert detect_traps(4, r.fault_set()) == []
        assert run_heuristic(4, r.fault_set()).verdict == "Unknown"


def test_heuristic_all_audits_hamiltonian_classes():
    recs = []
    for f in iter_classes(3, 3):
        r = classify_one(f, ClassifyOptions(heuristic_all=True))
        recs.append(r)
        assert r.heuristic is not None
        if r.hamiltonian:
            assert r.heuristic == "Unknown"
    assert summarize(recs).total == Q3_COUNTS[3]


def test_max_classes_at_the_end_is_complete():
    assert classify_all(3, 3, max_classes=Q3_COUNTS[3]).complete
    assert not classify_all(3, 3, max_classes=Q3_COUNTS[3] - 1).complete
