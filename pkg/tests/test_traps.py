import json

import pytest
from hypothesis import given, settings, strategies as st

from hypertrap.catalog import Q5_PRESETS, TRAP_TABLE, is_minimal_trap
from hypertrap.core import Edge, FaultSet, HypercubeError, cube, faults
from hypertrap.cycles import Kind
from hypertrap.solver import is_hamiltonian
from hypertrap.symmetry import Automorphism, are_isomorphic
from hypertrap.traps import (ClMark, NotDisconnectedHalfway, TrapReport, check_minimality, detect_generic_dhw,
                             detect_traps, dhw_boundary, find_claws, generate_trap, is_dhw, reduce_witness,
                             verify_dhw, verify_report)

from oracles import has_claw_brute, has_dhw_brute, hamiltonian_brute


def E(*pairs):
    return [Edge.of(*p) for p in pairs]


def test_boundary_examples():
    assert dhw_boundary(3, {0, 1}, 0) == E((0, 2), (0, 4))
    assert dhw_boundary(3, {0, 1, 3, 2}, 0) == E((0, 4), (3, 7))
    assert dhw_boundary(4, {0, 1, 3, 2, 6, 4}, 0) == E((0, 8), (3, 7), (3, 11), (6, 7), (6, 14))


def test_generate_examples():
    assert generate_trap(Kind.Q2DHW, 3).edges == tuple(E((0, 4), (3, 7)))
    assert len(generate_trap(Kind.C6_1, 4)) == 5
    assert generate_trap(Kind.C8_3, 4).edges == tuple(dhw_boundary(4, (0, 1, 3, 2, 6, 14, 12, 4), 0))
    assert generate_trap(Kind.CL, 3).edges == tuple(E((1, 3), (2, 6), (4, 5)))
    with pytest.raises(HypercubeError):
        generate_trap(Kind.Q3DHW, 3)
    with pytest.raises(HypercubeError):
        generate_trap(Kind.GenericDHW, 5)


def test_verify_dhw_errors():
    f = faults(3, [(0, 2)])
    with pytest.raises(NotDisconnectedHalfway) as exc:
        verify_dhw(3, f, {0, 1}, 0)
    assert exc.value.edge == Edge(0, 4)
    with pytest.raises(NotDisconnectedHalfway):
        verify_dhw(3, faults(3, [(1, 3), (1, 5)]), {0, 1}, 0)
    with pytest.raises(NotDisconnectedHalfway):
        verify_dhw(3, faults(3, [(0, 2), (0, 4)]), {0, 1, 3}, 0)
    with pytest.raises(HypercubeError):
        verify_dhw(3, f, set(range(8)), 0)
    with pytest.raises(HypercubeError):
        verify_dhw(3, f, set(), 0)


def test_claw_example_has_two_reports():
    f = faults(3, [(1, 3), (2, 6), (4, 5)])
    reports = detect_traps(3, f)
    assert [r.kind for r in reports] == [Kind.CL, Kind.CL]
    assert {r.witness.center for r in reports} == {0, 7}
    assert all(verify_report(r) for r in reports)
    assert find_claws(f) == [ClMark(0, (1, 2, 4)), ClMark(7, (3, 5, 6))]


def test_q1_report_when_all_edges_faulty():
    f = faults(3, [(0, 1), (0, 2), (0, 4)])
    r = [r for r in detect_traps(3, f) if r.kind is Kind.Q1DHW][0]
    assert r.T == (0, 1) and r.side == 0
    assert verify_report(r)


def test_q3_detection_matches_brute_force_trap_search():
    # |T| <= 8 covers every proper subset of Q_3, so detection is exact there
    for m in range(1 << 12):
        f = FaultSet.from_mask(3, m)
        found = bool(detect_traps(3, f))
        assert found == (has_dhw_brute(3, f.pairs()) or has_claw_brute(3, f.pairs())), f


@st.composite
def fault_sets(draw, n, max_size):
    Es = cube(n).edges
    idx = draw(st.sets(st.integers(0, len(Es) - 1), max_size=max_size))
    return FaultSet(n, tuple(Es[i] for i in idx))


@settings(max_examples=150, deadline=None)
@given(fault_sets(4, 12))
def test_reports_are_sound_on_q4(f):
    reports = detect_traps(4, f, generic_max_T=14)
    for r in reports:
        assert verify_report(r)
        back = TrapReport.from_json(json.loads(json.dumps(r.to_json())))
        assert back.to_json() == r.to_json()
    if reports:
        assert not is_hamiltonian(4, f)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_embedded_traps_are_detected(data):
    n = data.draw(st.integers(3, 5))
    kinds = [k for k, row in TRAP_TABLE.items() if row.size(n) is not None and row.minimal(n, 0)]
    kind = data.draw(st.sampled_from(kinds))
    a = Automorphism(tuple(data.draw(st.permutations(range(n)))), data.draw(st.integers(0, 2 ** n - 1)))
    f = generate_trap(kind, n, 0, embedding=a)
    assert are_isomorphic(f, generate_trap(kind, n, 0))
    got = {r.kind for r in detect_traps(n, f)}
    want = Kind.Q3DHW if kind is Kind.C8_1 else kind
    assert want in got


@pytest.mark.parametrize("kind", [k for k in TRAP_TABLE])
def test_generated_traps_are_non_hamiltonian(kind):
    row = TRAP_TABLE[kind]
    for n in range(3, 6):
        if row.size(n) is None:
            continue
        for side in (0, 1):
            f = generate_trap(kind, n, side)
            assert len(f) == row.size(n)
            assert not is_hamiltonian(n, f)


@pytest.mark.parametrize("kind", [k for k in TRAP_TABLE if k is not Kind.CL])
def test_side_isomorphism_claims(kind):
    row = TRAP_TABLE[kind]
    for n in range(max(3, row.min_n), 8):
        same = are_isomorphic(generate_trap(kind, n, 0), generate_trap(kind, n, 1))
        assert same == (n in row.sides_isomorphic), (kind, n)


def test_minimality_matrix():
    for kind, row in TRAP_TABLE.items():
        for n in range(3, 6):
            if row.size(n) is None:
                continue
            for side in (0, 1):
                assert is_minimal_trap(kind, n, side) == row.minimal(n, side), (kind, n, side)


def test_c6_1_in_q3_collapses_to_a_vertex():
    f = generate_trap(Kind.C6_1, 3)
    assert check_minimality(3, f)
    assert Kind.Q1DHW in {r.kind for r in detect_traps(3, f)}


def test_check_minimality_examples():
    assert check_minimality(3, faults(3, [(0, 4), (3, 7)]))
    assert not check_minimality(3, faults(3, [(0, 4), (3, 7), (5, 7)]))
    assert not check_minimality(3, faults(3, [(0, 1)]))


@pytest.mark.parametrize("name", sorted(Q5_PRESETS))
def test_presets_need_the_generic_search(name):
    p = Q5_PRESETS[name]
    f = p.fault_set()
    assert len(f) == 10
    assert detect_traps(5, f) == []
    w = detect_generic_dhw(5, f, p.cycle_length)
    assert w.T == p.T and w.side == p.side
    assert detect_generic_dhw(5, f, p.cycle_length - 1) is None
    reports = detect_traps(5, f, generic_max_T=p.cycle_length)
    assert [r.kind for r in reports] == [Kind.GenericDHW]


def test_generic_search_finds_small_sets_too():
    f = faults(3, [(0, 4), (3, 7)])
    w = detect_generic_dhw(3, f, 6)
    assert w.size == 2 or w.size == 4
    assert is_dhw(3, f, w.T, w.side)
    assert detect_generic_dhw(4, FaultSet(4), 14) is None


@settings(max_examples=80, deadline=None)
@given(fault_sets(4, 10))
def test_reduce_witness_keeps_a_valid_smaller_witness(f):
    w = detect_generic_dhw(4, f, 14)
    if w is None:
        return
    r = reduce_witness(w, f)
    # a lone cut-off vertex becomes a Q1-DHW of size 2
    assert r.size <= max(w.size, 2)
    assert is_dhw(4, f, r.T, r.side)


def test_reduce_witness_drops_surplus_and_splits_components():
    # T = square {0,1,3,2} cut off on side 0, plus a far isolated side-0 vertex 12 cut off completely
    f = faults(4, [(0, 4), (0, 8), (3, 7), (3, 11), (12, 13), (12, 14), (4, 12), (8, 12)])
    w = verify_dhw(4, f, {0, 1, 2, 3, 12}, 0)
    r = reduce_witness(w, f)
    assert r.size < w.size
    assert is_dhw(4, f, r.T, r.side)


def test_q3_law_oracle_sample():
    # the reference backtracker and the brute-force trap search tell the same story
    for m in range(0, 1 << 12, 5):
        pairs = FaultSet.from_mask(3, m).pairs()
        assert hamiltonian_brute(3, pairs) != (has_dhw_brute(3, pairs) or has_claw_brute(3, pairs))
