import itertools
import math

import numpy as np

import pytest
from hypothesis import given, settings, strategies as st

from hypertrap.core import Edge, FaultSet, HypercubeError, cube, faults
from hypertrap.symmetry import (Automorphism, _candidates_pruned, _image_rows, _lexmin_row, apply, edge_indices, are_isomorphic, canonical_form, canonical_key, group,
                                group_order, is_orderly_canonical, orbit, stabilizer_order)

from oracles import canonical_brute, orbit_brute


@st.composite
def automorphisms(draw, n):
    perm = tuple(draw(st.permutations(range(n))))
    return Automorphism(perm, draw(st.integers(0, 2 ** n - 1)))


@st.composite
def fault_sets(draw, n, max_size=8):
    E = cube(n).edges
    idx = draw(st.sets(st.integers(0, len(E) - 1), max_size=max_size))
    return FaultSet(n, tuple(E[i] for i in idx))


def test_group_order_and_adjacency():
    for n in range(1, 5):
        elems = list(group(n))
        assert len(elems) == group_order(n) == 2 ** n * math.factorial(n)
        assert elems[0] == Automorphism.identity(n)
        edges = set(cube(n).edges)
        for a in elems:
            assert {a.edge(e) for e in edges} == edges


@given(st.data())
def test_compose_and_inverse(data):
    n = data.draw(st.integers(1, 6))
    a = data.draw(automorphisms(n))
    b = data.draw(automorphisms(n))
    ab = a.compose(b)
    for x in range(2 ** n):
        assert ab(x) == a(b(x))
        assert a.inverse()(a(x)) == x


@given(st.data())
def test_apply_is_a_group_action(data):
    n = data.draw(st.integers(2, 5))
    a, b = data.draw(automorphisms(n)), data.draw(automorphisms(n))
    f = data.draw(fault_sets(n))
    assert apply(a.compose(b), f) == apply(a, apply(b, f))


def test_apply_dimension_mismatch():
    with pytest.raises(HypercubeError):
        apply(Automorphism.identity(3), faults(4, [(0, 1)]))
    with pytest.raises(HypercubeError):
        are_isomorphic(faults(3, [(0, 1)]), faults(4, [(0, 1)]))


def test_canonical_q3_exhaustive_against_brute_force():
    # constant on orbits and separating orbits, for all 4096 subsets
    c = cube(3)
    seen = {}
    for m in range(1 << 12):
        f = FaultSet.from_mask(3, m)
        key = canonical_key(f)
        brute = canonical_brute(3, f.pairs())
        assert [tuple(e) for e in key] == list(brute)
        seen.setdefault(key, set()).add(m)
    # each key class is exactly one orbit
    for key, members in seen.items():
        f = FaultSet(3, key)
        assert len(members) == len(orbit_brute(3, f.pairs()))
    assert len(seen) == 144  # 1+1+4+9+18+24+30+24+18+9+4+1+1


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_orbit_stabilizer(data):
    n = data.draw(st.integers(2, 4))
    f = data.draw(fault_sets(n, 6))
    assert len(orbit(f)) * stabilizer_order(f) == group_order(n)
    if n == 3:
        assert len(orbit(f)) == len(orbit_brute(3, f.pairs()))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_canonical_form_invariant_and_witness(data):
    n = data.draw(st.integers(2, 7))
    f = data.draw(fault_sets(n, 6))
    a = data.draw(automorphisms(n))
    cf = canonical_form(f)
    assert apply(cf.witness, f) == cf.rep
    assert canonical_key(apply(a, f)) == cf.rep.edges
    assert is_orderly_canonical(cf.rep)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_pruned_candidates_reach_the_full_sweep_minimum(data):
    # the n >= 6 path only tries automorphisms sending a fault onto (0, 1)
    n = data.draw(st.integers(2, 5))
    f = data.draw(fault_sets(n, 7).filter(len))
    c = cube(n)
    best = min(tuple(sorted(c.index[a.edge(e)] for e in f.edges)) for a in _candidates_pruned(f))
    assert tuple(c.edges[k] for k in best) == canonical_key(f)


def test_isomorphism_examples():
    assert are_isomorphic(faults(3, [(0, 1)]), faults(3, [(6, 7)]))
    assert not are_isomorphic(faults(3, [(0, 1), (0, 2)]), faults(3, [(0, 1), (6, 7)]))
    assert not are_isomorphic(faults(3, [(0, 1)]), faults(3, [(0, 1), (2, 3)]))


def test_q3_pair_classes():
    keys = {canonical_key(FaultSet(3, p)) for p in itertools.combinations(cube(3).edges, 2)}
    # adjacent, parallel in a face, antipodal parallel, skew
    assert len(keys) == 4
    assert canonical_key(faults(3, [(6, 7), (0, 2)])) == (Edge(0, 1), Edge(2, 6))


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_vectorized_pruned_sweep_matches_python_loop(data):
    n = data.draw(st.integers(6, 7))
    f = data.draw(fault_sets(n, 10).filter(len))
    rows, cands = _image_rows(f)
    best = rows[_lexmin_row(rows)]
    c = cube(n)
    cf = canonical_form(f)
    assert tuple(c.edges[int(k)] for k in best) == cf.rep.edges
    assert apply(cf.witness, f) == cf.rep


def test_edge_index_formula():
    for n in range(1, 9):
        c = cube(n)
        lo = np.array([e.lo for e in c.edges])
        hi = np.array([e.hi for e in c.edges])
        assert (edge_indices(n, lo, hi) == np.arange(c.ne)).all()
