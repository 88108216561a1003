import pytest
from hypothesis import given, strategies as st

from hypertrap.core import (Crossing, Edge, FaultFileError, FaultSet, HypercubeError, PartitionView,
                            classify_crossing, cube, faults, format_faults, healthy_neighbors, parity,
                            parse_faults)

from oracles import sorted_edges


def fault_sets(max_n=5):
    @st.composite
    def build(draw):
        n = draw(st.integers(2, max_n))
        E = cube(n).edges
        idx = draw(st.sets(st.integers(0, len(E) - 1), max_size=min(12, len(E))))
        return FaultSet(n, tuple(E[i] for i in idx))
    return build()


def test_cube_tables_match_reference():
    for n in range(1, 7):
        c = cube(n)
        assert c.nv == 2 ** n and c.ne == n * 2 ** (n - 1)
        assert [tuple(e) for e in c.edges] == sorted_edges(n)
        for v in range(c.nv):
            for i in range(n):
                assert c.edges[c.edge_id[v][i]] == Edge.of(v, v ^ 1 << i)


def test_edge_normalization_and_errors():
    assert Edge.of(3, 1) == Edge(1, 3)
    assert Edge.of(4, 0).dim == 2
    assert Edge(1, 3).other(1) == 3
    for u, v in [(0, 3), (5, 5), (-1, 0), (1, 6)]:
        with pytest.raises(HypercubeError):
            Edge.of(u, v)


def test_bipartite_and_crossing_split():
    for n in range(1, 8):
        for e in cube(n).edges:
            assert parity(e.lo) != parity(e.hi)
        for dim in range(n):
            pv = PartitionView(n, dim)
            cross = pv.crossing_edges()
            assert len(cross) == 2 ** (n - 1)
            if n >= 2:
                assert len(pv.even_edges()) == len(pv.odd_edges()) == 2 ** (n - 2)
            kinds = [classify_crossing(e, dim) for e in cross]
            assert Crossing.NOT_CROSSING not in kinds


def test_classify_crossing_examples():
    assert classify_crossing((0, 1), 0) is Crossing.EVEN
    assert classify_crossing((2, 3), 0) is Crossing.ODD
    assert classify_crossing((0, 2), 0) is Crossing.NOT_CROSSING


def test_faultset_validation():
    with pytest.raises(HypercubeError):
        faults(3, [(0, 8)])
    with pytest.raises(HypercubeError):
        faults(3, [(0, 3)])
    f = faults(3, [(1, 0), (0, 1), (4, 0)])
    assert f.pairs() == [(0, 1), (0, 4)]
    assert (1, 0) in f and (2, 3) not in f and (0, 3) not in f


@given(fault_sets())
def test_degree_plus_faults_is_n(f):
    for v in range(1 << f.n):
        assert len(healthy_neighbors(f.n, v, f)) + f.fault_degree(v) == f.n
        assert f.degree(v) == len(healthy_neighbors(f.n, v, f))


@given(fault_sets())
def test_mask_round_trip(f):
    assert FaultSet.from_mask(f.n, f.mask) == f


@given(fault_sets(6))
def test_text_format_round_trip(f):
    assert parse_faults(format_faults(f)) == f


def test_parse_comments_and_blank_lines():
    text = "# header comment\nn=3\n\n0 1  # first\n 6 2\n"
    assert parse_faults(text).pairs() == [(0, 1), (2, 6)]


@pytest.mark.parametrize("text,line", [
    ("n=3\n0 3\n", 2),
    ("n=3\n0 1\n0 8\n", 3),
    ("3\n0 1\n", 1),
    ("n=3\n0 x\n", 2),
    ("n=3\n0 1 2\n", 2),
])
def test_parse_errors_carry_line(text, line):
    with pytest.raises(FaultFileError) as exc:
        parse_faults(text)
    assert exc.value.line == line


def test_missing_header():
    with pytest.raises(FaultFileError):
        parse_faults("# nothing\n")
