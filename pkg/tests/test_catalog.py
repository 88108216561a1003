import pytest

from hypertrap.catalog import (COMPLETE_FAMILIES, Q4_K7_HEURISTIC_ONLY, Q5_PRESETS, TRAP_TABLE, all_hard_q4, family,
                               hard_q4, preset, trap_size)
from hypertrap.cycles import Kind
from hypertrap.symmetry import are_isomorphic


def test_size_examples():
    assert trap_size(Kind.C6_1, 5) == 8
    assert trap_size("C8_5", 6) == 16
    assert trap_size(Kind.Q1DHW, 3) == 2
    assert trap_size(Kind.Q3DHW, 3) is None


def test_formulas():
    assert TRAP_TABLE[Kind.Q1DHW].formula == "n-1"
    assert TRAP_TABLE[Kind.C8_2].formula == "4n-9"
    assert TRAP_TABLE[Kind.Q4DHW].formula == "8n-32"


def test_families_nest():
    assert family(4, 5) < family(4, 6)
    assert family(5, 8) < family(5, 9)
    assert family(3) == family(3, 7)
    with pytest.raises(KeyError):
        family(4, 7)
    assert all(Kind.GenericDHW not in fam for fam in COMPLETE_FAMILIES.values())


def test_hard_sets():
    hard = all_hard_q4()
    assert {k: len(v) for k, v in hard.items()} == {8: 5, 9: 8, 10: 4}
    for k, sets in hard.items():
        for i, f in enumerate(sets):
            assert len(f) == k
            for g in sets[i + 1:]:
                assert not are_isomorphic(f, g)
    assert hard_q4(11) == []
    assert Q4_K7_HEURISTIC_ONLY == 25


def test_presets():
    assert sorted(Q5_PRESETS) == ["R", "S", "T"]
    assert preset("t") == Q5_PRESETS["T"].fault_set()
    assert [len(Q5_PRESETS[p].T) for p in "TSR"] == [14, 12, 10]
    with pytest.raises(KeyError):
        preset("X")
