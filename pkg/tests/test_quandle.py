from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from quandlekit import constructions as C
from quandlekit.canonical import are_isomorphic
from quandlekit.enumeration import enumerate_quandles
from quandlekit.permgroups import Permutation, quotient_is_cyclic
from quandlekit.quandle import (CayleyTable, MalformedTableError, QuandleAxiomError, classify, column_cycles,
                                from_column_cycles, inner_group, inner_relation_holds, is_connected,
                                is_homomorphism, is_kei, is_latin, is_medial, is_quandle, is_simple,
                                left_map, nelson_wong_decomposition, orbit_decomposition, quandle_violations,
                                right_map, transvection_group, verify_quandle, verify_vendramin)

import oracles

random_tables = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.lists(st.integers(0, n - 1), min_size=n, max_size=n), min_size=n, max_size=n))


def test_axioms_on_examples():
    assert is_quandle(C.trivial(3))
    bad = [[1, 0], [1, 1]]
    v = quandle_violations(bad)
    assert v and v[0].witness == (0,)
    with pytest.raises(QuandleAxiomError):
        verify_quandle(bad)
    assert is_quandle(C.dihedral(5))


def test_malformed_tables():
    with pytest.raises(MalformedTableError):
        CayleyTable(((0, 1), (0,)))
    with pytest.raises(MalformedTableError):
        CayleyTable(((0, 2), (1, 1)))


@settings(max_examples=300, deadline=None)
@given(random_tables)
def test_axiom_checker_matches_triple_loop(T):
    assert is_quandle(T) == oracles.quandle_axioms_hold(T)


def test_right_and_left_maps():
    assert right_map(C.trivial(4), 2).is_identity()
    assert right_map(C.dihedral(4), 0) == Permutation.from_cycles(4, [(1, 3)])
    assert not left_map(C.dihedral(4), 0).bijective


def test_inner_and_transvection_orders():
    assert inner_group(C.trivial(5)).order == 1
    assert inner_group(C.dihedral(3)).order == 6
    assert transvection_group(C.dihedral(3)).order == 3


def test_classification_flags():
    r4 = classify(C.dihedral(4))
    assert (r4.kei, r4.latin, r4.medial, r4.connected, r4.faithful) == (True, False, True, False, False)
    r5 = classify(C.dihedral(5))
    assert (r5.kei, r5.latin, r5.medial, r5.connected) == (True, True, True, True)
    g = classify(C.galkin(C.AbelianGroupSpec.cyclic(5)))
    assert (g.latin, g.medial, g.connected) == (True, False, True)
    assert g.simple is None
    assert "simple: not computed" in g.lines()


def test_simple():
    assert is_simple(C.dihedral(5))
    assert not is_simple(C.dihedral(4))


def test_orbit_decomposition():
    assert [b.indices for b in orbit_decomposition(C.trivial(3))] == [(0,), (1,), (2,)]
    blocks = orbit_decomposition(C.dihedral(4))
    assert [b.indices for b in blocks] == [(0, 2), (1, 3)]
    assert all(b.table.rows == C.trivial(2).rows for b in blocks)
    assert len(orbit_decomposition(C.dihedral(5))) == 1


def _blocks(decomp):
    return sorted(b.indices for b in decomp)


def test_nelson_wong_decomposition():
    assert _blocks(nelson_wong_decomposition(C.trivial(4))) == [(0,), (1,), (2,), (3,)]
    assert _blocks(nelson_wong_decomposition(C.dihedral(5))) == [(0, 1, 2, 3, 4)]
    q4 = from_column_cycles("(1),(1),(12),(12)", 4)
    blocks = _blocks(nelson_wong_decomposition(q4))
    orbit_blocks = _blocks(orbit_decomposition(q4))
    assert orbit_blocks == [(0, 1), (2,), (3,)]
    # every decomposition block lies inside one orbit
    assert all(any(set(b) <= set(o) for o in orbit_blocks) for b in blocks)


def test_column_cycles_round_trip():
    q5 = from_column_cycles("(1),(34),(24),(23)", 4)
    assert is_quandle(q5)
    assert column_cycles(q5) == "(1),(34),(24),(23)"


def test_homomorphism():
    r8, r4 = C.dihedral(8), C.dihedral(4)
    assert is_homomorphism(r8, r4, [i % 4 for i in range(8)])
    assert not is_homomorphism(r8, r4, [i // 2 for i in range(8)])


def test_vendramin():
    assert verify_vendramin(C.dihedral(3))
    assert verify_vendramin(C.dihedral(5))
    for n in range(3, 7):
        for q in enumerate_quandles(n).tables:
            if is_connected(q):
                assert verify_vendramin(q)
    with pytest.raises(ValueError):
        verify_vendramin(C.dihedral(4))


def test_inner_relation_and_cyclic_quotient_order_le_5():
    for n in range(1, 6):
        for q in enumerate_quandles(n).tables:
            assert inner_relation_holds(q)
            assert quotient_is_cyclic(inner_group(q), transvection_group(q))


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 12), st.data())
def test_medial_kei_of_alexander(n, data):
    units = [t for t in range(1, n) if gcd(t, n) == 1]
    t = data.draw(st.sampled_from(units))
    q = C.alexander(C.AbelianGroupSpec.cyclic(n), C.AutomorphismSpec.unit(n, t))
    assert is_medial(q)
    assert is_kei(q) == ((t * t) % n == 1 % n)
    assert is_latin(q) == (gcd(1 - t, n) == 1)
