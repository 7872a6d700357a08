import random
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from quandlekit import constructions as C
from quandlekit.canonical import (are_isomorphic, automorphism_group, brute_force_isomorphism, canonical_form,
                                  canonical_key, canonical_labeling)
from quandlekit.enumeration import enumerate_quandles
from quandlekit.quandle import from_column_cycles, is_homomorphism

import oracles

SMALL = [q for n in range(1, 6) for q in enumerate_quandles(n).tables]


def relabel(q, f):
    return q.relabel(f)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SMALL), st.randoms(use_true_random=False))
def test_key_is_relabeling_invariant(q, rnd):
    f = list(range(q.order))
    rnd.shuffle(f)
    r = relabel(q, f)
    assert canonical_key(r) == canonical_key(q)
    iso = are_isomorphic(q, r)
    assert iso is not None and is_homomorphism(q, r, iso.images)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_key_equality_matches_brute_force(a, b):
    same_key = a.order == b.order and canonical_key(a) == canonical_key(b)
    assert same_key == (brute_force_isomorphism(a, b) is not None)
    assert same_key == oracles.isomorphic(oracles.rows(a), oracles.rows(b))


def test_labeling_reproduces_canonical_table():
    q = C.dihedral(6)
    table, order = canonical_labeling(q)
    label = {old: new for new, old in enumerate(order)}
    assert all(table.rows[label[a]][label[b]] == label[q.rows[a][b]] for a in range(6) for b in range(6))


def test_canonical_examples():
    assert canonical_form(C.trivial(4)).rows == C.trivial(4).rows
    q6 = from_column_cycles("(34),(34),(12),(12)", 4)
    assert canonical_form(C.dihedral(4)).rows == canonical_form(q6).rows
    assert are_isomorphic(C.dihedral(4), q6) is not None
    assert are_isomorphic(C.trivial(4), q6) is None
    assert are_isomorphic(C.dihedral(3), C.dihedral(3)) is not None


def test_canonical_form_idempotent_order_5():
    for q in enumerate_quandles(5).tables:
        c = canonical_form(q)
        assert canonical_form(c).rows == c.rows


def test_automorphisms_trivial_quandle():
    for n in range(1, 6):
        assert automorphism_group(C.trivial(n)).order == factorial(n)


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7])
def test_automorphisms_of_dihedral_match_brute_force(n):
    q = C.dihedral(n)
    g = automorphism_group(q)
    found = oracles.isomorphisms(oracles.rows(q), oracles.rows(q))
    assert g.order == len(found)
    assert set(g.element_tuples()) == set(found)


def test_automorphism_bound():
    with pytest.raises(ValueError):
        automorphism_group(C.trivial(13))
