import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from quandlekit import constructions as C
from quandlekit.canonical import are_isomorphic
from quandlekit.loops import (Loop, QuasigroupError, associativity_witness, belousov_loop, distributivity_flags,
                              element_order, exponent, find_identity, find_non_moufang_loop, is_commutative,
                              is_quasigroup, load_loop, moufang_check, moufang_theorem_sample, random_loop,
                              three_conditions, toyoda_witness, validate_quasigroup, zassenhaus81)
from quandlekit.quandle import is_homomorphism

import oracles


def brute_moufang(T):
    n = len(T)
    r = range(n)
    id1 = all(T[x][T[y][T[x][z]]] == T[T[T[x][y]][x]][z] for x in r for y in r for z in r)
    id2 = all(T[z][T[x][T[y][x]]] == T[T[T[z][x]][y]][x] for x in r for y in r for z in r)
    id3 = all(T[T[x][y]][T[z][x]] == T[T[x][T[y][z]]][x] for x in r for y in r for z in r)
    return id1, id2, id3


def brute_left_distributive(T):
    n = len(T)
    return all(T[a][T[b][c]] == T[T[a][b]][T[a][c]] for a, b, c in product(range(n), repeat=3))


def test_quasigroup_examples():
    z4 = C.cyclic_group(4)
    assert is_quasigroup(z4) and find_identity(z4) == 0
    assert not is_quasigroup(C.dihedral(4))
    with pytest.raises(QuasigroupError):
        validate_quasigroup(C.dihedral(4))
    assert is_quasigroup(C.dihedral(5)) and find_identity(C.dihedral(5)) is None


def test_distributivity():
    assert distributivity_flags(C.dihedral(5)) == (True, True)
    assert distributivity_flags(C.cyclic_group(4)) == (False, False)
    g = C.galkin(C.AbelianGroupSpec.cyclic(5))
    flags = distributivity_flags(g)
    assert flags.right
    assert flags.left == brute_left_distributive(oracles.rows(g))


def test_moufang_examples():
    assert moufang_check(Loop.from_table(C.symmetric_group(3))).all
    z = zassenhaus81()
    assert moufang_check(z).all
    bad = load_loop("loop5_non_moufang.tbl")
    rep = moufang_check(bad)
    assert not rep.id1 and not rep.id2 and not rep.id3
    assert rep.consistent


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6), st.integers(0, 10 ** 6))
def test_moufang_identities_agree(n, seed):
    loop = random_loop(n, random.Random(seed))
    rep = moufang_check(loop)
    assert tuple(bool(c) for c in rep) == brute_moufang(oracles.rows(loop.table))
    assert rep.consistent
    for c in rep:
        if c.witness is not None:
            assert not c.holds


def test_find_non_moufang_loop():
    loop = find_non_moufang_loop(5, seed=1)
    assert not any(brute_moufang(oracles.rows(loop.table)))


def test_belousov():
    l3 = belousov_loop(C.dihedral(3), 0)
    assert l3.identity == 0
    assert are_isomorphic(l3.table, C.cyclic_group(3)) is not None
    l5 = belousov_loop(C.dihedral(5), 0)
    assert associativity_witness(l5) is None and is_commutative(l5)
    for a in range(7):
        assert belousov_loop(C.dihedral(7), a).identity == a


def test_belousov_non_idempotent():
    two = C.AutomorphismSpec.unit(5, 2)
    q = C.affine_quasigroup(C.AbelianGroupSpec.cyclic(5), two, two, 1)
    loop = belousov_loop(q, 2)
    assert loop.identity == q.rows[2][2]


def test_zassenhaus_loop():
    z = zassenhaus81()
    assert z.order == 81 and z.identity == 0
    assert is_commutative(z)
    w = associativity_witness(z)
    T = z.table.rows
    x, y, u = w
    assert T[T[x][y]][u] != T[x][T[y][u]]
    assert exponent(z) == 3
    assert all(element_order(z, x) == 3 for x in range(1, 81))


def test_moufang_theorem_sample():
    samples = moufang_theorem_sample(zassenhaus81(), 100)
    assert len(samples) == 100


def test_three_conditions():
    c = three_conditions(zassenhaus81())
    assert c.commutative_loop and c.condition2 and c.halving_automorphism
    assert not c.associative


def test_toyoda():
    w = toyoda_witness(C.dihedral(5))
    assert w.group == C.AbelianGroupSpec.cyclic(5) and w.automorphism.images == (0, 4, 3, 2, 1)
    assert is_homomorphism(C.dihedral(5), C.alexander(w.group, w.automorphism), w.isomorphism.images)
    a4 = C.alexander_poly(2, [1, 1, 1])
    w = toyoda_witness(a4)
    assert is_homomorphism(a4, C.alexander(w.group, w.automorphism), w.isomorphism.images)
    assert toyoda_witness(C.galkin(C.AbelianGroupSpec.cyclic(5))) is None
    with pytest.raises(ValueError):
        toyoda_witness(C.dihedral(4))
