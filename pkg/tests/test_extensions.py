from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from quandlekit import constructions as C
from quandlekit.canonical import are_isomorphic, canonical_key
from quandlekit.cohomology import CocycleTable, cocycle_space, cohomologous
from quandlekit.extensions import (DynamicalCocycle, ExtensionError, abelian_as_dynamical, abelian_extension,
                                   dynamical_extension, dynamical_violations, extract_cocycle,
                                   fibration_to_dynamical, find_section, projection,
                                   search_dynamical_cocycles)
from quandlekit.quandle import is_connected, is_homomorphism, is_quandle

import oracles

R4_PHI = [(0, 2), (0, 3), (1, 0), (1, 3), (2, 0), (2, 3), (3, 0), (3, 1)]


def _phi():
    return CocycleTable.characteristic_sum(4, 2, R4_PHI)


def test_zero_cocycle_gives_product():
    x = C.dihedral(3)
    e = abelian_extension(x, 2, CocycleTable.zero(3, 2, 2))
    n = 3
    assert all(e.rows[i][j] == (i // n) * n + x.rows[i % n][j % n] for i in range(6) for j in range(6))
    assert is_homomorphism(x, e, list(range(3)))  # x -> (0, x) splits the projection


def test_r4_extension_is_r8():
    e = abelian_extension(C.dihedral(4), 2, _phi())
    assert are_isomorphic(e, C.dihedral(8)) is not None
    assert is_homomorphism(e, C.dihedral(4), projection(4, 2))


def test_extension_rejects_non_cocycle():
    with pytest.raises(ExtensionError):
        abelian_extension(C.dihedral(3), 2, CocycleTable.characteristic_sum(3, 2, [(0, 1)]))


SPACES = [(C.dihedral(3), 3), (C.dihedral(4), 2), (C.alexander_poly(2, [1, 1, 1]), 2), (C.dihedral(4), 4)]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(SPACES), st.data())
def test_extract_round_trip(qm, data):
    q, m = qm
    sp = cocycle_space(q, 2, m)
    coeffs = [data.draw(st.integers(0, m - 1)) for _ in sp.cocycles]
    phi = CocycleTable.zero(q.order, 2, m)
    for k, c in zip(coeffs, sp.cocycles):
        for _ in range(k):
            phi = phi + c
    e = abelian_extension(q, m, phi)
    n = q.order
    p = projection(n, m)
    assert extract_cocycle(e, q, p, [i // n for i in range(n * m)]) == phi
    assert cohomologous(q, extract_cocycle(e, q, p), phi)


def test_extract_r8_over_r4():
    r8, r4 = C.dihedral(8), C.dihedral(4)
    p = [i % 4 for i in range(8)]
    lead = [i // 4 for i in range(8)]
    assert cohomologous(r4, extract_cocycle(r8, r4, p, lead), _phi())
    assert cohomologous(r4, extract_cocycle(r8, r4, p), _phi())


@pytest.mark.parametrize("q", [2, 4])
def test_square_of_one_minus_t_is_extension(q):
    big = C.alexander_poly(q, [1, -2, 1])
    small = C.alexander_poly(q, [-1, 1])
    p = [(i % q + i // q) % q for i in range(q * q)]
    assert is_homomorphism(big, small, p)
    phi = extract_cocycle(big, small, p)
    assert phi.modulus == q
    assert are_isomorphic(abelian_extension(small, q, phi), big) is not None


def test_z4_to_z2_map_has_fibers_of_eight():
    big = C.alexander_poly(4, [1, -2, 1])
    small = C.alexander_poly(2, [-1, 1])
    p = [(i % 4 + i // 4) % 2 for i in range(16)]
    assert is_homomorphism(big, small, p)
    with pytest.raises(ExtensionError):
        extract_cocycle(big, small, p)


def test_extract_errors():
    r8, r4 = C.dihedral(8), C.dihedral(4)
    with pytest.raises(ExtensionError):
        extract_cocycle(r8, r4, [i // 2 for i in range(8)])
    with pytest.raises(ExtensionError):
        extract_cocycle(r8, r4, [i % 4 for i in range(8)], [0] * 8)
    with pytest.raises(ExtensionError):
        find_section(C.trivial(10), C.trivial(1), [0] * 10)


def test_constant_dynamical_cocycle_is_product():
    x = C.dihedral(3)
    alpha = DynamicalCocycle.from_function(x, 2, lambda x1, x2, a, b: a)
    e = dynamical_extension(x, alpha)
    assert e.rows == abelian_extension(x, 2, CocycleTable.zero(3, 2, 2)).rows


def test_abelian_as_dynamical():
    phi = _phi()
    x = C.dihedral(4)
    assert dynamical_extension(x, abelian_as_dynamical(x, phi)).rows == abelian_extension(x, 2, phi).rows


def test_dynamical_violation_reported():
    x = C.dihedral(3)
    alpha = DynamicalCocycle.from_function(x, 2, lambda x1, x2, a, b: 1 - a)
    assert dynamical_violations(alpha)
    with pytest.raises(ExtensionError):
        dynamical_extension(x, alpha)


def _brute_dynamical(x, s):
    """Every alpha over x with fiber s, checked by building the table and testing the axioms."""
    T = oracles.rows(x)
    n = len(T)
    fns = [f for f in product(range(s), repeat=s * s)
           if all(len({f[a * s + b] for a in range(s)}) == s for b in range(s))]
    diag = [f for f in fns if all(f[a * s + a] == a for a in range(s))]
    pairs = list(product(range(n), repeat=2))
    out = set()
    for choice in product(*[diag if i == j else fns for i, j in pairs]):
        A = dict(zip(pairs, choice))

        def op(u, v):
            a, x1 = divmod(u, n)
            b, x2 = divmod(v, n)
            return A[(x1, x2)][a * s + b] * n + T[x1][x2]

        table = [[op(u, v) for v in range(n * s)] for u in range(n * s)]
        if oracles.quandle_axioms_hold(table):
            out.add(tuple(tuple(r) for r in table))
    return out


def test_dynamical_search_matches_brute_force():
    x = C.dihedral(3)
    found = list(search_dynamical_cocycles(x, 2))
    tables = {dynamical_extension(x, a).rows for a in found}
    assert len(tables) == len(found)
    assert tables == _brute_dynamical(x, 2)
    assert any(is_connected(dynamical_extension(x, a)) for a in found)


@pytest.mark.parametrize("e,x,p", [
    (C.dihedral(8), C.dihedral(4), [i % 4 for i in range(8)]),
    (C.galkin(C.AbelianGroupSpec.cyclic(5)), C.dihedral(3), [i // 5 for i in range(15)]),
])
def test_fibration_to_dynamical(e, x, p):
    alpha = fibration_to_dynamical(e, x, p)
    assert alpha.s == e.order // x.order
    assert are_isomorphic(dynamical_extension(x, alpha), e) is not None
