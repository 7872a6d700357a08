from hypothesis import given, settings, strategies as st

from quandlekit.smith import (AbelianGroup, elementary_divisors, group_from_diagonal, invariant_factors, smith,
                              solve_mod)

import oracles

matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)))


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_smith_transforms(A):
    res = smith(A)
    D = matmul(matmul(res.U, A), res.V)
    for i, row in enumerate(D):
        for j, v in enumerate(row):
            assert v == (res.diagonal[i] if i == j and i < res.rank else 0)
    assert abs(oracles.det(res.U)) == 1
    assert abs(oracles.det(res.V)) == 1


@settings(max_examples=200, deadline=None)
@given(matrices)
def test_invariant_factors_match_minors(A):
    expected = tuple(d for d in oracles.invariant_factors_by_minors(A) if d > 1)
    assert invariant_factors(smith(A, transforms=False).diagonal) == expected
    cols = [{i: A[i][j] for i in range(len(A)) if A[i][j]} for j in range(len(A[0]))]
    divs = elementary_divisors(cols, len(A))
    assert len(divs) == len(oracles.invariant_factors_by_minors(A))
    assert invariant_factors(divs) == expected


@settings(max_examples=200, deadline=None)
@given(matrices, st.integers(2, 12), st.data())
def test_solve_mod(A, m, data):
    x = data.draw(st.lists(st.integers(0, m - 1), min_size=len(A), max_size=len(A)))
    rhs = [sum(x[i] * A[i][j] for i in range(len(A))) % m for j in range(len(A[0]))]
    y = solve_mod(smith(A), rhs, m)
    assert y is not None
    assert [sum(y[i] * A[i][j] for i in range(len(A))) % m for j in range(len(A[0]))] == rhs


def test_solve_mod_unsolvable():
    assert solve_mod(smith([[2]]), [1], 4) is None


def test_invariant_factor_normalization():
    assert invariant_factors([2, 3]) == (6,)
    assert invariant_factors([2, 4, 1, 2]) == (2, 2, 4)
    assert group_from_diagonal(1, [1, 6, 4]) == AbelianGroup(1, (2, 12))
    assert str(AbelianGroup(2, (2, 2))) == "Z^2 + Z_2 + Z_2"
    assert str(AbelianGroup(0)) == "0"
