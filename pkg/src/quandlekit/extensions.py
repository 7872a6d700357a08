"""Abelian and dynamical extensions of quandles, and reading cocycles back off a covering.

Pairs (a, x) in S x X are flattened to ``a * |X| + x``.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Sequence

from .canonical import are_isomorphic
from .cohomology import CocycleTable, is_cocycle
from .quandle import CayleyTable, _rows, is_homomorphism, verify_quandle

SECTION_SEARCH_MAX_FIBER = 4
SECTION_SEARCH_MAX_BASE = 8


class ExtensionError(ValueError):
    pass


def projection(n_base: int, n_fiber: int) -> list[int]:
    return [e % n_base for e in range(n_base * n_fiber)]


def abelian_extension(x, m: int, phi: CocycleTable) -> CayleyTable:
    """E(X, Z_m, phi): (a1, x1) * (a2, x2) = (a1 + phi(x1, x2), x1 * x2)."""
    T = _rows(x)
    n = len(T)
    if phi.degree != 2 or phi.modulus != m or phi.n != n:
        raise ExtensionError("cocycle shape does not match the base and modulus")
    check = is_cocycle(x, phi)
    if not check:
        raise ExtensionError(f"not a 2-cocycle: {check.condition} fails at {check.witness}")

    def op(i, j):
        a1, x1 = divmod(i, n)
        x2 = j % n
        return ((a1 + phi(x1, x2)) % m) * n + T[x1][x2]

    return verify_quandle(CayleyTable.from_function(m * n, op))


def _fibers(e, x, p):
    E, X = _rows(e), _rows(x)
    if len(p) != len(E) or any(not 0 <= v < len(X) for v in p):
        raise ExtensionError("map has the wrong shape")
    if not is_homomorphism(E, X, p):
        raise ExtensionError("map is not a homomorphism")
    fibers = [[] for _ in X]
    for i, v in enumerate(p):
        fibers[v].append(i)
    sizes = {len(f) for f in fibers}
    if 0 in sizes:
        raise ExtensionError("map is not surjective")
    if len(sizes) != 1:
        raise ExtensionError(f"fibers have unequal sizes {sorted(sizes)}")
    return fibers


def _read_shift(E, X, p, label, m, x1, x2, fibers):
    """The constant c with label(e1 * e2) = label(e1) + c over the fibers of x1, x2, or None."""
    shift = None
    for e1 in fibers[x1]:
        for e2 in fibers[x2]:
            c = (label[E[e1][e2]] - label[e1]) % m
            if shift is None:
                shift = c
            elif c != shift:
                return None
    return shift


def extract_cocycle(e, x, p: Sequence[int], section: Sequence[int] | None = None) -> CocycleTable:
    """phi with e ≅ E(x, Z_m, phi) along ``p``; ``section[i]`` is the Z_m label of element i.

    Without a section, every labeling of the fibers is tried (first success in
    lexicographic order), for fibers of size <= 4 over bases of order <= 8.
    """
    E, X = _rows(e), _rows(x)
    fibers = _fibers(e, x, p)
    n, m = len(X), len(fibers[0])
    if section is None:
        section = find_section(e, x, p)
        if section is None:
            raise ExtensionError("no fiber labeling presents the covering as an abelian extension")
    label = [v % m for v in section]
    for f in fibers:
        if sorted(label[i] for i in f) != list(range(m)):
            raise ExtensionError("section is not a bijection on every fiber")
    vals = {}
    for x1, x2 in product(range(n), repeat=2):
        c = _read_shift(E, X, p, label, m, x1, x2, fibers)
        if c is None:
            raise ExtensionError(f"fiber shift over ({x1},{x2}) depends on the fiber coordinates")
        vals[(x1, x2)] = c
    phi = CocycleTable(n, 2, m, vals)
    check = is_cocycle(x, phi)
    if not check:
        raise AssertionError(f"extracted function is not a cocycle: {check.condition} at {check.witness}")
    return phi


def find_section(e, x, p: Sequence[int]) -> list[int] | None:
    E, X = _rows(e), _rows(x)
    fibers = _fibers(e, x, p)
    n, m = len(X), len(fibers[0])
    if m > SECTION_SEARCH_MAX_FIBER or n > SECTION_SEARCH_MAX_BASE:
        raise ExtensionError("section search is limited to fibers of size <= 4 over bases of order <= 8")
    label = [-1] * len(E)
    # the least element of each fiber is labeled 0; translating a fiber's labels
    # only changes phi by a coboundary
    options = [[(0,) + rest for rest in permutations(range(1, m))] for _ in range(n)]

    def consistent(k):
        for x1 in range(k + 1):
            for x2 in range(k + 1):
                if X[x1][x2] <= k and _read_shift(E, X, p, label, m, x1, x2, fibers) is None:
                    return False
        return True

    def rec(k):
        if k == n:
            return True
        for opt in options[k]:
            for i, v in zip(fibers[k], opt):
                label[i] = v
            if consistent(k) and rec(k + 1):
                return True
        for i in fibers[k]:
            label[i] = -1
        return False

    return list(label) if rec(0) else None


# dynamical cocycles ----------------------------------------------------------

@dataclass(frozen=True)
class DynamicalCocycle:
    """alpha[x][y][a][b] = alpha_{x,y}(a, b) on a fiber S = {0..s-1}."""

    base: CayleyTable
    s: int
    alpha: tuple

    @classmethod
    def from_function(cls, base: CayleyTable, s: int, f) -> "DynamicalCocycle":
        n = base.order
        alpha = tuple(tuple(tuple(tuple(f(x, y, a, b) for b in range(s)) for a in range(s))
                            for y in range(n)) for x in range(n))
        return cls(base, s, alpha)

    def __call__(self, x, y, a, b):
        return self.alpha[x][y][a][b]


def dynamical_violations(alpha: DynamicalCocycle, limit: int = 1) -> list[tuple[str, tuple[int, ...]]]:
    T = alpha.base.rows
    n, s, A = len(T), alpha.s, alpha.alpha
    out = []
    for x in range(n):
        for a in range(s):
            if A[x][x][a][a] != a:
                out.append(("alpha_{x,x}(a,a) = a", (x, a)))
                if len(out) >= limit:
                    return out
    for x, y in product(range(n), repeat=2):
        for b in range(s):
            if len({A[x][y][a][b] for a in range(s)}) != s:
                out.append(("alpha_{x,y}(-,b) bijective", (x, y, b)))
                if len(out) >= limit:
                    return out
    for x, y, z in product(range(n), repeat=3):
        left, right = A[T[x][y]][z], A[T[x][z]][T[y][z]]
        axy, axz, ayz = A[x][y], A[x][z], A[y][z]
        for a, b, c in product(range(s), repeat=3):
            if left[axy[a][b]][c] != right[axz[a][c]][ayz[b][c]]:
                out.append(("self-distributivity of alpha", (x, y, z, a, b, c)))
                if len(out) >= limit:
                    return out
    return out


def dynamical_extension(x, alpha: DynamicalCocycle) -> CayleyTable:
    """S x_alpha X: (a, x) * (b, y) = (alpha_{x,y}(a, b), x * y)."""
    T = _rows(x)
    if T != alpha.base.rows:
        raise ExtensionError("cocycle is defined over a different base")
    bad = dynamical_violations(alpha)
    if bad:
        cond, wit = bad[0]
        raise ExtensionError(f"dynamical cocycle condition '{cond}' fails at {wit}")
    n, s = len(T), alpha.s

    def op(i, j):
        a, x1 = divmod(i, n)
        b, x2 = divmod(j, n)
        return alpha.alpha[x1][x2][a][b] * n + T[x1][x2]

    return verify_quandle(CayleyTable.from_function(s * n, op))


def abelian_as_dynamical(x, phi: CocycleTable) -> DynamicalCocycle:
    m = phi.modulus
    return DynamicalCocycle.from_function(x if isinstance(x, CayleyTable) else CayleyTable(x), m,
                                          lambda x1, x2, a, b: (a + phi(x1, x2)) % m)


def fibration_to_dynamical(e, x, p: Sequence[int]) -> DynamicalCocycle:
    """Label each fiber by the order of its elements and read alpha off the operation."""
    E = _rows(e)
    base = x if isinstance(x, CayleyTable) else CayleyTable(x)
    fibers = _fibers(e, base, p)
    s = len(fibers[0])
    label = [0] * len(E)
    for f in fibers:
        for k, i in enumerate(f):
            label[i] = k
    alpha = DynamicalCocycle.from_function(base, s, lambda x1, x2, a, b: label[E[fibers[x1][a]][fibers[x2][b]]])
    bad = dynamical_violations(alpha)
    if bad:
        raise AssertionError(f"read-off cocycle violates '{bad[0][0]}' at {bad[0][1]}")
    if are_isomorphic(dynamical_extension(base, alpha), e) is None:
        raise AssertionError("rebuilt extension is not isomorphic to the covering")
    return alpha


def search_dynamical_cocycles(x, s: int) -> Iterator[DynamicalCocycle]:
    """Every dynamical cocycle over ``x`` with fiber size ``s``, by backtracking over the pairs (x, y)."""
    base = x if isinstance(x, CayleyTable) else CayleyTable(x)
    T = base.rows
    n = len(T)
    perms = list(permutations(range(s)))
    # a choice for alpha_{x,y} is one permutation a -> alpha(a, b) per b
    choices = [tuple(zip(*cols)) for cols in product(perms, repeat=s)]
    pairs = list(product(range(n), repeat=2))
    pos = {pr: k for k, pr in enumerate(pairs)}
    A: list = [[None] * n for _ in range(n)]
    triples_at = [[] for _ in pairs]
    for tx, ty, tz in product(range(n), repeat=3):
        keys = [(T[tx][ty], tz), (tx, ty), (T[tx][tz], T[ty][tz]), (tx, tz), (ty, tz)]
        triples_at[max(pos[k] for k in keys)].append((tx, ty, tz))

    def ok(k):
        for tx, ty, tz in triples_at[k]:
            left, right = A[T[tx][ty]][tz], A[T[tx][tz]][T[ty][tz]]
            axy, axz, ayz = A[tx][ty], A[tx][tz], A[ty][tz]
            for a, b, c in product(range(s), repeat=3):
                if left[axy[a][b]][c] != right[axz[a][c]][ayz[b][c]]:
                    return False
        return True

    def rec(k):
        if k == len(pairs):
            yield DynamicalCocycle(base, s, tuple(tuple(r) for r in A))
            return
        px, py = pairs[k]
        for ch in choices:
            if px == py and any(ch[a][a] != a for a in range(s)):
                continue
            A[px][py] = ch
            if ok(k):
                yield from rec(k + 1)
        A[px][py] = None

    yield from rec(0)
