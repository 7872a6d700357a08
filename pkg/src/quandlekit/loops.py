"""Quasigroups, loops, Moufang identities, and the loops built from distributive quasigroups."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import lcm
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .canonical import are_isomorphic
from .quandle import CayleyTable, _rows, is_latin, is_left_distributive, is_medial, is_right_distributive, verify_quandle

DATA_DIR = Path(__file__).parent / "data"
TOYODA_MAX = 15


class QuasigroupError(ValueError):
    pass


def _lrows(t):
    return _rows(t.table if isinstance(t, Loop) else t)


def quasigroup_violations(t) -> list[tuple[str, int]]:
    T = _lrows(t)
    n = len(T)
    out = []
    for a in range(n):
        if len(set(T[a])) != n:
            out.append(("row not a permutation", a))
    for b in range(n):
        if len({T[a][b] for a in range(n)}) != n:
            out.append(("column not a permutation", b))
    return out


def validate_quasigroup(t) -> CayleyTable:
    table = t if isinstance(t, CayleyTable) else CayleyTable(t)
    bad = quasigroup_violations(table)
    if bad:
        what, i = bad[0]
        raise QuasigroupError(f"not a quasigroup: {what} ({i})")
    return table.with_kind("quasigroup")


def is_quasigroup(t) -> bool:
    return not quasigroup_violations(t)


def find_identity(q) -> int | None:
    T = _lrows(q)
    n = len(T)
    for e in range(n):
        if all(T[e][x] == x and T[x][e] == x for x in range(n)):
            return e
    return None


@dataclass(frozen=True)
class Loop:
    table: CayleyTable
    identity: int

    def __post_init__(self):
        validate_quasigroup(self.table)
        if find_identity(self.table) != self.identity:
            raise QuasigroupError(f"{self.identity} is not a two-sided identity")

    @classmethod
    def from_table(cls, t) -> "Loop":
        q = validate_quasigroup(t)
        e = find_identity(q)
        if e is None:
            raise QuasigroupError("quasigroup has no identity")
        return cls(q.with_kind("loop"), e)

    @property
    def order(self) -> int:
        return self.table.order

    def __call__(self, a, b):
        return self.table.rows[a][b]


class Distributivity(NamedTuple):
    left: bool
    right: bool


def distributivity_flags(q) -> Distributivity:
    q = validate_quasigroup(q)
    flags = Distributivity(is_left_distributive(q), is_right_distributive(q))
    if flags.right:
        # (x*x)*x = (x*x)*(x*x) and cancellation force idempotency
        verify_quandle(q)
    return flags


# identities -----------------------------------------------------------------------

class IdentityCheck(NamedTuple):
    holds: bool
    witness: tuple[int, int, int] | None

    def __bool__(self):
        return self.holds


class MoufangReport(NamedTuple):
    id1: IdentityCheck
    id2: IdentityCheck
    id3: IdentityCheck

    @property
    def all(self) -> bool:
        return bool(self.id1 and self.id2 and self.id3)

    @property
    def consistent(self) -> bool:
        return bool(self.id1) == bool(self.id2) == bool(self.id3)


def _grid(n):
    return np.ix_(np.arange(n), np.arange(n), np.arange(n))


def _first(mask) -> IdentityCheck:
    bad = np.argwhere(mask)
    if len(bad) == 0:
        return IdentityCheck(True, None)
    return IdentityCheck(False, tuple(int(v) for v in bad[0]))


def moufang_check(loop) -> MoufangReport:
    """The three Moufang identities, each with its lexicographically least failing (x, y, z)."""
    T = np.asarray(_lrows(loop), dtype=np.int64)
    x, y, z = _grid(len(T))
    id1 = T[x, T[y, T[x, z]]] != T[T[T[x, y], x], z]
    id2 = T[z, T[x, T[y, x]]] != T[T[T[z, x], y], x]
    id3 = T[T[x, y], T[z, x]] != T[T[x, T[y, z]], x]
    return MoufangReport(_first(id1), _first(id2), _first(id3))


def associativity_witness(t) -> tuple[int, int, int] | None:
    """Least (x, y, z) with (x*y)*z != x*(y*z), or None."""
    T = np.asarray(_lrows(t), dtype=np.int64)
    x, y, z = _grid(len(T))
    return _first(T[T[x, y], z] != T[x, T[y, z]]).witness


def is_associative(t) -> bool:
    return associativity_witness(t) is None


def is_commutative(t) -> bool:
    T = np.asarray(_lrows(t))
    return bool((T == T.T).all())


def element_order(loop: Loop, x: int) -> int:
    """Least k with x^k = e, powers taken as ((x*x)*x)*...."""
    T, e = loop.table.rows, loop.identity
    p, k = x, 1
    while p != e:
        p = T[p][x]
        k += 1
        if k > loop.order:
            raise ValueError("element has no finite order under left-nested powers")
    return k


def exponent(loop: Loop) -> int:
    return lcm(*(element_order(loop, x) for x in range(loop.order)))


def generated_submagma(t, gens) -> list[int]:
    T = _lrows(t)
    elems = sorted(set(gens))
    seen = set(elems)
    frontier = list(elems)
    while frontier:
        new = []
        for a in frontier:
            for b in list(seen):
                for c in (T[a][b], T[b][a]):
                    if c not in seen:
                        seen.add(c)
                        new.append(c)
        frontier = new
    return sorted(seen)


def moufang_theorem_sample(loop: Loop, samples: int = 100, seed: int = 0) -> list[tuple[tuple[int, int, int], int]]:
    """Sample associating triples and check that each generates an associative subloop.

    Returns the checked triples with the size of the subloop they generate;
    raises AssertionError on a counterexample.
    """
    T = loop.table.rows
    rng = random.Random(seed)
    n = loop.order
    out = []
    while len(out) < samples:
        a, b, c = rng.randrange(n), rng.randrange(n), rng.randrange(n)
        if T[T[a][b]][c] != T[a][T[b][c]]:
            continue
        sub = generated_submagma(loop.table, (a, b, c))
        for x, y, z in product(sub, repeat=3):
            if T[T[x][y]][z] != T[x][T[y][z]]:
                raise AssertionError(f"triple {(a, b, c)} associates but its subloop does not")
        out.append(((a, b, c), len(sub)))
    return out


class ThreeConditions(NamedTuple):
    commutative_loop: bool
    condition2: bool
    halving_automorphism: bool
    associative: bool


def three_conditions(loop: Loop) -> ThreeConditions:
    """The magma conditions: commutative loop; (x+y)+(z+z) = (x+z)+(y+z); x -> x+x an automorphism onto."""
    T = np.asarray(loop.table.rows, dtype=np.int64)
    n = len(T)
    x, y, z = _grid(n)
    d = T[np.arange(n), np.arange(n)]
    cond2 = bool((T[T[x, y], d[z]] == T[T[x, z], T[y, z]]).all())
    xs, ys = np.ix_(np.arange(n), np.arange(n))
    doubling_ok = len(set(d.tolist())) == n and bool((d[T[xs, ys]] == T[d[xs], d[ys]]).all())
    return ThreeConditions(is_commutative(T) and loop.identity is not None, cond2, doubling_ok,
                           associativity_witness(T) is None)


# constructions -------------------------------------------------------------------

def belousov_loop(q, a: int) -> Loop:
    """x + y = R_a^-1(x) * L_a^-1(y); the identity is a*a, which is a when q is idempotent."""
    q = validate_quasigroup(q)
    T = q.rows
    n = len(T)
    r_inv = [0] * n
    l_inv = [0] * n
    for x in range(n):
        r_inv[T[x][a]] = x
        l_inv[T[a][x]] = x
    rows = tuple(tuple(T[r_inv[x]][l_inv[y]] for y in range(n)) for x in range(n))
    e = T[a][a]
    loop = Loop(CayleyTable(rows, "loop"), e)
    for x in range(n):
        for y in range(n):
            if rows[T[x][a]][T[a][y]] != T[x][y]:
                raise AssertionError("R_a(x) + L_a(y) != x*y")
    flags = distributivity_flags(q)
    if flags.left and flags.right:
        if not is_commutative(rows):
            raise AssertionError("loop of a distributive quasigroup is not commutative")
        if not moufang_check(loop).all:
            raise AssertionError("loop of a distributive quasigroup is not Moufang")
    return loop


def zassenhaus81() -> Loop:
    """Commutative Moufang loop on (Z_3)^4, coordinates in mixed radix with x_0 most significant.

    x + y = (x0 + y0 + (x1 - y1)(x2 y3 - x3 y2), x1 + y1, x2 + y2, x3 + y3).
    """
    pts = list(product(range(3), repeat=4))
    index = {p: i for i, p in enumerate(pts)}

    def add(x, y):
        return index[((x[0] + y[0] + (x[1] - y[1]) * (x[2] * y[3] - x[3] * y[2])) % 3,
                      (x[1] + y[1]) % 3, (x[2] + y[2]) % 3, (x[3] + y[3]) % 3)]

    rows = tuple(tuple(add(x, y) for y in pts) for x in pts)
    return Loop(CayleyTable(rows, "loop"), 0)


def random_loop(n: int, rng: random.Random) -> Loop:
    """A random loop on {0..n-1} with identity 0, by randomized backtracking."""
    rows = [[-1] * n for _ in range(n)]
    for i in range(n):
        rows[0][i] = i
        rows[i][0] = i
    cells = [(i, j) for i in range(1, n) for j in range(1, n)]

    def rec(k):
        if k == len(cells):
            return True
        i, j = cells[k]
        vals = [v for v in range(n) if v not in rows[i] and all(rows[r][j] != v for r in range(n))]
        rng.shuffle(vals)
        for v in vals:
            rows[i][j] = v
            if rec(k + 1):
                return True
        rows[i][j] = -1
        return False

    rec(0)
    return Loop(CayleyTable(tuple(map(tuple, rows)), "loop"), 0)


def find_non_moufang_loop(n: int = 5, seed: int = 0) -> Loop:
    rng = random.Random(seed)
    while True:
        loop = random_loop(n, rng)
        if not moufang_check(loop).all:
            return loop


def load_loop(name: str) -> Loop:
    from .io import read_table

    return Loop.from_table(read_table(DATA_DIR / name))


# Toyoda ------------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _alexander_classes(n):
    from .enumeration import alexander_classes

    return alexander_classes(n)


class ToyodaWitness(NamedTuple):
    group: object
    automorphism: object
    isomorphism: object


def toyoda_witness(q: CayleyTable) -> ToyodaWitness | None:
    """An Alexander quandle isomorphic to the Latin quandle q, with the isomorphism, or None."""
    if not is_latin(q):
        raise ValueError("quandle is not Latin")
    if q.order > TOYODA_MAX:
        raise ValueError(f"order {q.order} exceeds {TOYODA_MAX}")
    medial = is_medial(q)
    from .constructions import alexander

    for cls in _alexander_classes(q.order):
        if are_isomorphic(q, cls.table) is not None:
            if not medial:
                raise AssertionError("a non-medial Latin quandle matched an Alexander quandle")
            m, t = cls.sources[0]
            return ToyodaWitness(m, t, are_isomorphic(q, alexander(m, t)))
    if medial:
        raise AssertionError("a medial Latin quandle has no Alexander match")
    return None
