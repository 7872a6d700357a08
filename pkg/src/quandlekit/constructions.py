"""Concrete quandle, quasigroup and group tables.

Every constructor returns a table that has been checked against the axioms of
its kind, so no unverified table leaves this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from math import gcd, prod
from typing import Sequence

from .permgroups import Permutation, _compose
from .quandle import CayleyTable, is_medial, is_latin, verify_quandle


# abelian groups -------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroupSpec:
    """Z_{d_0} x ... x Z_{d_k}, elements encoded in mixed radix (first coordinate most significant)."""

    cyclic_orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.cyclic_orders)
        object.__setattr__(self, "cyclic_orders", orders)
        if any(d < 1 for d in orders):
            raise ValueError(f"cyclic orders must be positive: {orders}")

    @classmethod
    def cyclic(cls, n: int) -> "AbelianGroupSpec":
        return cls((n,))

    @property
    def size(self) -> int:
        return prod(self.cyclic_orders)

    @property
    def rank(self) -> int:
        return len(self.cyclic_orders)

    def encode(self, coords: Sequence[int]) -> int:
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates")
        idx = 0
        for c, d in zip(coords, self.cyclic_orders):
            idx = idx * d + c % d
        return idx

    def decode(self, index: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.cyclic_orders):
            out.append(index % d)
            index //= d
        return tuple(reversed(out))

    def element(self, x) -> int:
        """Accept an index or a coordinate tuple."""
        if isinstance(x, int):
            if not 0 <= x < self.size:
                raise ValueError(f"element {x} out of range")
            return x
        return self.encode(tuple(x))

    def add(self, x: int, y: int) -> int:
        return self.encode([a + b for a, b in zip(self.decode(x), self.decode(y))])

    def neg(self, x: int) -> int:
        return self.encode([-a for a in self.decode(x)])

    def scale(self, k: int, x: int) -> int:
        return self.encode([k * a for a in self.decode(x)])

    def generator(self, i: int) -> int:
        return self.encode([1 if j == i else 0 for j in range(self.rank)])

    def addition_table(self) -> list[list[int]]:
        n = self.size
        coords = [self.decode(x) for x in range(n)]
        return [[self.encode([a + b for a, b in zip(coords[x], coords[y])]) for y in range(n)] for x in range(n)]

    def exponent_annihilates(self, k: int) -> bool:
        return all(k % d == 0 for d in self.cyclic_orders)


@dataclass(frozen=True)
class AutomorphismSpec:
    """An endomorphism of an AbelianGroupSpec given by an integer matrix on coordinates.

    ``t(x)_i = sum_j matrix[i][j] * x_j  (mod d_i)``.  Construction checks that
    this is well defined on the group and bijective.
    """

    group: AbelianGroupSpec
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        g = self.group
        k = g.rank
        mat = tuple(tuple(int(v) for v in row) for row in self.matrix)
        object.__setattr__(self, "matrix", mat)
        if len(mat) != k or any(len(r) != k for r in mat):
            raise ValueError(f"matrix must be {k}x{k}")
        d = g.cyclic_orders
        for i in range(k):
            for j in range(k):
                if (mat[i][j] * d[j]) % d[i]:
                    raise ValueError(f"matrix entry ({i},{j}) is not well defined on Z_{d[j]} -> Z_{d[i]}")
        images = tuple(self._apply(x) for x in range(g.size))
        if len(set(images)) != g.size:
            raise ValueError("map is not bijective")
        object.__setattr__(self, "_images", images)

    def _apply(self, x: int) -> int:
        c = self.group.decode(x)
        return self.group.encode([sum(m * v for m, v in zip(row, c)) for row in self.matrix])

    @classmethod
    def unit(cls, n: int, t: int) -> "AutomorphismSpec":
        return cls(AbelianGroupSpec.cyclic(n), ((t,),))

    @classmethod
    def identity(cls, group: AbelianGroupSpec) -> "AutomorphismSpec":
        k = group.rank
        return cls(group, tuple(tuple(int(i == j) for j in range(k)) for i in range(k)))

    @classmethod
    def from_generator_images(cls, group: AbelianGroupSpec, images: Sequence[int]) -> "AutomorphismSpec":
        cols = [group.decode(v) for v in images]
        k = group.rank
        return cls(group, tuple(tuple(cols[j][i] for j in range(k)) for i in range(k)))

    @property
    def images(self) -> tuple[int, ...]:
        return self._images

    def __call__(self, x: int) -> int:
        return self._images[x]

    def compose(self, other: "AutomorphismSpec") -> tuple[int, ...]:
        return tuple(self._images[other._images[x]] for x in range(self.group.size))


# groups -------------------------------------------------------------------

def cyclic_group(n: int) -> CayleyTable:
    return CayleyTable.from_function(n, lambda a, b: (a + b) % n, "group")


def abelian_group_table(a: AbelianGroupSpec) -> CayleyTable:
    return CayleyTable(tuple(tuple(r) for r in a.addition_table()), "group")


def group_table_from_permutations(elements: Sequence) -> CayleyTable:
    """Table of a permutation group listed by its elements; ``rows[i][j]`` is ``e_i ∘ e_j``."""
    elems = [e.images if isinstance(e, Permutation) else tuple(e) for e in elements]
    index = {e: i for i, e in enumerate(elems)}
    if len(index) != len(elems):
        raise ValueError("repeated element")
    try:
        rows = tuple(tuple(index[_compose(p, q)] for q in elems) for p in elems)
    except KeyError:
        raise ValueError("elements are not closed under composition") from None
    return CayleyTable(rows, "group")


def symmetric_group(k: int) -> CayleyTable:
    return group_table_from_permutations(sorted(permutations(range(k))))


def group_identity(g) -> int | None:
    T = g.rows
    n = len(T)
    for e in range(n):
        if all(T[e][x] == x and T[x][e] == x for x in range(n)):
            return e
    return None


def is_group(g) -> bool:
    T = g.rows
    n = len(T)
    e = group_identity(g)
    if e is None:
        return False
    if any(e not in r for r in T):
        return False
    return all(T[T[a][b]][c] == T[a][T[b][c]] for a in range(n) for b in range(n) for c in range(n))


def group_inverses(g) -> list[int]:
    e = group_identity(g)
    return [r.index(e) for r in g.rows]


def _require_group(g):
    if not is_group(g):
        raise ValueError("table is not a group")


# quandles ------------------------------------------------------------------

def trivial(n: int) -> CayleyTable:
    if n < 1:
        raise ValueError("order must be at least 1")
    return verify_quandle(CayleyTable.from_function(n, lambda a, b: a))


def dihedral(n: int) -> CayleyTable:
    if n < 1:
        raise ValueError("order must be at least 1")
    return verify_quandle(CayleyTable.from_function(n, lambda a, b: (2 * b - a) % n))


def conjugation(g: CayleyTable) -> CayleyTable:
    """a * b = b a b^-1."""
    _require_group(g)
    T, inv = g.rows, group_inverses(g)
    return verify_quandle(CayleyTable.from_function(len(T), lambda a, b: T[T[b][a]][inv[b]]))


def core(g: CayleyTable) -> CayleyTable:
    """x * y = y x^-1 y."""
    _require_group(g)
    T, inv = g.rows, group_inverses(g)
    return verify_quandle(CayleyTable.from_function(len(T), lambda x, y: T[T[y][inv[x]]][y]))


def _alexander_table(n, add, neg, t):
    return tuple(tuple(add[t[add[x][neg[y]]]][y] for y in range(n)) for x in range(n))


def alexander(m: AbelianGroupSpec, t: AutomorphismSpec, check_medial: bool = True) -> CayleyTable:
    """x * y = t(x - y) + y."""
    if t.group != m:
        raise ValueError("automorphism belongs to a different group")
    add = m.addition_table()
    neg = [m.neg(x) for x in range(m.size)]
    q = verify_quandle(CayleyTable(_alexander_table(m.size, add, neg, t.images)))
    if check_medial and not is_medial(q):
        raise AssertionError("Alexander quandle failed the medial law")
    return q


def alexander_poly(q: int, coeffs: Sequence[int]) -> CayleyTable:
    """Alexander quandle Z_q[T]/(p(T)) with t = multiplication by T.

    ``coeffs`` lists p from the constant term up, ending with the leading 1.
    The element sum c_i T^i has index sum c_i q^i.
    """
    coeffs = [c % q for c in coeffs]
    d = len(coeffs) - 1
    if d < 1 or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic of degree at least 1")
    if gcd(coeffs[0], q) != 1:
        raise ValueError("T is not invertible: the constant term is not a unit")
    size = q ** d

    def decode(x):
        return [(x // q ** i) % q for i in range(d)]

    def encode(c):
        return sum((v % q) * q ** i for i, v in enumerate(c))

    def times_t(c):
        top = c[-1]
        shifted = [0] + c[:-1]
        return [(s - top * coeffs[i]) % q for i, s in enumerate(shifted)]

    t = [encode(times_t(decode(x))) for x in range(size)]
    if len(set(t)) != size:
        raise ValueError("multiplication by T is not bijective")
    add = [[encode([a + b for a, b in zip(decode(x), decode(y))]) for y in range(size)] for x in range(size)]
    neg = [encode([-a for a in decode(x)]) for x in range(size)]
    return verify_quandle(CayleyTable(_alexander_table(size, add, neg, t)))


def homogeneous(g: CayleyTable, h: Sequence[int], phi: Sequence[int]) -> CayleyTable:
    """Quandle on the right cosets Hx with Hx * Hy = H phi(x y^-1) y.

    Cosets are numbered by their least element.  ``phi`` must be a group
    automorphism fixing ``h`` pointwise; well-definedness on cosets is checked
    over every pair of representatives.
    """
    T = g.rows
    n = len(T)
    _require_group(g)
    inv = group_inverses(g)
    hs = sorted(set(h))
    if group_identity(g) not in hs or any(T[a][b] not in hs for a in hs for b in hs):
        raise ValueError("h is not a subgroup")
    if sorted(phi) != list(range(n)) or any(phi[T[a][b]] != T[phi[a]][phi[b]] for a in range(n) for b in range(n)):
        raise ValueError("phi is not a group automorphism")
    if any(phi[x] != x for x in hs):
        raise ValueError("phi does not fix h pointwise")
    coset_of = [-1] * n
    reps = []
    for x in range(n):
        if coset_of[x] < 0:
            for y in hs:
                coset_of[T[y][x]] = len(reps)
            reps.append(x)
    k = len(reps)
    rows = [[-1] * k for _ in range(k)]
    for x in range(n):
        for y in range(n):
            v = coset_of[T[phi[T[x][inv[y]]]][y]]
            cx, cy = coset_of[x], coset_of[y]
            if rows[cx][cy] < 0:
                rows[cx][cy] = v
            elif rows[cx][cy] != v:
                raise ValueError(f"operation not well defined on cosets (representatives {x}, {y})")
    return verify_quandle(CayleyTable(tuple(tuple(r) for r in rows)))


_MU = (2, -1, -1)


def galkin(a: AbelianGroupSpec, c1=0, c2=0) -> CayleyTable:
    """Galkin quandle on Z_3 x A; the pair (x, u) has index x*|A| + u.

    (x,u) * (y,v) = (2y - x, -u + mu(x-y) v + tau(x-y)) with mu = (2,-1,-1)
    and tau = (0, c1, c2).
    """
    s = a.size
    tau = (0, a.element(c1), a.element(c2))
    add = a.addition_table()
    neg = [a.neg(u) for u in range(s)]
    scaled = {k: [a.scale(k, v) for v in range(s)] for k in set(_MU)}

    def op(i, j):
        x, u = divmod(i, s)
        y, v = divmod(j, s)
        d = (x - y) % 3
        second = add[add[neg[u]][scaled[_MU[d]][v]]][tau[d]]
        return ((2 * y - x) % 3) * s + second

    return verify_quandle(CayleyTable.from_function(3 * s, op))


def coxeter_vectors(p: int, dim: int, form: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    def ip(x, y):
        return sum(form[i][j] * x[i] * y[j] for i in range(dim) for j in range(dim)) % p

    return [v for v in product(range(p), repeat=dim) if ip(v, v)]


def coxeter_fp(p: int, form: Sequence[Sequence[int]] | None = None, dim: int = 1) -> CayleyTable:
    """x * y = (2<x,y>/<y,y>) y - x on the vectors of (Z_p)^dim with <v,v> != 0.

    Carrier ordered lexicographically.  ``p`` must be an odd prime.
    """
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    if form is None:
        form = [[int(i == j) for j in range(dim)] for i in range(dim)]
    if len(form) != dim or any(len(r) != dim for r in form):
        raise ValueError("form must be dim x dim")
    if any((form[i][j] - form[j][i]) % p for i in range(dim) for j in range(dim)):
        raise ValueError("form is not symmetric")
    vecs = coxeter_vectors(p, dim, form)
    index = {v: i for i, v in enumerate(vecs)}

    def ip(x, y):
        return sum(form[i][j] * x[i] * y[j] for i in range(dim) for j in range(dim)) % p

    def op(i, j):
        x, y = vecs[i], vecs[j]
        c = 2 * ip(x, y) * pow(ip(y, y), -1, p)
        return index[tuple((c * yy - xx) % p for xx, yy in zip(x, y))]

    return verify_quandle(CayleyTable.from_function(len(vecs), op))


def affine_quasigroup(a: AbelianGroupSpec, f: AutomorphismSpec, g: AutomorphismSpec, c=0) -> CayleyTable:
    """x * y = f(x) + g(y) + c, with f and g commuting automorphisms."""
    if f.group != a or g.group != a:
        raise ValueError("automorphisms belong to a different group")
    if f.compose(g) != g.compose(f):
        raise ValueError("f and g do not commute")
    add = a.addition_table()
    c = a.element(c)
    t = CayleyTable.from_function(a.size, lambda x, y: add[add[f(x)][g(y)]][c], "quasigroup")
    if not is_latin(t):
        raise AssertionError("affine table is not a quasigroup")
    if not is_medial(t):
        raise AssertionError("affine quasigroup failed the medial law")
    return t
