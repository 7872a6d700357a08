"""Rack and quandle chain complexes, homology, and cocycles with Z_m coefficients.

The boundary of an n-tuple is

    d(x_1..x_n) = sum_{i=2..n} (-1)^i [ (x_1..^x_i..x_n)
                                        - (x_1*x_i, .., x_{i-1}*x_i, x_{i+1}, .., x_n) ].

The quandle complex is the quotient by the degenerate tuples (some
x_i = x_{i+1}); its basis is the non-degenerate tuples in lexicographic order.
A degree-n cocycle is a function on basis tuples with ``phi o d_{n+1} = 0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import gcd, prod
from typing import Callable, NamedTuple, Sequence

from .quandle import _rows
from .smith import AbelianGroup, SmithResult, group_from_diagonal, invariant_factors, rank_and_divisors, smith, solve_mod

CHAIN_BOUND = 10**6
THEORIES = ("rack", "quandle")


class ResourceBoundError(RuntimeError):
    pass


def _degenerate(t):
    return any(t[i] == t[i + 1] for i in range(len(t) - 1))


def chain_basis(n_elems: int, degree: int, theory: str = "quandle") -> list[tuple[int, ...]]:
    if theory not in THEORIES:
        raise ValueError(f"theory must be one of {THEORIES}")
    if degree < 0:
        return []
    if n_elems ** degree > CHAIN_BOUND:
        raise ResourceBoundError(f"|X|^{degree} = {n_elems ** degree} exceeds {CHAIN_BOUND}")
    tuples = list(product(range(n_elems), repeat=degree))
    if theory == "quandle":
        tuples = [t for t in tuples if not _degenerate(t)]
    return tuples


def boundary_of(T, t: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """d(t) in the rack complex, as {tuple: coefficient} with zero terms removed."""
    out: dict[tuple[int, ...], int] = {}
    n = len(t)
    for i in range(1, n):
        sign = 1 if i % 2 == 1 else -1  # (-1)^(i+1) for the 0-based position i
        xi = t[i]
        a = t[:i] + t[i + 1:]
        b = tuple(T[x][xi] for x in t[:i]) + t[i + 1:]
        out[a] = out.get(a, 0) + sign
        out[b] = out.get(b, 0) - sign
    return {k: v for k, v in out.items() if v}


@dataclass
class BoundaryMatrix:
    """Matrix of d_n: C_n -> C_{n-1}; ``columns[j]`` is the boundary of ``source[j]``."""

    degree: int
    theory: str
    source: list[tuple[int, ...]]
    target: list[tuple[int, ...]]
    columns: list[dict[int, int]]

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target), len(self.source)

    def dense(self) -> list[list[int]]:
        M = [[0] * len(self.source) for _ in self.target]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                M[i][j] = v
        return M

    def entry(self, target: tuple[int, ...], source: tuple[int, ...]) -> int:
        i = self.target.index(tuple(target))
        j = self.source.index(tuple(source))
        return self.columns[j].get(i, 0)

    def apply(self, chain: dict[tuple[int, ...], int]) -> dict[tuple[int, ...], int]:
        pos = {s: j for j, s in enumerate(self.source)}
        out: dict[tuple[int, ...], int] = {}
        for s, c in chain.items():
            for i, v in self.columns[pos[tuple(s)]].items():
                out[self.target[i]] = out.get(self.target[i], 0) + c * v
        return {k: v for k, v in out.items() if v}


def boundary_matrix(q, n: int, theory: str = "quandle") -> BoundaryMatrix:
    T = _rows(q)
    k = len(T)
    source = chain_basis(k, n, theory)
    target = chain_basis(k, n - 1, theory) if n >= 1 else []
    if n <= 1:
        return BoundaryMatrix(n, theory, source, target, [{} for _ in source])
    pos = {t: i for i, t in enumerate(target)}
    columns = []
    for s in source:
        col: dict[int, int] = {}
        for t, v in boundary_of(T, s).items():
            if t in pos:  # degenerate terms vanish in the quotient
                i = pos[t]
                nv = col.get(i, 0) + v
                if nv:
                    col[i] = nv
                else:
                    col.pop(i, None)
        columns.append(col)
    return BoundaryMatrix(n, theory, source, target, columns)


def compose_is_zero(d_low: BoundaryMatrix, d_high: BoundaryMatrix) -> bool:
    """Whether d_{n-1} d_n vanishes."""
    for col in d_high.columns:
        acc: dict[int, int] = {}
        for i, v in col.items():
            for k, w in d_low.columns[i].items():
                acc[k] = acc.get(k, 0) + v * w
        if any(acc.values()):
            return False
    return True


def homology(q, n: int, theory: str = "quandle") -> AbelianGroup:
    """H_n = ker d_n / im d_{n+1} over Z."""
    if n < 0:
        raise ValueError("degree must be non-negative")
    dn = boundary_matrix(q, n, theory)
    dn1 = boundary_matrix(q, n + 1, theory)
    rank_n, _ = rank_and_divisors(dn.columns, len(dn.target))
    rank_n1, tors = rank_and_divisors(dn1.columns, len(dn1.target))
    return group_from_diagonal(len(dn.source) - rank_n - rank_n1, tors)


# cochains -----------------------------------------------------------------

@dataclass
class CocycleTable:
    """A Z_m-valued function on X^degree; unspecified tuples are 0."""

    n: int
    degree: int
    modulus: int
    values: dict[tuple[int, ...], int] = field(default_factory=dict)

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")
        clean = {}
        for k, v in self.values.items():
            k = tuple(int(x) for x in k)
            if len(k) != self.degree or any(not 0 <= x < self.n for x in k):
                raise ValueError(f"bad cocycle argument {k}")
            if v % self.modulus:
                clean[k] = v % self.modulus
        self.values = clean

    def __call__(self, *args) -> int:
        return self.values.get(tuple(args), 0)

    def __eq__(self, other):
        return (isinstance(other, CocycleTable) and (self.n, self.degree, self.modulus, self.values)
                == (other.n, other.degree, other.modulus, other.values))

    def __add__(self, other: "CocycleTable") -> "CocycleTable":
        self._same_shape(other)
        vals = dict(self.values)
        for k, v in other.values.items():
            vals[k] = vals.get(k, 0) + v
        return CocycleTable(self.n, self.degree, self.modulus, vals)

    def __neg__(self):
        return CocycleTable(self.n, self.degree, self.modulus, {k: -v for k, v in self.values.items()})

    def __sub__(self, other):
        return self + (-other)

    def _same_shape(self, other):
        if (self.n, self.degree, self.modulus) != (other.n, other.degree, other.modulus):
            raise ValueError("cochains of different shape")

    @classmethod
    def zero(cls, n, degree, modulus):
        return cls(n, degree, modulus, {})

    @classmethod
    def from_function(cls, n, degree, modulus, f: Callable[..., int]):
        return cls(n, degree, modulus, {t: f(*t) for t in product(range(n), repeat=degree)})

    @classmethod
    def characteristic_sum(cls, n, modulus, support: Sequence[Sequence[int]]):
        """Sum of characteristic functions chi_t over the given tuples."""
        support = [tuple(t) for t in support]
        degree = len(support[0]) if support else 2
        vals: dict = {}
        for t in support:
            vals[t] = vals.get(t, 0) + 1
        return cls(n, degree, modulus, vals)

    def vector(self, basis: Sequence[tuple[int, ...]]) -> list[int]:
        return [self.values.get(t, 0) for t in basis]

    @classmethod
    def from_vector(cls, n, degree, modulus, basis, vec):
        return cls(n, degree, modulus, {t: v for t, v in zip(basis, vec)})


class CocycleCheck(NamedTuple):
    ok: bool
    witness: tuple[int, ...] | None
    condition: str | None

    def __bool__(self):
        return self.ok


def is_cocycle(q, c: CocycleTable) -> CocycleCheck:
    """Exhaustive check of the cocycle identity and the degeneracy conditions."""
    T = _rows(q)
    n = len(T)
    m = c.modulus
    if c.n != n:
        raise ValueError("cocycle and quandle have different orders")
    f = c.values.get
    if c.degree == 2:
        for x in range(n):
            if f((x, x), 0):
                return CocycleCheck(False, (x, x), "phi(x,x) = 0")
        for x, y, z in product(range(n), repeat=3):
            lhs = f((x, y), 0) + f((T[x][y], z), 0)
            rhs = f((x, z), 0) + f((T[x][z], T[y][z]), 0)
            if (lhs - rhs) % m:
                return CocycleCheck(False, (x, y, z), "phi(x,y)+phi(x*y,z) = phi(x,z)+phi(x*z,y*z)")
        return CocycleCheck(True, None, None)
    if c.degree == 3:
        for x, y in product(range(n), repeat=2):
            if f((x, x, y), 0):
                return CocycleCheck(False, (x, x, y), "psi(x,x,y) = 0")
            if f((x, y, y), 0):
                return CocycleCheck(False, (x, y, y), "psi(x,y,y) = 0")
        for x, y, z, w in product(range(n), repeat=4):
            xz, yz, xw, yw, zw = T[x][z], T[y][z], T[x][w], T[y][w], T[z][w]
            lhs = f((x, y, z), 0) + f((x, z, w), 0) + f((xz, yz, w), 0)
            rhs = f((T[x][y], z, w), 0) + f((xw, yw, zw), 0) + f((x, y, w), 0)
            if (lhs - rhs) % m:
                return CocycleCheck(False, (x, y, z, w), "3-cocycle identity")
        return CocycleCheck(True, None, None)
    raise ValueError("only degrees 2 and 3 are supported")


def coboundary(q, lam: CocycleTable) -> CocycleTable:
    """delta(lam) = lam o d, a cochain one degree higher."""
    T = _rows(q)
    n = len(T)
    vals: dict = {}
    for t in product(range(n), repeat=lam.degree + 1):
        s = sum(lam.values.get(k, 0) * v for k, v in boundary_of(T, t).items())
        if s % lam.modulus:
            vals[t] = s
    return CocycleTable(n, lam.degree + 1, lam.modulus, vals)


# cocycle spaces -------------------------------------------------------------

def _smith_of(bm: BoundaryMatrix) -> SmithResult:
    return smith(bm.dense(), len(bm.source))


@dataclass
class CocycleSpace:
    degree: int
    modulus: int
    basis: list[tuple[int, ...]]
    cocycles: list[CocycleTable]
    coboundaries: list[CocycleTable]
    cocycle_count: int
    coboundary_count: int
    quotient: tuple[int, ...]

    @property
    def quotient_order(self) -> int:
        return prod(self.quotient)


def _generators_to_tables(n, degree, m, basis, rows):
    seen = set()
    out = []
    for r in rows:
        v = tuple(x % m for x in r)
        if any(v) and v not in seen:
            seen.add(v)
            out.append(CocycleTable(n, degree, m, dict(zip(basis, v))))
    return out


def cocycle_space(q, degree: int, m: int) -> CocycleSpace:
    """Quandle cocycles Z^n, coboundaries B^n and H^n = Z^n/B^n with Z_m coefficients."""
    if degree not in (2, 3):
        raise ValueError("degree must be 2 or 3")
    if m < 2:
        raise ValueError("modulus must be at least 2")
    n = len(_rows(q))
    up = boundary_matrix(q, degree + 1, "quandle")
    down = boundary_matrix(q, degree, "quandle")
    basis = up.target
    su = _smith_of(up)
    rows_u = len(basis)
    # Z^n: x with x . d_{n+1} = 0 (mod m); with U d V = D these are x = xi U, xi_i d_i = 0.
    zgens = []
    zcount = 1
    for i in range(rows_u):
        if i < su.rank:
            g = gcd(su.diagonal[i], m)
            zgens.append([(m // g) * v for v in su.U[i]])
            zcount *= g
        else:
            zgens.append(list(su.U[i]))
            zcount *= m
    # B^n: the row span of d_n (mod m).
    dense_down = down.dense()
    bgens = dense_down
    bcount = 1
    sd = smith(dense_down, len(down.source), transforms=False)
    for d in sd.diagonal:
        bcount *= m // gcd(d, m)
    # H^n by universal coefficients: Hom(H_n, Z_m) + Ext(H_{n-1}, Z_m).
    hn = homology(q, degree, "quandle")
    hn1 = homology(q, degree - 1, "quandle")
    orders = [m] * hn.rank + [gcd(t, m) for t in hn.torsion] + [gcd(t, m) for t in hn1.torsion]
    quotient = invariant_factors(orders)
    if zcount % bcount or zcount // bcount != prod(quotient):
        raise AssertionError(f"|Z|/|B| = {zcount}/{bcount} disagrees with the universal coefficient count {prod(quotient)}")
    return CocycleSpace(
        degree, m, basis,
        _generators_to_tables(n, degree, m, basis, zgens),
        _generators_to_tables(n, degree, m, basis, bgens),
        zcount, bcount, quotient,
    )


def is_coboundary(q, c: CocycleTable) -> CocycleTable | None:
    """A cochain lam one degree lower with delta(lam) = c, or None."""
    down = boundary_matrix(q, c.degree, "quandle")
    res = _smith_of(down)
    rhs = c.vector(down.source)
    if any(t not in set(down.source) for t in c.values):
        return None  # nonzero on a degenerate tuple
    x = solve_mod(res, rhs, c.modulus)
    if x is None:
        return None
    return CocycleTable(c.n, c.degree - 1, c.modulus, dict(zip(down.target, x)))


def cohomologous(q, a: CocycleTable, b: CocycleTable) -> bool:
    return is_coboundary(q, a - b) is not None
