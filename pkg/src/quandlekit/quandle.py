"""Finite Cayley tables and the quandle predicates built on them.

Convention: ``rows[a][b] == a * b``.  Column ``b`` is therefore the right
translation ``R_b`` and row ``a`` the left translation ``L_a``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

from .permgroups import Permutation, PermGroup, generate, orbits

KINDS = ("raw", "quandle", "quasigroup", "loop", "group")
SIMPLE_CHECK_MAX = 8
NELSON_WONG_MAX = 16


class MalformedTableError(ValueError):
    pass


class Violation(NamedTuple):
    axiom: str
    witness: tuple[int, ...]


class QuandleAxiomError(ValueError):
    def __init__(self, violations: Sequence[Violation]):
        self.violations = list(violations)
        first = self.violations[0]
        super().__init__(f"not a quandle: {first.axiom} fails at {first.witness}"
                         + (f" (+{len(self.violations) - 1} more)" if len(self.violations) > 1 else ""))


@dataclass(frozen=True)
class CayleyTable:
    """An ``n x n`` operation table over {0..n-1} with a kind tag."""

    rows: tuple[tuple[int, ...], ...]
    kind: str = "raw"

    def __post_init__(self):
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        n = len(rows)
        if self.kind not in KINDS:
            raise ValueError(f"unknown table kind {self.kind!r}")
        for a, r in enumerate(rows):
            if len(r) != n:
                raise MalformedTableError(f"row {a} has length {len(r)}, expected {n}")
            for b, v in enumerate(r):
                if not 0 <= v < n:
                    raise MalformedTableError(f"entry ({a},{b}) = {v} out of range 0..{n - 1}")

    @classmethod
    def from_function(cls, n: int, op: Callable[[int, int], int], kind: str = "raw") -> "CayleyTable":
        return cls(tuple(tuple(op(a, b) for b in range(n)) for a in range(n)), kind)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], kind: str = "raw") -> "CayleyTable":
        n = len(columns)
        return cls(tuple(tuple(columns[b][a] for b in range(n)) for a in range(n)), kind)

    @property
    def order(self) -> int:
        return len(self.rows)

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, a):
        return self.rows[a]

    def __call__(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def columns(self) -> tuple[tuple[int, ...], ...]:
        n = len(self.rows)
        return tuple(tuple(self.rows[a][b] for a in range(n)) for b in range(n))

    def with_kind(self, kind: str) -> "CayleyTable":
        return CayleyTable(self.rows, kind)

    def relabel(self, f: Sequence[int]) -> "CayleyTable":
        """Table of the same operation transported along the bijection ``f``."""
        f = f.images if isinstance(f, Permutation) else tuple(f)
        n = len(self.rows)
        inv = [0] * n
        for x, y in enumerate(f):
            inv[y] = x
        rows = tuple(tuple(f[self.rows[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
        return CayleyTable(rows, self.kind)

    def subtable(self, indices: Sequence[int]) -> "CayleyTable":
        """Induced table on a closed subset, relabeled 0..k-1 in the given order."""
        pos = {x: i for i, x in enumerate(indices)}
        try:
            rows = tuple(tuple(pos[self.rows[a][b]] for b in indices) for a in indices)
        except KeyError:
            raise ValueError("subset is not closed under the operation") from None
        return CayleyTable(rows, self.kind)

    def __str__(self):
        from .io import format_table

        return format_table(self)


def _rows(t) -> tuple[tuple[int, ...], ...]:
    return t.rows if isinstance(t, CayleyTable) else tuple(tuple(r) for r in t)


def quandle_violations(t, limit: int | None = None) -> list[Violation]:
    """All quandle axiom failures of ``t`` (at most ``limit``), each with a witness."""
    T = _rows(t)
    n = len(T)
    out: list[Violation] = []

    def full():
        return limit is not None and len(out) >= limit

    for a in range(n):
        if T[a][a] != a:
            out.append(Violation("idempotency", (a,)))
            if full():
                return out
    for b in range(n):
        seen = {}
        for a in range(n):
            v = T[a][b]
            if v in seen:
                out.append(Violation("right-invertibility", (seen[v], a, b)))
                if full():
                    return out
                break
            seen[v] = a
    for a in range(n):
        Ta = T[a]
        for b in range(n):
            Tab = T[Ta[b]]
            Tb = T[b]
            for c in range(n):
                if Tab[c] != T[Ta[c]][Tb[c]]:
                    out.append(Violation("self-distributivity", (a, b, c)))
                    if full():
                        return out
    return out


def is_quandle(t) -> bool:
    return not quandle_violations(t, limit=1)


def verify_quandle(t) -> CayleyTable:
    """Return ``t`` tagged as a quandle, or raise QuandleAxiomError listing violations."""
    table = t if isinstance(t, CayleyTable) else CayleyTable(t)
    violations = quandle_violations(table)
    if violations:
        raise QuandleAxiomError(violations)
    return table.with_kind("quandle")


class LeftMap(NamedTuple):
    images: tuple[int, ...]
    bijective: bool


def right_map(q: CayleyTable, b: int) -> Permutation:
    if not 0 <= b < q.order:
        raise IndexError(b)
    return Permutation(tuple(q.rows[a][b] for a in range(q.order)))


def left_map(q: CayleyTable, a: int) -> LeftMap:
    if not 0 <= a < q.order:
        raise IndexError(a)
    row = q.rows[a]
    return LeftMap(row, len(set(row)) == len(row))


def right_maps(q: CayleyTable) -> list[Permutation]:
    return [Permutation(c) for c in q.columns()]


def inner_group(q: CayleyTable) -> PermGroup:
    return generate(right_maps(q), q.order)


def transvection_group(q: CayleyTable) -> PermGroup:
    rs = right_maps(q)
    gens = {x * y.inverse() for x in rs for y in rs}
    return generate(gens, q.order)


def inner_relation_holds(q: CayleyTable) -> bool:
    """``R_c ∘ R_b == R_{b*c} ∘ R_c`` for all b, c."""
    rs = right_maps(q)
    return all(rs[c] * rs[b] == rs[q.rows[b][c]] * rs[c]
               for b in range(q.order) for c in range(q.order))


# predicates --------------------------------------------------------------

def is_kei(q) -> bool:
    T = _rows(q)
    return all(T[T[a][b]][b] == a for a in range(len(T)) for b in range(len(T)))


def is_latin(q) -> bool:
    T = _rows(q)
    n = len(T)
    return all(len(set(r)) == n for r in T) and all(len({T[a][b] for a in range(n)}) == n for b in range(n))


def is_medial(q) -> bool:
    T = _rows(q)
    n = len(T)
    for a in range(n):
        Ta = T[a]
        for b in range(n):
            Tab = T[Ta[b]]
            Tb = T[b]
            for c in range(n):
                Tac = T[Ta[c]]
                Tc = T[c]
                for d in range(n):
                    if Tab[Tc[d]] != Tac[Tb[d]]:
                        return False
    return True


def is_left_distributive(q) -> bool:
    T = _rows(q)
    n = len(T)
    return all(T[a][T[b][c]] == T[T[a][b]][T[a][c]]
               for a in range(n) for b in range(n) for c in range(n))


def is_right_distributive(q) -> bool:
    T = _rows(q)
    n = len(T)
    return all(T[T[a][b]][c] == T[T[a][c]][T[b][c]]
               for a in range(n) for b in range(n) for c in range(n))


def is_faithful(q: CayleyTable) -> bool:
    cols = q.columns()
    return len(set(cols)) == len(cols)


def is_connected(q: CayleyTable) -> bool:
    if q.order <= 1:
        return True
    return len(orbits(PermGroup(q.order, right_maps(q)))) == 1


def is_subquandle(q, subset: Iterable[int]) -> bool:
    T = _rows(q)
    s = set(subset)
    return all(T[a][b] in s for a in s for b in s)


def is_homomorphism(source, target, f: Sequence[int]) -> bool:
    S, T = _rows(source), _rows(target)
    n = len(S)
    return all(f[S[a][b]] == T[f[a]][f[b]] for a in range(n) for b in range(n))


def _set_partitions(n):
    """Restricted-growth strings for all set partitions of {0..n-1}."""
    if n == 0:
        yield ()
        return
    a = [0] * n

    def rec(i, m):
        if i == n:
            yield tuple(a)
            return
        for v in range(m + 2):
            a[i] = v
            yield from rec(i + 1, max(m, v))

    yield from rec(1, 0)


def congruences(q) -> list[tuple[int, ...]]:
    """Partitions (as block labels) compatible with the operation."""
    T = _rows(q)
    n = len(T)
    out = []
    for labels in _set_partitions(n):
        ok = True
        for a in range(n):
            for a2 in range(a, n):
                if labels[a] != labels[a2]:
                    continue
                for b in range(n):
                    for b2 in range(n):
                        if labels[b] == labels[b2] and labels[T[a][b]] != labels[T[a2][b2]]:
                            ok = False
                            break
                    if not ok:
                        break
                if not ok:
                    break
            if not ok:
                break
        if ok:
            out.append(labels)
    return out


def is_simple(q) -> bool | None:
    """Only trivial congruences; ``None`` when the order exceeds the search bound."""
    n = len(_rows(q))
    if n > SIMPLE_CHECK_MAX:
        return None
    return all(len(set(c)) in (1, n) for c in congruences(q))


@dataclass(frozen=True)
class ClassificationReport:
    kei: bool
    latin: bool
    medial: bool
    connected: bool
    faithful: bool
    simple: bool | None
    inner_order: int
    transvection_order: int

    def lines(self) -> list[str]:
        def fmt(v):
            return "not computed" if v is None else str(v).lower()

        return [f"{k}: {fmt(getattr(self, k))}" for k in
                ("kei", "latin", "medial", "connected", "faithful", "simple",
                 "inner_order", "transvection_order")]


def classify(q: CayleyTable) -> ClassificationReport:
    return ClassificationReport(
        kei=is_kei(q),
        latin=is_latin(q),
        medial=is_medial(q),
        connected=is_connected(q),
        faithful=is_faithful(q),
        simple=is_simple(q),
        inner_order=inner_group(q).order,
        transvection_order=transvection_group(q).order,
    )


# decompositions ----------------------------------------------------------

class Subquandle(NamedTuple):
    indices: tuple[int, ...]
    table: CayleyTable


def orbit_decomposition(q: CayleyTable) -> list[Subquandle]:
    blocks = orbits(PermGroup(q.order, right_maps(q)))
    return [Subquandle(tuple(b), q.subtable(b)) for b in blocks]


def _closed_masks(q) -> list[bool]:
    """closed[mask] for every subset mask (the empty set counts as closed)."""
    T = _rows(q)
    n = len(T)
    size = 1 << n
    images = []
    for x in range(n):
        Tx = T[x]
        arr = [0] * size
        for mask in range(1, size):
            low = mask & -mask
            arr[mask] = arr[mask ^ low] | (1 << Tx[low.bit_length() - 1])
        images.append(arr)
    closed = [True] * size
    for mask in range(1, size):
        m = mask
        while m:
            low = m & -m
            if images[low.bit_length() - 1][mask] & ~mask:
                closed[mask] = False
                break
            m ^= low
    return closed


def nelson_wong_decomposition(q: CayleyTable) -> list[Subquandle]:
    """Minimal X-complemented subquandles, by exhaustive subset search.

    A subquandle A is X-complemented when its complement is a subquandle (or
    empty).  Raises ValueError beyond order 16.
    """
    n = q.order
    if n > NELSON_WONG_MAX:
        raise ValueError(f"order {n} exceeds the exhaustive bound {NELSON_WONG_MAX}")
    if n == 0:
        return []
    full = (1 << n) - 1
    closed = _closed_masks(q)
    complemented = [m for m in range(1, full + 1) if closed[m] and closed[full ^ m]]
    cset = set(complemented)
    minimal = []
    for m in complemented:
        sub = (m - 1) & m
        is_min = True
        while sub:
            if sub in cset:
                is_min = False
                break
            sub = (sub - 1) & m
        if is_min:
            minimal.append(m)
    covered = 0
    for m in minimal:
        if covered & m:
            raise RuntimeError("minimal complemented subquandles overlap")
        covered |= m
    if covered != full:
        raise RuntimeError("minimal complemented subquandles do not cover the quandle")
    blocks = sorted(tuple(x for x in range(n) if m >> x & 1) for m in minimal)
    return [Subquandle(b, q.subtable(b)) for b in blocks]


# Table-1 style display -----------------------------------------------------

def column_cycles(q: CayleyTable, one_based: bool = True) -> str:
    """Columns as disjoint-cycle strings, e.g. ``(1),(1),(12),(12)``."""
    off = 1 if one_based else 0
    sep = "" if q.order + off <= 10 else " "
    parts = []
    for col in q.columns():
        cyc = Permutation(col).cycles()
        if not cyc:
            parts.append("(1)" if one_based else "()")
        else:
            parts.append("".join("(" + sep.join(str(x + off) for x in c) + ")" for c in cyc))
    return ",".join(parts)


def from_column_cycles(text: str, n: int, one_based: bool = True) -> CayleyTable:
    """Inverse of :func:`column_cycles` for single-digit labels or spaced labels."""
    import re

    off = 1 if one_based else 0
    columns = []
    for part in re.findall(r"((?:\([^()]*\))+)", text):
        cycles = []
        for body in re.findall(r"\(([^()]*)\)", part):
            body = body.strip()
            labels = body.split() if " " in body else list(body)
            pts = [int(x) - off for x in labels]
            if len(pts) > 1:
                cycles.append(pts)
        columns.append(Permutation.from_cycles(n, cycles).images)
    if len(columns) != n:
        raise ValueError(f"expected {n} columns, found {len(columns)}")
    return CayleyTable.from_columns(columns)


def verify_vendramin(q: CayleyTable) -> bool:
    """Rebuild a connected quandle as the homogeneous quandle (Inn, Stab(0), I_z).

    ``z = R_0`` and ``I_z(g) = z g z^{-1}``; returns whether the rebuilt
    quandle is isomorphic to ``q``.
    """
    from .canonical import are_isomorphic
    from .constructions import group_table_from_permutations, homogeneous

    if not is_connected(q):
        raise ValueError("quandle is not connected")
    G = inner_group(q)
    elems = G.element_tuples()
    z = right_map(q, 0).images
    stab = [i for i, g in enumerate(elems) if g[0] == 0]
    index = {g: i for i, g in enumerate(elems)}
    zi = tuple(sorted(range(len(z)), key=lambda i: z[i]))
    if any(index[tuple(z[x] for x in elems[h])] != index[tuple(elems[h][x] for x in z)] for h in stab):
        return False  # z is not central in the stabilizer
    phi = [index[tuple(z[g[zi[x]]] for x in range(len(z)))] for g in elems]
    table = group_table_from_permutations(elems)
    rebuilt = homogeneous(table, stab, phi)
    return are_isomorphic(rebuilt, q) is not None
