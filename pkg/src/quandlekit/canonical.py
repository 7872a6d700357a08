"""Canonical labeling, isomorphism and automorphism search for Cayley tables.

The canonical form of a table is its lexicographically least relabeling,
where tables are flattened shell by shell: shell ``k`` lists the cells
``(k,0..k-1)``, then ``(0..k-1,k)``, then ``(k,k)``.  Reading in shells means
the cells compared first only involve the labels fixed so far, which is what
makes branch-and-bound effective.  Ties between branches are cut with
automorphisms discovered along the way.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Sequence

from .permgroups import Permutation, PermGroup
from .quandle import CayleyTable, _rows

AUTOMORPHISM_MAX = 12


@lru_cache(maxsize=None)
def shell_cells(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    shells = []
    for k in range(n):
        shells.append(tuple([(k, j) for j in range(k)] + [(i, k) for i in range(k)] + [(k, k)]))
    return tuple(shells)


def shell_flatten(rows) -> tuple[int, ...]:
    return tuple(rows[i][j] for shell in shell_cells(len(rows)) for (i, j) in shell)


def canonical_labeling(t) -> tuple[CayleyTable, tuple[int, ...]]:
    """Return ``(canonical table, order)`` where ``order[i]`` is the old element given label ``i``."""
    T = _rows(t)
    n = len(T)
    kind = t.kind if isinstance(t, CayleyTable) else "raw"
    if n == 0:
        return CayleyTable((), kind), ()
    shells = shell_cells(n)
    best: list[int] | None = None
    best_g: list[int] | None = None
    autos: list[tuple[int, ...]] = []

    def orbit_ids(prefix):
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in autos:
            if all(a[x] == x for x in prefix):
                for x in range(n):
                    rx, ry = find(x), find(a[x])
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
        return [find(x) for x in range(n)]

    g: list[int] = []
    f = [-1] * n
    vals: list[int] = []

    def rec(k, cmp):
        # cmp == -1: current prefix already beats the incumbent (or none yet);
        # cmp == 0: equal so far.
        nonlocal best, best_g
        if k == n:
            if cmp == -1:
                best = list(vals)
                best_g = list(g)
            else:
                autos.append(tuple(best_g[f[x]] for x in range(n)))
            return
        branch = [None] if len(g) > k else [c for c in range(n) if f[c] < 0]
        explored: list[int] = []
        seen_autos = -1
        ids = None
        for c in branch:
            start = len(g)
            if c is not None:
                if explored and autos:
                    if seen_autos != len(autos):
                        ids = orbit_ids(g)
                        seen_autos = len(autos)
                    oc = ids[c]
                    if any(ids[e] == oc for e in explored):
                        continue
                explored.append(c)
                g.append(c)
                f[c] = k
            pos = len(vals)
            ok = True
            c2 = cmp
            for (i, j) in shells[k]:
                v = T[g[i]][g[j]]
                if f[v] < 0:
                    f[v] = len(g)
                    g.append(v)
                val = f[v]
                if c2 == 0:
                    b = best[len(vals)]
                    if val > b:
                        ok = False
                        break
                    if val < b:
                        c2 = -1
                vals.append(val)
            if ok:
                rec(k + 1, c2)
            cmp = 0
            del vals[pos:]
            for x in g[start:]:
                f[x] = -1
            del g[start:]

    rec(0, -1)
    inv = [0] * n
    for i, x in enumerate(best_g):
        inv[x] = i
    rows = tuple(tuple(inv[T[best_g[i]][best_g[j]]] for j in range(n)) for i in range(n))
    return CayleyTable(rows, kind), tuple(best_g)


def canonical_form(t) -> CayleyTable:
    return canonical_labeling(t)[0]


def canonical_key(t) -> tuple[tuple[int, ...], ...]:
    return canonical_labeling(t)[0].rows


def are_isomorphic(q1, q2) -> Permutation | None:
    """An isomorphism ``f`` with ``f(a*b) = f(a)*f(b)`` from ``q1`` to ``q2``, or None."""
    n = len(_rows(q1))
    if n != len(_rows(q2)):
        return None
    c1, g1 = canonical_labeling(q1)
    c2, g2 = canonical_labeling(q2)
    if c1.rows != c2.rows:
        return None
    f = [0] * n
    for i in range(n):
        f[g1[i]] = g2[i]
    return Permutation(tuple(f))


def brute_force_isomorphism(q1, q2) -> Permutation | None:
    """Reference oracle: try every bijection (small orders only)."""
    from itertools import permutations

    A, B = _rows(q1), _rows(q2)
    n = len(A)
    if n != len(B):
        return None
    for f in permutations(range(n)):
        if all(f[A[a][b]] == B[f[a]][f[b]] for a in range(n) for b in range(n)):
            return Permutation(f)
    return None


def _element_invariants(T):
    n = len(T)
    inv = []
    for x in range(n):
        col = Permutation(tuple(T[a][x] for a in range(n))).cycle_type()
        row = T[x]
        inv.append((col, len(set(row)), sum(1 for y in range(n) if row[y] == y), T[x][x] == x))
    return inv


def _extend_automorphism(T, invariants, prescribed: dict[int, int]) -> tuple[int, ...] | None:
    n = len(T)
    sigma = [-1] * n
    used = [False] * n

    def assign(pairs, trail):
        stack = list(pairs)
        while stack:
            x, y = stack.pop()
            if sigma[x] >= 0:
                if sigma[x] != y:
                    return False
                continue
            if used[y] or invariants[x] != invariants[y]:
                return False
            sigma[x] = y
            used[y] = True
            trail.append(x)
            for z in range(n):
                if sigma[z] >= 0:
                    stack.append((T[x][z], T[y][sigma[z]]))
                    stack.append((T[z][x], T[sigma[z]][y]))
        return True

    def undo(trail):
        for x in trail:
            used[sigma[x]] = False
            sigma[x] = -1

    trail0: list[int] = []
    if not assign(prescribed.items(), trail0):
        return None

    def dfs():
        try:
            x = sigma.index(-1)
        except ValueError:
            return True
        for y in range(n):
            if used[y]:
                continue
            trail: list[int] = []
            if assign([(x, y)], trail) and dfs():
                return True
            undo(trail)
        return False

    return tuple(sigma) if dfs() else None


def automorphism_group(q, max_order: int = AUTOMORPHISM_MAX) -> PermGroup:
    """Full automorphism group via a stabilizer-chain backtrack.

    Level ``k`` (processed from the last point down) computes the orbit of
    ``k`` under the automorphisms fixing ``0..k-1``; the group order is the
    product of those orbit lengths, so large groups are never materialized.
    """
    T = _rows(q)
    n = len(T)
    if n > max_order:
        raise ValueError(f"order {n} exceeds the automorphism search bound {max_order}")
    invariants = _element_invariants(T)
    gens: list[tuple[int, ...]] = []
    order = 1
    for k in range(n - 1, -1, -1):
        orbit = {k}
        frontier = [k]
        rejected = set()

        def grow():
            while frontier:
                x = frontier.pop()
                for s in gens:
                    y = s[x]
                    if y not in orbit:
                        orbit.add(y)
                        frontier.append(y)

        grow()
        for c in range(n):
            if c in orbit or c in rejected or c < k:
                continue
            pres = {i: i for i in range(k)}
            pres[k] = c
            s = _extend_automorphism(T, invariants, pres)
            if s is None:
                rejected.add(c)
                continue
            gens.append(s)
            orbit.add(c)
            frontier.extend([c, k])
            grow()
        order *= len(orbit)
    return PermGroup(n, [Permutation(s) for s in gens], order=order)


def sorted_by_key(tables: Sequence[CayleyTable]) -> list[CayleyTable]:
    return sorted(tables, key=lambda t: t.rows)
