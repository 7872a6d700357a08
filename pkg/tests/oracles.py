"""Slow, obviously-correct reference implementations used as test oracles."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd


def rows(t):
    return [list(r) for r in getattr(t, "rows", t)]


def quandle_axioms_hold(T) -> bool:
    n = len(T)
    if any(T[a][a] != a for a in range(n)):
        return False
    for b in range(n):
        if sorted(T[a][b] for a in range(n)) != list(range(n)):
            return False
    return all(T[T[a][b]][c] == T[T[a][c]][T[b][c]] for a, b, c in product(range(n), repeat=3))


def closure(gens, n):
    """All products of the generators, composing tuples with apply-right-first."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(n))
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def orbit_partition(gens, n):
    out, seen = [], set()
    for x in range(n):
        if x in seen:
            continue
        orb, stack = {x}, [x]
        while stack:
            y = stack.pop()
            for g in gens:
                if g[y] not in orb:
                    orb.add(g[y])
                    stack.append(g[y])
        seen |= orb
        out.append(sorted(orb))
    return sorted(out)


def column(T, b):
    return tuple(T[a][b] for a in range(len(T)))


def isomorphisms(A, B):
    """Every bijection f with f(a*b) = f(a)*f(b), by trying all n! relabelings."""
    n = len(A)
    if len(B) != n:
        return []
    return [f for f in permutations(range(n))
            if all(B[f[a]][f[b]] == f[A[a][b]] for a in range(n) for b in range(n))]


def isomorphic(A, B) -> bool:
    n = len(A)
    if len(B) != n:
        return False
    return any(all(B[f[a]][f[b]] == f[A[a][b]] for a in range(n) for b in range(n))
               for f in permutations(range(n)))


def iso_classes(tables):
    reps = []
    for t in tables:
        if not any(isomorphic(t, r) for r in reps):
            reps.append(t)
    return reps


def all_quandles(n):
    """Every quandle table on {0..n-1}, by brute force over column permutations (n <= 4)."""
    cols = list(permutations(range(n)))
    out = []
    for choice in product(cols, repeat=n):
        if any(choice[b][b] != b for b in range(n)):
            continue
        T = [[choice[b][a] for b in range(n)] for a in range(n)]
        if quandle_axioms_hold(T):
            out.append(T)
    return out


def det(M):
    """Exact determinant by Fraction Gaussian elimination."""
    A = [[Fraction(v) for v in r] for r in M]
    n = len(A)
    d = Fraction(1)
    for i in range(n):
        p = next((r for r in range(i, n) if A[r][i] != 0), None)
        if p is None:
            return 0
        if p != i:
            A[i], A[p] = A[p], A[i]
            d = -d
        d *= A[i][i]
        for r in range(i + 1, n):
            f = A[r][i] / A[i][i]
            for c in range(i, n):
                A[r][c] -= f * A[i][c]
    return int(d)


def determinantal_divisors(M):
    """d_k = gcd of all k x k minors; the invariant factors are d_k / d_{k-1}."""
    m, n = len(M), len(M[0]) if M else 0
    out = []
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, det([[M[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        out.append(g)
    return out


def invariant_factors_by_minors(M):
    d = determinantal_divisors(M)
    return [d[0]] + [d[k] // d[k - 1] for k in range(1, len(d))] if d else []


def rank_mod(M, p):
    """Rank over the prime field Z_p."""
    A = [[v % p for v in r] for r in M]
    rank, cols = 0, len(A[0]) if A else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(A)) if A[r][c]), None)
        if piv is None:
            continue
        A[rank], A[piv] = A[piv], A[rank]
        inv = pow(A[rank][c], -1, p)
        A[rank] = [v * inv % p for v in A[rank]]
        for r in range(len(A)):
            if r != rank and A[r][c]:
                f = A[r][c]
                A[r] = [(x - f * y) % p for x, y in zip(A[r], A[rank])]
        rank += 1
    return rank


def cocycle2_ok(T, phi, m):
    n = len(T)
    for x in range(n):
        if phi(x, x) % m:
            return False
    return all((phi(x, y) + phi(T[x][y], z) - phi(x, z) - phi(T[x][z], T[y][z])) % m == 0
               for x, y, z in product(range(n), repeat=3))


def knot_colorings(k, T):
    """All arc colorings by brute force over |X|^arcs assignments."""
    n = len(T)
    arcs = k.n_arcs
    out = []
    for col in product(range(n), repeat=arcs):
        ok = True
        for c in k.crossings:
            y = col[k.arc(c.o_in)]
            a_in, a_out = col[k.arc(c.u_in)], col[k.arc(c.u_out)]
            if c.sign > 0:
                ok = T[a_in][y] == a_out
            else:
                ok = T[a_out][y] == a_in
            if not ok:
                break
        if ok:
            out.append(col)
    return out
