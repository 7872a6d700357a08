"""Exact integer diagonalization (Smith-type) and finite abelian group bookkeeping."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence


@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank + Z_t1 + ... with t1 | t2 | ... (invariant factors, each > 1)."""

    rank: int
    torsion: tuple[int, ...] = ()

    def __str__(self):
        parts = []
        if self.rank:
            parts.append("Z" if self.rank == 1 else f"Z^{self.rank}")
        parts += [f"Z_{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        """Torsion factors followed by a 0 for each free summand."""
        return self.torsion + (0,) * self.rank

    def order(self) -> int | None:
        if self.rank:
            return None
        out = 1
        for t in self.torsion:
            out *= t
        return out


def _factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors(orders: Sequence[int]) -> tuple[int, ...]:
    """Invariant factors of the direct sum of cyclic groups of the given finite orders."""
    powers: dict[int, list[int]] = {}
    for d in orders:
        d = abs(d)
        if d <= 1:
            continue
        for p, k in _factor(d).items():
            powers.setdefault(p, []).append(p ** k)
    if not powers:
        return ()
    for v in powers.values():
        v.sort(reverse=True)
    length = max(len(v) for v in powers.values())
    out = []
    for i in range(length):
        f = 1
        for v in powers.values():
            if i < len(v):
                f *= v[i]
        out.append(f)
    return tuple(sorted(out))


def group_from_diagonal(free_rank: int, diagonal: Sequence[int]) -> AbelianGroup:
    return AbelianGroup(free_rank, invariant_factors(diagonal))


# dense diagonalization with transforms --------------------------------------

@dataclass
class SmithResult:
    """``U * A * V = D`` with D diagonal (``diagonal[i] = D[i][i]``, nonzero entries first)."""

    diagonal: list[int]
    U: list[list[int]] | None
    V: list[list[int]] | None

    @property
    def rank(self) -> int:
        return len(self.diagonal)


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith(A: Sequence[Sequence[int]], ncols: int | None = None, transforms: bool = True) -> SmithResult:
    """Diagonalize an integer matrix by unimodular row and column operations.

    The diagonal is not normalized to a divisibility chain; callers that need
    invariant factors pass it through :func:`invariant_factors`.
    """
    M = [list(r) for r in A]
    r = len(M)
    c = ncols if ncols is not None else (len(M[0]) if M else 0)
    U = _identity(r) if transforms else None
    V = _identity(c) if transforms else None
    diag = []
    t = 0
    while t < min(r, c):
        best = None
        for i in range(t, r):
            Mi = M[i]
            for j in range(t, c):
                v = Mi[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        if i != t:
            M[i], M[t] = M[t], M[i]
            if U:
                U[i], U[t] = U[t], U[i]
        if j != t:
            for row in M:
                row[j], row[t] = row[t], row[j]
            if V:
                for row in V:
                    row[j], row[t] = row[t], row[j]
        while True:
            p = M[t][t]
            done = True
            # clear column t
            for i in range(t + 1, r):
                v = M[i][t]
                if v:
                    q = v // p
                    Mi, Mt = M[i], M[t]
                    for j in range(t, c):
                        if Mt[j]:
                            Mi[j] -= q * Mt[j]
                    if U:
                        Ui, Ut = U[i], U[t]
                        for j in range(r):
                            if Ut[j]:
                                Ui[j] -= q * Ut[j]
                    if Mi[t]:
                        done = False
            # clear row t
            Mt = M[t]
            for j in range(t + 1, c):
                v = Mt[j]
                if v:
                    q = v // p
                    for i in range(t, r):
                        if M[i][t]:
                            M[i][j] -= q * M[i][t]
                    if V:
                        for row in V:
                            if row[t]:
                                row[j] -= q * row[t]
                    if Mt[j]:
                        done = False
            if done:
                break
            # move a smaller remainder into the pivot position
            best = None
            for i in range(t + 1, r):
                if M[i][t] and (best is None or abs(M[i][t]) < best[0]):
                    best = (abs(M[i][t]), i, None)
            for j in range(t + 1, c):
                if Mt[j] and (best is None or abs(Mt[j]) < best[0]):
                    best = (abs(Mt[j]), None, j)
            _, i, j = best
            if i is not None:
                M[i], M[t] = M[t], M[i]
                if U:
                    U[i], U[t] = U[t], U[i]
            else:
                for row in M:
                    row[j], row[t] = row[t], row[j]
                if V:
                    for row in V:
                        row[j], row[t] = row[t], row[j]
        diag.append(M[t][t])
        t += 1
    return SmithResult(diag, U, V)


# sparse divisors-only elimination ------------------------------------------

def elementary_divisors(columns: Sequence[dict[int, int]], nrows: int) -> list[int]:
    """Nonzero diagonal entries of a diagonal form of the matrix with the given sparse columns.

    Unit pivots are eliminated sparsely; whatever is left is handed to the
    dense routine.
    """
    cols = [dict(c) for c in columns if c]
    row_index: dict[int, set[int]] = {}
    for j, col in enumerate(cols):
        for i in col:
            row_index.setdefault(i, set()).add(j)
    alive = set(range(len(cols)))
    ones = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(alive, key=lambda k: len(cols[k])):
            col = cols[j]
            pivot = next((i for i, v in col.items() if v in (1, -1)), None)
            if pivot is None:
                continue
            pv = col[pivot]
            for k in list(row_index.get(pivot, ())):
                if k == j:
                    continue
                other = cols[k]
                f = other[pivot] * pv
                for i, v in col.items():
                    nv = other.get(i, 0) - f * v
                    if nv:
                        if i not in other:
                            row_index.setdefault(i, set()).add(k)
                        other[i] = nv
                    else:
                        other.pop(i, None)
                        row_index[i].discard(k)
                if not other:
                    alive.discard(k)
            for i in col:
                row_index[i].discard(j)
            alive.discard(j)
            ones += 1
            progress = True
            break
    rest = [cols[j] for j in sorted(alive) if cols[j]]
    if not rest:
        return [1] * ones
    rows = sorted({i for col in rest for i in col})
    pos = {i: k for k, i in enumerate(rows)}
    dense = [[0] * len(rest) for _ in rows]
    for j, col in enumerate(rest):
        for i, v in col.items():
            dense[pos[i]][j] = v
    res = smith(dense, len(rest), transforms=False)
    return [1] * ones + [abs(d) for d in res.diagonal]


def rank_and_divisors(columns: Sequence[dict[int, int]], nrows: int) -> tuple[int, tuple[int, ...]]:
    d = elementary_divisors(columns, nrows)
    return len(d), tuple(x for x in d if x != 1)


def solve_mod(res: SmithResult, rhs: Sequence[int], m: int) -> list[int] | None:
    """Some row vector x with ``x A = rhs (mod m)``, using ``U A V = D``; None if unsolvable."""
    V = res.V
    ncols = len(V)
    w = [sum(rhs[i] * V[i][j] for i in range(ncols)) % m for j in range(ncols)]
    r = res.rank
    if any(w[j] for j in range(r, ncols)):
        return None
    nrows = len(res.U)
    eta = [0] * nrows
    for i, d in enumerate(res.diagonal):
        g = gcd(d, m)
        if w[i] % g:
            return None
        mm = m // g
        eta[i] = (w[i] // g) * pow((d // g) % mm, -1, mm) % mm if mm > 1 else 0
    return [sum(eta[k] * res.U[k][j] for k in range(nrows)) % m for j in range(nrows)]
