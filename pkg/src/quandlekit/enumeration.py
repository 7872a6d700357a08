"""Quandles of a given order up to isomorphism, and Alexander quandles.

The search assigns the right translations R_0, R_1, ... as permutations with
``R_b(b) = b``.  Once R_b and R_c are known, the inner relation
``R_{R_c(b)} = R_c R_b R_c^-1`` fixes two more columns, so most columns are
forced.  To cut relabelings, R_0 is taken to have the smallest cycle type of
all columns (an isomorphism can always move such a column to position 0) and
is fixed to a standard permutation of that type.  Remaining duplicates are
removed by canonical form.
"""
from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Callable, Sequence

from .canonical import canonical_key
from .constructions import AbelianGroupSpec, AutomorphismSpec, alexander
from .quandle import (CayleyTable, is_connected, is_homomorphism, is_kei, is_latin, is_medial,
                      verify_quandle)

log = logging.getLogger(__name__)

MAX_ORDER = 8
LONG_ORDER = 9
ALEXANDER_MAX = 16

FILTERS: dict[str, Callable[[CayleyTable], bool]] = {
    "all": lambda q: True,
    "connected": is_connected,
    "latin": is_latin,
    "medial": is_medial,
    "kei": is_kei,
}


@dataclass(frozen=True)
class EnumerationResult:
    order: int
    filter: str
    tables: tuple[CayleyTable, ...]

    @property
    def count(self) -> int:
        return len(self.tables)

    def __len__(self):
        return len(self.tables)

    def __iter__(self):
        return iter(self.tables)


# search ---------------------------------------------------------------------

def _cycle_type(p):
    n = len(p)
    seen = [False] * n
    lens = []
    for i in range(n):
        if not seen[i]:
            k = 0
            j = i
            while not seen[j]:
                seen[j] = True
                j = p[j]
                k += 1
            lens.append(k)
    return (lens.count(1), tuple(sorted(lens, reverse=True)))


def partitions(n: int, largest: int | None = None):
    """Integer partitions of n, parts in non-increasing order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def _standard_perm(n, parts):
    p = list(range(n))
    pos = 1
    for k in parts:
        pts = range(pos, pos + k)
        for i, x in enumerate(pts):
            p[x] = pts[(i + 1) % k]
        pos += k
    return tuple(p)


def _conj(p, q):
    """p q p^-1."""
    r = [0] * len(p)
    for x in range(len(p)):
        r[p[x]] = p[q[x]]
    return tuple(r)


def _propagate(R, queue, key0):
    n = len(R)
    log_ = []
    while queue:
        b = queue.pop()
        Rb = R[b]
        for c in range(n):
            Rc = R[c]
            if Rc is None:
                continue
            for d, req in ((Rc[b], _conj(Rc, Rb)), (Rb[c], _conj(Rb, Rc))):
                cur = R[d]
                if cur is None:
                    if _cycle_type(req) < key0:
                        return False, log_
                    R[d] = req
                    log_.append(d)
                    queue.append(d)
                elif cur != req:
                    return False, log_
    return True, log_


def _candidates(R, b, key0):
    """Permutations m with m(b) = b compatible with the inner relation.

    For each assigned c, R_b R_c R_b^-1 must be the assigned column R_{R_b(c)};
    those equations ``m p = q m`` are propagated point by point.
    """
    n = len(R)
    assigned = [c for c in range(n) if R[c] is not None]
    m = [-1] * n
    used = [False] * n
    rels = [(R[c], R[c]) for c in assigned if R[c][b] == b]
    order = assigned + [x for x in range(n) if R[x] is None and x != b]
    types = [None if r is None else _cycle_type(r) for r in R]

    def setfact(x, y, trail, rtrail):
        stack = [(x, y)]
        while stack:
            x, y = stack.pop()
            if m[x] >= 0:
                if m[x] != y:
                    return False
                continue
            if used[y]:
                return False
            m[x] = y
            used[y] = True
            trail.append(x)
            if R[x] is not None and R[y] is not None:
                if types[x] != types[y]:
                    return False
                p, q = R[x], R[y]
                rels.append((p, q))
                rtrail.append(1)
                for z in range(n):
                    if m[z] >= 0:
                        stack.append((p[z], q[m[z]]))
            for p, q in rels:
                stack.append((p[x], q[y]))
        return True

    def undo(trail, rtrail):
        for x in trail:
            used[m[x]] = False
            m[x] = -1
        del rels[len(rels) - len(rtrail):]

    out = []
    if not setfact(b, b, [], []):
        return out

    def dfs(i):
        while i < len(order) and m[order[i]] >= 0:
            i += 1
        if i == len(order):
            p = tuple(m)
            if _cycle_type(p) >= key0:
                out.append(p)
            return
        x = order[i]
        for y in range(n):
            if used[y]:
                continue
            trail, rtrail = [], []
            if setfact(x, y, trail, rtrail):
                dfs(i + 1)
            undo(trail, rtrail)

    dfs(0)
    return out


def _search(R, key0, found):
    try:
        b = R.index(None)
    except ValueError:
        found.append(tuple(R))
        return
    for p in _candidates(R, b, key0):
        R[b] = p
        ok, log_ = _propagate(R, [b], key0)
        if ok:
            _search(R, key0, found)
        for d in log_:
            R[d] = None
        R[b] = None


def _table_from_columns(R):
    n = len(R)
    return tuple(tuple(R[b][a] for b in range(n)) for a in range(n))


def _root(n, parts):
    R0 = _standard_perm(n, parts)
    key0 = _cycle_type(R0)
    R = [None] * n
    R[0] = R0
    ok, _ = _propagate(R, [0], key0)
    return (R, key0) if ok else (None, key0)


@lru_cache(maxsize=None)
def _root_candidates(n, parts):
    R, key0 = _root(n, parts)
    if R is None or None not in R:
        return ()
    return tuple(_candidates(R, R.index(None), key0))


def _tasks(n):
    """Top-level branches: (cycle type of R_0, index of the first free choice)."""
    tasks = []
    for parts in partitions(n - 1):
        R, key0 = _root(n, parts)
        if R is None:
            continue
        if None not in R:
            tasks.append((n, parts, None))
            continue
        for i in range(len(_root_candidates(n, parts))):
            tasks.append((n, parts, i))
    return tasks


def _run_task(task) -> set:
    n, parts, i = task
    R, key0 = _root(n, parts)
    found: list = []
    if i is None:
        found.append(tuple(R))
    else:
        b = R.index(None)
        R[b] = _root_candidates(n, parts)[i]
        ok, _ = _propagate(R, [b], key0)
        if ok:
            _search(R, key0, found)
    return {canonical_key(_table_from_columns(cols)) for cols in found}


def _check_order(n, allow_long):
    if n < 1:
        raise ValueError("order must be at least 1")
    if n > LONG_ORDER or (n > MAX_ORDER and not allow_long):
        raise ValueError(f"order {n} is out of range (max {MAX_ORDER}, or {LONG_ORDER} with the long-run flag)")


def enumerate_quandles(n: int, filter: str = "all", jobs: int = 1, allow_long: bool = False) -> EnumerationResult:
    """One canonical representative per isomorphism class, sorted."""
    _check_order(n, allow_long)
    if filter not in FILTERS:
        raise ValueError(f"unknown filter {filter!r}; choose from {sorted(FILTERS)}")
    tasks = _tasks(n)
    keys: set = set()
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunk = max(1, len(tasks) // (jobs * 8))
            for done, part in enumerate(pool.map(_run_task, tasks, chunksize=chunk), 1):
                keys |= part
                log.info("order %d: %d/%d branches, %d classes so far", n, done, len(tasks), len(keys))
    else:
        for done, task in enumerate(tasks, 1):
            keys |= _run_task(task)
            log.info("order %d: %d/%d branches, %d classes so far", n, done, len(tasks), len(keys))
    pred = FILTERS[filter]
    tables = []
    for rows in sorted(keys):
        q = CayleyTable(rows, "quandle")
        if pred(q):
            tables.append(q)
    return EnumerationResult(n, filter, tuple(tables))


def count_connected(n: int, jobs: int = 1) -> int:
    return enumerate_quandles(n, "connected", jobs=jobs).count


# Alexander quandles ---------------------------------------------------------

def _factorize(n):
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


def abelian_groups(n: int) -> list[AbelianGroupSpec]:
    """One spec per isomorphism type of abelian group of order n (prime-power factors)."""
    if n < 1:
        raise ValueError("order must be positive")
    per_prime = []
    for p, k in sorted(_factorize(n).items()):
        per_prime.append([tuple(p ** e for e in parts) for parts in partitions(k)])
    out = []
    for combo in product(*per_prime):
        orders = tuple(d for block in combo for d in block)
        out.append(AbelianGroupSpec(orders or (1,)))
    return out


def automorphisms(m: AbelianGroupSpec) -> list[AutomorphismSpec]:
    """All automorphisms, found by sending each cyclic generator to an element of compatible order."""
    choices = []
    for d in m.cyclic_orders:
        choices.append([x for x in range(m.size) if m.scale(d, x) == 0])
    out = []
    for imgs in product(*choices):
        try:
            out.append(AutomorphismSpec.from_generator_images(m, imgs))
        except ValueError:
            continue
    return out


def conjugacy_representatives(autos: Sequence[AutomorphismSpec]) -> list[AutomorphismSpec]:
    """One automorphism per conjugacy class of the full automorphism group."""
    if not autos:
        return []
    size = len(autos[0].images)
    perms = [a.images for a in autos]
    inverses = []
    for p in perms:
        inv = [0] * size
        for x, y in enumerate(p):
            inv[y] = x
        inverses.append(inv)
    seen = set()
    reps = []
    for a, t in zip(autos, perms):
        if t in seen:
            continue
        reps.append(a)
        for s, si in zip(perms, inverses):
            seen.add(tuple(s[t[si[x]]] for x in range(size)))
    return reps


@dataclass(frozen=True)
class AlexanderClass:
    table: CayleyTable
    sources: tuple[tuple[AbelianGroupSpec, AutomorphismSpec], ...]


def alexander_classes(n: int) -> list[AlexanderClass]:
    """Isomorphism classes of Alexander quandles of order n with every (M, t) realizing each."""
    if not 1 <= n <= ALEXANDER_MAX:
        raise ValueError(f"order must be in 1..{ALEXANDER_MAX}")
    classes: dict = {}
    for m in abelian_groups(n):
        for t in conjugacy_representatives(automorphisms(m)):
            q = alexander(m, t, check_medial=False)
            key = canonical_key(q)
            classes.setdefault(key, []).append((m, t))
    return [AlexanderClass(CayleyTable(k, "quandle"), tuple(v)) for k, v in sorted(classes.items())]


def enumerate_alexander(n: int) -> EnumerationResult:
    return EnumerationResult(n, "alexander", tuple(c.table for c in alexander_classes(n)))


# Clauwens divisibility ------------------------------------------------------

def divisibility_check(q: CayleyTable, p: CayleyTable, f: Sequence[int]) -> bool:
    """Whether every fiber of the surjective homomorphism f: q -> p has the same size."""
    verify_quandle(q)
    verify_quandle(p)
    if len(f) != q.order or any(not 0 <= v < p.order for v in f):
        raise ValueError("map has the wrong shape")
    if not is_homomorphism(q, p, f):
        raise ValueError("map is not a homomorphism")
    sizes = [0] * p.order
    for v in f:
        sizes[v] += 1
    if 0 in sizes:
        raise ValueError("map is not surjective")
    equal = len(set(sizes)) == 1
    if equal:
        assert q.order % p.order == 0
    return equal
