"""Permutations of {0..n-1} and explicitly materialized permutation groups.

Composition is apply-right-first throughout: ``compose(p, q)(i) == p(q(i))``.
This matters for the inner-group relation ``R_c R_b = R_{b*c} R_c``; flipping
the convention silently swaps conjugation directions.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

DEFAULT_MAX_CLOSURE = 10**7


class ClosureBoundError(RuntimeError):
    """Raised when a group closure would exceed the configured size bound."""


def max_closure() -> int:
    value = os.environ.get("QF_MAX_CLOSURE")
    return int(value) if value else DEFAULT_MAX_CLOSURE


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0..n-1}; ``images[i]`` is the image of ``i``."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(n))
        for cyc in cycles:
            for i, x in enumerate(cyc):
                images[x] = cyc[(i + 1) % len(cyc)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        return compose(self, other)

    def __len__(self):
        return len(self.images)

    def inverse(self) -> "Permutation":
        return Permutation(_inverse(self.images))

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its least point, sorted."""
        return [c for c in _cycles(self.images) if len(c) > 1]

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in _cycles(self.images)), reverse=True))

    def order(self) -> int:
        from math import lcm

        return lcm(*self.cycle_type()) if self.images else 1

    def __repr__(self):
        cyc = "".join("(" + " ".join(map(str, c)) + ")" for c in self.cycles())
        return f"Permutation({cyc or '()'}, degree={self.degree})"


def _cycles(images):
    n = len(images)
    seen = [False] * n
    out = []
    for i in range(n):
        if not seen[i]:
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j)
                j = images[j]
            out.append(tuple(cyc))
    return out


def _inverse(images):
    inv = [0] * len(images)
    for i, x in enumerate(images):
        inv[x] = i
    return tuple(inv)


def _compose(p, q):
    return tuple(p[x] for x in q)


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p∘q`` (apply ``q`` first)."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Permutation(_compose(p.images, q.images))


class PermGroup:
    """A permutation group given by generators.

    Elements are materialized lazily by breadth-first closure and kept in
    lexicographic order of their image tuples.  A known order (e.g. from a
    stabilizer-chain search) can be supplied so that ``order`` does not force
    materialization.
    """

    def __init__(self, degree: int, generators: Iterable[Permutation] = (), *,
                 order: int | None = None, bound: int | None = None):
        gens = []
        for g in generators:
            if g.degree != degree:
                raise ValueError(f"generator of degree {g.degree} in a group of degree {degree}")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators = tuple(sorted(gens))
        self._order = order
        self._bound = bound
        self._elements: tuple[tuple[int, ...], ...] | None = None
        self._element_set: frozenset | None = None

    def _materialize(self):
        if self._elements is not None:
            return
        bound = self._bound if self._bound is not None else max_closure()
        if self._order is not None and self._order > bound:
            raise ClosureBoundError(f"group order {self._order} exceeds closure bound {bound}")
        ident = tuple(range(self.degree))
        gens = [g.images for g in self.generators]
        seen = {ident}
        queue = deque([ident])
        while queue:
            x = queue.popleft()
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    if len(seen) > bound:
                        raise ClosureBoundError(f"closure exceeds bound {bound}")
                    queue.append(y)
        self._element_set = frozenset(seen)
        self._elements = tuple(sorted(seen))
        if self._order is not None and self._order != len(seen):
            raise AssertionError(f"declared order {self._order} != closure size {len(seen)}")
        self._order = len(seen)

    @property
    def order(self) -> int:
        if self._order is None:
            self._materialize()
        return self._order

    def __len__(self):
        return self.order

    @property
    def elements(self) -> tuple[Permutation, ...]:
        self._materialize()
        return tuple(Permutation(e) for e in self._elements)

    def element_tuples(self) -> tuple[tuple[int, ...], ...]:
        self._materialize()
        return self._elements

    def __contains__(self, p) -> bool:
        self._materialize()
        images = p.images if isinstance(p, Permutation) else tuple(p)
        return images in self._element_set

    def __iter__(self):
        return iter(self.elements)

    def orbits(self) -> list[list[int]]:
        return orbits(self)

    def is_transitive(self) -> bool:
        return is_transitive(self)

    def is_trivial(self) -> bool:
        return not self.generators

    def is_abelian(self) -> bool:
        gens = [g.images for g in self.generators]
        return all(_compose(a, b) == _compose(b, a) for a in gens for b in gens)

    def stabilizer(self, point: int) -> "PermGroup":
        stab = [Permutation(e) for e in self.element_tuples() if e[point] == point]
        return PermGroup(self.degree, stab, order=len(stab))

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def is_normal_in(self, other: "PermGroup") -> bool:
        """True iff ``self`` is stable under conjugation by ``other``'s generators."""
        for g in other.generators:
            gi = _inverse(g.images)
            for h in self.generators:
                if _compose(_compose(g.images, h.images), gi) not in self:
                    return False
        return True

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, generators={len(self.generators)})"


def generate(gens: Iterable[Permutation], degree: int, bound: int | None = None) -> PermGroup:
    """Closure of ``gens`` under composition; raises ClosureBoundError past ``bound``."""
    group = PermGroup(degree, gens, bound=bound)
    group._materialize()
    return group


def orbits(group: PermGroup) -> list[list[int]]:
    """Orbit partition of {0..n-1}, blocks sorted, ordered by least element."""
    n = group.degree
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group.generators:
        for x, y in enumerate(g.images):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[max(rx, ry)] = min(rx, ry)
    blocks: dict[int, list[int]] = {}
    for x in range(n):
        blocks.setdefault(find(x), []).append(x)
    return [blocks[r] for r in sorted(blocks)]


def is_transitive(group: PermGroup) -> bool:
    return len(orbits(group)) == 1


def quotient_is_cyclic(group: PermGroup, normal: PermGroup) -> bool:
    """Whether ``group / normal`` is cyclic.

    ``normal`` must be a subgroup of ``group`` and closed under conjugation
    by it; both are checked and a ValueError is raised otherwise.
    """
    if not normal.is_subgroup_of(group):
        raise ValueError("second argument is not a subgroup of the first")
    if not normal.is_normal_in(group):
        raise ValueError("subgroup is not normal")
    index = group.order // normal.order
    if index == 1:
        return True
    for g in group.element_tuples():
        x = g
        k = 1
        while x not in normal:
            x = _compose(x, g)
            k += 1
        if k == index:
            return True
    return False
