"""Oriented knot diagrams, quandle colorings and the state-sum cocycle invariant.

A crossing is stored as (over in, over out, under in, under out, sign) over
edge labels; edges are the segments between consecutive crossings along the
knot, and arcs are maximal runs of edges joined through over-passes.

Coloring rule: the over-arc has color y.  At a positive crossing the incoming
under-arc x leaves as x*y; at a negative crossing it is the outgoing under-arc
x that satisfies (incoming) = x*y.  Either way the Boltzmann weight of the
crossing is t^(sign * phi(x, y)) with x the source-side under color.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .cohomology import CocycleTable, is_cocycle
from .quandle import _rows

DATA_DIR = Path(__file__).parent / "data"


class PDError(ValueError):
    pass


class Crossing(NamedTuple):
    o_in: int
    o_out: int
    u_in: int
    u_out: int
    sign: int


@dataclass(frozen=True)
class KnotDiagram:
    crossings: tuple[Crossing, ...]

    def __post_init__(self):
        object.__setattr__(self, "crossings", tuple(Crossing(*c) for c in self.crossings))
        _validate(self.crossings)
        arcs = _arcs(self.crossings)
        object.__setattr__(self, "_arc_of", arcs)

    @property
    def edges(self) -> list[int]:
        return sorted({e for c in self.crossings for e in c[:4]})

    @property
    def n_arcs(self) -> int:
        return max(self._arc_of.values()) + 1 if self._arc_of else 1

    def arc(self, edge: int) -> int:
        return self._arc_of[edge]

    def writhe(self) -> int:
        return sum(c.sign for c in self.crossings)

    def __len__(self):
        return len(self.crossings)


def _validate(crossings):
    incoming: dict[int, int] = {}
    outgoing: dict[int, int] = {}
    uses: dict[int, int] = {}
    for k, c in enumerate(crossings):
        if c.sign not in (1, -1):
            raise PDError(f"crossing {k}: sign must be +1 or -1")
        for e in c[:4]:
            uses[e] = uses.get(e, 0) + 1
            if uses[e] > 2:
                raise PDError(f"edge {e} is used more than twice")
        for e in (c.o_in, c.u_in):
            if e in incoming:
                raise PDError(f"edge {e} enters two crossings")
            incoming[e] = k
        for e in (c.o_out, c.u_out):
            if e in outgoing:
                raise PDError(f"edge {e} leaves two crossings")
            outgoing[e] = k
    dangling = sorted(set(incoming) ^ set(outgoing))
    if dangling:
        raise PDError(f"dangling edge {dangling[0]}")
    if not crossings:
        return
    # the diagram must be a single closed strand
    nxt = {}
    for c in crossings:
        nxt[c.o_in] = c.o_out
        nxt[c.u_in] = c.u_out
    start = min(nxt)
    seen = {start}
    e = nxt[start]
    while e != start:
        seen.add(e)
        e = nxt[e]
    if len(seen) != len(nxt):
        raise PDError("diagram has more than one component")


def _arcs(crossings):
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for c in crossings:
        for e in c[:4]:
            find(e)
        a, b = find(c.o_in), find(c.o_out)
        if a != b:
            parent[max(a, b)] = min(a, b)
    roots = sorted({find(e) for e in parent})
    index = {r: i for i, r in enumerate(roots)}
    return {e: index[find(e)] for e in parent}


# parsing ------------------------------------------------------------------------

_SIGNS = {"+": 1, "+1": 1, "1": 1, "-": -1, "-1": -1, "−": -1}


def parse_pd(text: str) -> KnotDiagram:
    """Lines ``X o_in o_out u_in u_out s`` with s in {+, -}; '#' starts a comment."""
    crossings = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 6 or parts[0] != "X" or parts[5] not in _SIGNS:
            raise PDError(f"line {lineno}: expected 'X o_in o_out u_in u_out s', got {line!r}")
        try:
            labels = [int(v) for v in parts[1:5]]
        except ValueError:
            raise PDError(f"line {lineno}: edge labels must be integers") from None
        crossings.append(Crossing(*labels, _SIGNS[parts[5]]))
    return KnotDiagram(tuple(crossings))


def format_pd(k: KnotDiagram) -> str:
    return "".join(f"X {c.o_in} {c.o_out} {c.u_in} {c.u_out} {'+' if c.sign > 0 else '-'}\n"
                   for c in k.crossings)


def read_pd(path) -> KnotDiagram:
    return parse_pd(Path(path).read_text())


def load_knot(name: str) -> KnotDiagram:
    """A bundled diagram: ``3_1``, ``4_1`` or ``8_5``."""
    path = DATA_DIR / f"{name}.pd"
    if not path.exists():
        raise KeyError(name)
    return read_pd(path)


def from_standard_pd(code: Iterable[Sequence[int]]) -> KnotDiagram:
    """Convert a table-style PD code [i, j, k, l] (i incoming under, labels counterclockwise).

    Edge labels are consecutive along the knot, so the over strand runs from l
    to j exactly when j follows l, which makes the crossing positive.
    """
    code = [tuple(x) for x in code]
    if not code:
        return KnotDiagram(())
    labels = sorted({v for x in code for v in x})
    lo, hi = labels[0], labels[-1]

    def follows(a, b):
        return a == b + 1 or (b == hi and a == lo)

    out = []
    for i, j, k, l in code:
        if follows(j, l):
            out.append(Crossing(l, j, i, k, 1))
        else:
            out.append(Crossing(j, l, i, k, -1))
    return KnotDiagram(tuple(out))


def braid_closure(word: Sequence[int], strands: int | None = None) -> KnotDiagram:
    """Closure of a braid word; ``i`` is the positive crossing sigma_i, ``-i`` its inverse."""
    if strands is None:
        strands = max((abs(g) for g in word), default=0) + 1
    current = list(range(strands))
    nxt = strands
    raw = []
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < strands - 1:
            raise PDError(f"generator {g} out of range for {strands} strands")
        left, right = current[i], current[i + 1]
        new_left, new_right = nxt, nxt + 1
        nxt += 2
        if g > 0:  # strand moving left passes over
            raw.append([right, new_left, left, new_right, 1])
        else:
            raw.append([left, new_right, right, new_left, -1])
        current[i], current[i + 1] = new_left, new_right
    rename = {e: e for e in range(nxt)}
    for p, e in enumerate(current):
        rename[e] = p
    used = sorted({rename[e] for c in raw for e in c[:4]})
    compact = {e: k for k, e in enumerate(used)}
    return KnotDiagram(tuple(Crossing(*(compact[rename[e]] for e in c[:4]), c[4]) for c in raw))


# Reidemeister moves used by the invariance harness --------------------------

def _fresh(k: KnotDiagram, count: int) -> list[int]:
    top = max(k.edges, default=-1)
    return list(range(top + 1, top + 1 + count))


def _rename_in(crossings, edge, new):
    """Make ``edge`` enter its crossing under the name ``new``."""
    out = []
    for c in crossings:
        c = list(c)
        if c[0] == edge:
            c[0] = new
        if c[2] == edge:
            c[2] = new
        out.append(Crossing(*c))
    return out


def add_kink(k: KnotDiagram, edge: int, sign: int = 1, over_first: bool = False) -> KnotDiagram:
    """Reidemeister I: a curl inserted on ``edge``."""
    f, g = _fresh(k, 2)
    crossings = _rename_in(k.crossings, edge, g)
    if over_first:
        kink = Crossing(edge, f, f, g, sign)
    else:
        kink = Crossing(f, g, edge, f, sign)
    return KnotDiagram(tuple(crossings) + (kink,))


def add_bigon(k: KnotDiagram, over_edge: int, under_edge: int, sign: int = 1) -> KnotDiagram:
    """Reidemeister II: push ``over_edge`` across ``under_edge``, adding two crossings of opposite sign."""
    if over_edge == under_edge:
        raise ValueError("a bigon needs two different edges")
    a1, a2, b1, b2 = _fresh(k, 4)
    crossings = _rename_in(_rename_in(k.crossings, over_edge, a2), under_edge, b2)
    first = Crossing(over_edge, a1, under_edge, b1, sign)
    second = Crossing(a1, a2, b1, b2, -sign)
    return KnotDiagram(tuple(crossings) + (first, second))


# colorings -------------------------------------------------------------------------

def _relations(k: KnotDiagram):
    """(source arc, over arc, target arc) with color(target) = color(source) * color(over)."""
    rel = []
    for c in k.crossings:
        over = k.arc(c.o_in)
        if c.sign > 0:
            rel.append((k.arc(c.u_in), over, k.arc(c.u_out)))
        else:
            rel.append((k.arc(c.u_out), over, k.arc(c.u_in)))
    return rel


def colorings(k: KnotDiagram, q) -> list[tuple[int, ...]]:
    """All arc colorings (tuples indexed by arc) in lexicographic order."""
    T = _rows(q)
    n = len(T)
    na = k.n_arcs
    inv = [[0] * n for _ in range(n)]  # inv[y][z] = x with x*y = z
    for x in range(n):
        for y in range(n):
            inv[y][T[x][y]] = x
    rels = _relations(k)
    touching = [[] for _ in range(na)]
    for r in rels:
        for a in set(r):
            touching[a].append(r)
    color = [-1] * na
    out = []

    def assign(a, v, trail):
        stack = [(a, v)]
        while stack:
            a, v = stack.pop()
            if color[a] >= 0:
                if color[a] != v:
                    return False
                continue
            color[a] = v
            trail.append(a)
            for s, o, t in touching[a]:
                cs, co, ct = color[s], color[o], color[t]
                if co < 0:
                    continue
                if cs >= 0:
                    stack.append((t, T[cs][co]))
                elif ct >= 0:
                    stack.append((s, inv[co][ct]))
        return True

    def rec(a):
        while a < na and color[a] >= 0:
            a += 1
        if a == na:
            out.append(tuple(color))
            return
        for v in range(n):
            trail: list[int] = []
            if assign(a, v, trail):
                rec(a + 1)
            for b in trail:
                color[b] = -1

    rec(0)
    return sorted(out)


def colorings_brute_force(k: KnotDiagram, q) -> list[tuple[int, ...]]:
    T = _rows(q)
    rels = _relations(k)
    return [c for c in product(range(len(T)), repeat=k.n_arcs)
            if all(T[c[s]][c[o]] == c[t] for s, o, t in rels)]


# group ring --------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupRingElement:
    """sum_k coeffs[k] t^k in Z[Z_m], the coefficient group written multiplicatively."""

    modulus: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs) + [0] * (self.modulus - len(self.coeffs))
        if len(c) != self.modulus:
            raise ValueError("too many coefficients for the modulus")
        object.__setattr__(self, "coeffs", tuple(c))

    @classmethod
    def from_terms(cls, modulus: int, terms: dict[int, int]) -> "GroupRingElement":
        c = [0] * modulus
        for k, v in terms.items():
            c[k % modulus] += v
        return cls(modulus, tuple(c))

    def augmentation(self) -> int:
        return sum(self.coeffs)

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{c}{mono}")
        return " + ".join(parts) if parts else "0"

    @classmethod
    def parse(cls, text: str, modulus: int) -> "GroupRingElement":
        terms: dict[int, int] = {}
        for part in text.replace(" ", "").split("+"):
            m = re.fullmatch(r"(\d*)(?:\*?t(?:\^(\d+))?)?", part)
            if not part or not m:
                raise ValueError(f"cannot parse group ring term {part!r}")
            coef, exp = m.group(1), m.group(2)
            has_t = "t" in part
            k = (int(exp) if exp else 1) if has_t else 0
            terms[k] = terms.get(k, 0) + (int(coef) if coef else 1)
        return cls.from_terms(modulus, terms)


def cocycle_invariant(k: KnotDiagram, q, phi: CocycleTable) -> GroupRingElement:
    """Phi_phi(K) = sum over colorings of prod over crossings of t^(sign * phi(x, y))."""
    check = is_cocycle(q, phi)
    if not check:
        raise ValueError(f"not a 2-cocycle: {check.condition} fails at {check.witness}")
    m = phi.modulus
    counts = [0] * m
    rels = _relations(k)
    signs = [c.sign for c in k.crossings]
    for col in colorings(k, q):
        e = 0
        for (s, o, _t), sg in zip(rels, signs):
            e += sg * phi(col[s], col[o])
        counts[e % m] += 1
    return GroupRingElement(m, tuple(counts))


class EquivalenceReport(NamedTuple):
    equal: bool
    counts: tuple[int, int]
    invariants: tuple[GroupRingElement, GroupRingElement] | None


def reidemeister_equivalence_check(k1: KnotDiagram, k2: KnotDiagram, q, phi: CocycleTable | None = None) -> EquivalenceReport:
    """Compare coloring counts (and cocycle invariants when phi is given) of two diagrams."""
    c1, c2 = len(colorings(k1, q)), len(colorings(k2, q))
    invs = None
    equal = c1 == c2
    if phi is not None:
        invs = (cocycle_invariant(k1, q, phi), cocycle_invariant(k2, q, phi))
        equal = equal and invs[0] == invs[1]
    return EquivalenceReport(equal, (c1, c2), invs)
