"""Command-line entry point: ``quandlekit <subcommand> ...``.

Exit status is 0 on success, 1 on a domain error (bad table, failed axiom,
invalid cocycle, ...) and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import constructions as C
from .canonical import are_isomorphic
from .cohomology import CocycleTable, cocycle_space, homology
from .enumeration import FILTERS, enumerate_alexander, enumerate_quandles
from .extensions import abelian_extension, extract_cocycle
from .io import format_cocycle_lines, format_table, parse_cocycle_lines, parse_table
from .knots import DATA_DIR, cocycle_invariant, colorings, read_pd
from .loops import (associativity_witness, find_identity, is_commutative, moufang_check,
                    quasigroup_violations, Loop)
from .quandle import classify, quandle_violations


class DomainError(Exception):
    pass


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _read_table(path: str, kind: str = "raw"):
    return parse_table(_read_text(path), kind)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# construct --------------------------------------------------------------------------

def _construct(args):
    kind, params = args.kind, args.params
    ints = [int(p) for p in params]

    def need(k):
        if len(ints) < k:
            raise DomainError(f"{kind} needs {k} integer parameter(s)")

    if kind == "trivial":
        need(1)
        t = C.trivial(ints[0])
    elif kind == "dihedral":
        need(1)
        t = C.dihedral(ints[0])
    elif kind == "alexander":
        need(2)
        t = C.alexander(C.AbelianGroupSpec.cyclic(ints[0]), C.AutomorphismSpec.unit(ints[0], ints[1]))
    elif kind == "alexander-poly":
        need(3)
        t = C.alexander_poly(ints[0], ints[1:])
    elif kind == "galkin":
        need(1)
        a = C.AbelianGroupSpec.cyclic(ints[0])
        t = C.galkin(a, *(ints[1:3] + [0] * (2 - len(ints[1:3]))))
    elif kind == "coxeter":
        need(2)
        t = C.coxeter_fp(ints[0], dim=ints[1])
    elif kind == "conjugation-symmetric":
        need(1)
        t = C.conjugation(C.symmetric_group(ints[0]))
    elif kind == "core-cyclic":
        need(1)
        t = C.core(C.cyclic_group(ints[0]))
    elif kind == "zassenhaus":
        from .loops import zassenhaus81

        t = zassenhaus81().table
    else:  # argparse restricts the choices
        raise DomainError(f"unknown construction {kind}")
    _emit(format_table(t), args.output)
    return 0


CONSTRUCTIONS = ("trivial", "dihedral", "alexander", "alexander-poly", "galkin", "coxeter",
                 "conjugation-symmetric", "core-cyclic", "zassenhaus")


# check / iso ------------------------------------------------------------------------

def _check(args):
    t = _read_table(args.file)
    bad = quandle_violations(t, limit=args.max_violations)
    if bad:
        print("quandle: invalid")
        for v in bad:
            print(f"violation: {v.axiom} at {' '.join(map(str, v.witness))}")
        return 1
    print("quandle: valid")
    print(f"order: {t.order}")
    for line in classify(t.with_kind("quandle")).lines():
        print(line)
    return 0


def _iso(args):
    a, b = _read_table(args.file1), _read_table(args.file2)
    f = are_isomorphic(a, b)
    if f is None:
        print("not isomorphic")
    else:
        print("isomorphic")
        print("map: " + " ".join(map(str, f.images)))
    return 0


# enumerate ------------------------------------------------------------------------------

def _emit_tables(tables, count_only, out):
    if count_only:
        _emit(f"{len(tables)}\n", out)
    else:
        _emit("\n".join(format_table(t) for t in tables), out)


def _enumerate(args):
    res = enumerate_quandles(args.order, args.filter, jobs=args.jobs, allow_long=args.allow_long)
    _emit_tables(res.tables, args.count_only, args.output)
    return 0


def _enumerate_alexander(args):
    res = enumerate_alexander(args.order)
    _emit_tables(res.tables, args.count_only, args.output)
    return 0


# cohomology / extensions -----------------------------------------------------------------

def _cohomology(args):
    q = _read_table(args.file)
    if quandle_violations(q, limit=1):
        raise DomainError("input is not a quandle")
    if args.homology is not None:
        print(homology(q, args.homology, args.theory))
        return 0
    sp = cocycle_space(q, args.degree, args.mod)
    factors = " ".join(map(str, sp.quotient)) if sp.quotient else "0"
    print(f"H^{args.degree}(X; Z_{args.mod}) invariant factors: {factors}")
    print(f"cocycles: {sp.cocycle_count}")
    print(f"coboundaries: {sp.coboundary_count}")
    if args.basis:
        for k, c in enumerate(sp.cocycles):
            print(f"# cocycle generator {k}")
            sys.stdout.write(format_cocycle_lines(c.values, args.mod))
    return 0


def _load_cocycle(path, n, mod, degree=2):
    hint, values = parse_cocycle_lines(_read_text(path))
    m = mod if mod is not None else hint
    if m is None:
        raise DomainError("cocycle modulus unknown: pass --mod or add a '# mod m' line")
    if values and len(next(iter(values))) != degree:
        raise DomainError(f"expected a degree-{degree} cocycle")
    return CocycleTable(n, degree, m, values)


def _extend(args):
    q = _read_table(args.quandle)
    phi = _load_cocycle(args.cocycle, q.order, args.mod)
    _emit(format_table(abelian_extension(q, phi.modulus, phi)), args.output)
    return 0


def _int_list(text):
    return [int(v) for v in text.replace(",", " ").split()]


def _extract(args):
    e, x = _read_table(args.extension), _read_table(args.base)
    p = _int_list(args.map)
    section = _int_list(args.section) if args.section else None
    phi = extract_cocycle(e, x, p, section)
    _emit(format_cocycle_lines(phi.values, phi.modulus), args.output)
    return 0


# knots -------------------------------------------------------------------------------------

def _knot_path(name):
    p = Path(name)
    if p.exists() or name == "-":
        return name
    bundled = DATA_DIR / f"{name}.pd"
    if bundled.exists():
        return str(bundled)
    raise DomainError(f"no such knot file or bundled knot: {name}")


def _invariant(args):
    k = read_pd(_knot_path(args.knot)) if args.knot != "-" else None
    q = _read_table(args.quandle)
    if quandle_violations(q, limit=1):
        raise DomainError("input is not a quandle")
    if args.cocycle is None:
        print(f"colorings: {len(colorings(k, q))}")
        return 0
    phi = _load_cocycle(args.cocycle, q.order, args.mod)
    inv = cocycle_invariant(k, q, phi)
    print(inv)
    print(f"colorings: {inv.augmentation()}")
    return 0


# loops -------------------------------------------------------------------------------------

def _flag(v):
    return str(bool(v)).lower()


def _loop_check(args):
    t = _read_table(args.file)
    bad = quasigroup_violations(t)
    print(f"quasigroup: {_flag(not bad)}")
    if bad:
        print(f"witness: {bad[0][0]} {bad[0][1]}")
        return 0
    e = find_identity(t)
    print(f"loop: {_flag(e is not None)}" + (f" (identity {e})" if e is not None else ""))
    print(f"commutative: {_flag(is_commutative(t))}")
    w = associativity_witness(t)
    print(f"associative: {_flag(w is None)}" + (f" (witness {' '.join(map(str, w))})" if w else ""))
    if e is not None:
        rep = moufang_check(Loop(t.with_kind('loop'), e))
        for name, chk in zip(("moufang1", "moufang2", "moufang3"), rep):
            extra = f" (witness {' '.join(map(str, chk.witness))})" if chk.witness else ""
            print(f"{name}: {_flag(chk)}{extra}")
    return 0


# parser --------------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="quandlekit", description="Finite quandles, cohomology, knot invariants and loops.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("construct", help="print a constructed table")
    s.add_argument("kind", choices=CONSTRUCTIONS)
    s.add_argument("params", nargs="*", help="integer parameters of the construction")
    s.add_argument("-o", "--output")
    s.set_defaults(func=_construct)

    s = sub.add_parser("check", help="verify the quandle axioms and classify")
    s.add_argument("file", nargs="?", default="-")
    s.add_argument("--max-violations", type=int, default=10)
    s.set_defaults(func=_check)

    s = sub.add_parser("enumerate", help="quandles of a given order up to isomorphism")
    s.add_argument("--order", type=int, required=True)
    s.add_argument("--filter", choices=sorted(FILTERS), default="all")
    s.add_argument("--count-only", action="store_true")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--allow-long", action="store_true", help="permit order 9 (hours)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=_enumerate)

    s = sub.add_parser("enumerate-alexander", help="Alexander quandles of a given order up to isomorphism")
    s.add_argument("order", type=int)
    s.add_argument("--count-only", action="store_true")
    s.add_argument("-o", "--output")
    s.set_defaults(func=_enumerate_alexander)

    s = sub.add_parser("iso", help="test two tables for isomorphism")
    s.add_argument("file1")
    s.add_argument("file2")
    s.set_defaults(func=_iso)

    s = sub.add_parser("cohomology", help="cohomology with Z_m coefficients, or integral homology")
    s.add_argument("file")
    s.add_argument("--degree", type=int, choices=(2, 3), default=2)
    s.add_argument("--mod", type=int, default=2)
    s.add_argument("--basis", action="store_true", help="also print cocycle generators")
    s.add_argument("--homology", type=int, metavar="N", help="print H_N over Z instead")
    s.add_argument("--theory", choices=("rack", "quandle"), default="quandle")
    s.set_defaults(func=_cohomology)

    s = sub.add_parser("extend", help="abelian extension by a 2-cocycle")
    s.add_argument("quandle")
    s.add_argument("cocycle")
    s.add_argument("--mod", type=int)
    s.add_argument("-o", "--output")
    s.set_defaults(func=_extend)

    s = sub.add_parser("extract", help="read a 2-cocycle off an extension")
    s.add_argument("extension")
    s.add_argument("base")
    s.add_argument("--map", required=True, help="images of the projection, e.g. '0 1 2 3 0 1 2 3'")
    s.add_argument("--section", help="fiber labels of the extension's elements (searched if omitted)")
    s.add_argument("-o", "--output")
    s.set_defaults(func=_extract)

    s = sub.add_parser("invariant", help="coloring count and cocycle invariant of a knot")
    s.add_argument("--knot", required=True, help="PD file or bundled name (3_1, 4_1, 8_5)")
    s.add_argument("--quandle", required=True)
    s.add_argument("--cocycle")
    s.add_argument("--mod", type=int)
    s.set_defaults(func=_invariant)

    s = sub.add_parser("loop-check", help="quasigroup, loop and Moufang flags")
    s.add_argument("file", nargs="?", default="-")
    s.set_defaults(func=_loop_check)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (DomainError, ValueError, RuntimeError, AssertionError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


run = main


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
