"""Text formats shared by the library and the command line.

Tables: first line ``n``, then ``n`` rows of space-separated 0-based entries,
row ``a`` listing ``a*0 .. a*(n-1)``.  Cocycles: one ``x y -> v`` (or
``x y z -> v``) line per nonzero value, with an optional ``# mod m`` line.
``#`` starts a comment everywhere.
"""
from __future__ import annotations

import re
from pathlib import Path

from .quandle import CayleyTable, MalformedTableError


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def format_table(t: CayleyTable) -> str:
    n = t.order
    return "\n".join([str(n)] + [" ".join(map(str, r)) for r in t.rows]) + "\n"


def parse_table(text: str, kind: str = "raw") -> CayleyTable:
    lines = list(_content_lines(text))
    if not lines:
        raise MalformedTableError("empty table file")
    lineno, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise MalformedTableError(f"line {lineno}: expected the order, got {first!r}") from None
    if n < 0:
        raise MalformedTableError(f"line {lineno}: negative order")
    body = lines[1:]
    if len(body) != n:
        raise MalformedTableError(f"expected {n} rows, found {len(body)}")
    rows = []
    for lineno, line in body:
        try:
            rows.append(tuple(int(v) for v in line.split()))
        except ValueError:
            raise MalformedTableError(f"line {lineno}: non-integer entry") from None
    return CayleyTable(tuple(rows), kind)


def parse_tables(text: str, kind: str = "raw") -> list[CayleyTable]:
    """Several tables separated by blank lines (the ``enumerate`` output)."""
    out = []
    for block in re.split(r"\n\s*\n", text):
        if any(True for _ in _content_lines(block)):
            out.append(parse_table(block, kind))
    return out


def read_table(path, kind: str = "raw") -> CayleyTable:
    return parse_table(Path(path).read_text(), kind)


_COC_LINE = re.compile(r"^((?:-?\d+\s+){1,2}-?\d+)\s*->\s*(-?\d+)$")
_MOD_HINT = re.compile(r"#\s*mod\s+(\d+)", re.IGNORECASE)


def parse_cocycle_lines(text: str) -> tuple[int | None, dict[tuple[int, ...], int]]:
    """Return ``(modulus hint or None, {tuple: value})``."""
    modulus = None
    for raw in text.splitlines():
        m = _MOD_HINT.search(raw)
        if m:
            modulus = int(m.group(1))
    values: dict[tuple[int, ...], int] = {}
    degree = None
    for lineno, line in _content_lines(text):
        m = _COC_LINE.match(line)
        if not m:
            raise ValueError(f"line {lineno}: expected 'x y -> v' or 'x y z -> v', got {line!r}")
        key = tuple(int(v) for v in m.group(1).split())
        if degree is None:
            degree = len(key)
        elif len(key) != degree:
            raise ValueError(f"line {lineno}: mixed cocycle degrees")
        if key in values:
            raise ValueError(f"line {lineno}: duplicate entry for {key}")
        values[key] = int(m.group(2))
    return modulus, values


def format_cocycle_lines(values: dict[tuple[int, ...], int], modulus: int, skip_zero: bool = True) -> str:
    lines = [f"# mod {modulus}"]
    for key in sorted(values):
        v = values[key] % modulus
        if v or not skip_zero:
            lines.append(" ".join(map(str, key)) + f" -> {v}")
    return "\n".join(lines) + "\n"
