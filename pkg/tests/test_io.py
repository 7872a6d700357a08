import pytest
from hypothesis import given, settings, strategies as st

from quandlekit import constructions as C
from quandlekit.io import format_cocycle_lines, format_table, parse_cocycle_lines, parse_table, parse_tables
from quandlekit.quandle import MalformedTableError


def test_table_round_trip():
    q = C.dihedral(5)
    assert parse_table(format_table(q)).rows == q.rows


def test_comments_and_blank_lines():
    text = "# R_3\n3\n0 2 1  # row 0\n\n2 1 0\n1 0 2\n"
    assert parse_table(text).rows == C.dihedral(3).rows


def test_malformed():
    with pytest.raises(MalformedTableError):
        parse_table("")
    with pytest.raises(MalformedTableError):
        parse_table("3\n0 2 1\n2 1 0\n")
    with pytest.raises(MalformedTableError):
        parse_table("2\n0 x\n1 1\n")


def test_parse_several_tables():
    text = format_table(C.trivial(2)) + "\n" + format_table(C.dihedral(3))
    ts = parse_tables(text)
    assert [t.order for t in ts] == [2, 3]


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 7), st.dictionaries(st.tuples(st.integers(0, 4), st.integers(0, 4)), st.integers(0, 6)))
def test_cocycle_lines_round_trip(m, values):
    vals = {k: v % m for k, v in values.items()}
    mod, back = parse_cocycle_lines(format_cocycle_lines(vals, m))
    assert mod == m
    assert back == {k: v for k, v in vals.items() if v}


def test_cocycle_lines_degree_three():
    mod, vals = parse_cocycle_lines("0 1 2 -> 1\n1 0 1 -> 2\n")
    assert mod is None and vals == {(0, 1, 2): 1, (1, 0, 1): 2}
