import numpy as np
import pytest
from hypothesis import given, strategies as st

from weylcode import formats as fm
from weylcode.errors import ParseError
from weylcode.graphtransfer import DiagramPath
from weylcode.tableaux import Tableau


def test_code_roundtrip():
    assert fm.format_code([1, 1, 3, 1]) == "1,1,3,1"
    assert fm.parse_code("1, 1,3,1").tolist() == [1, 1, 3, 1]


@pytest.mark.parametrize("line", ["1,,2", "1,x", "", "1,3"])
def test_parse_code_errors(line):
    with pytest.raises(ParseError):
        fm.parse_code(line, 4)


def test_parse_error_reports_line():
    with pytest.raises(ParseError, match="line 7"):
        fm.parse_reals("0.1,abc", 7)


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=20))
def test_reals_roundtrip_exact(values):
    text = fm.format_reals(values)
    assert fm.parse_reals(text).tolist() == [float(v) for v in values]


def test_reals_use_17_digits():
    assert fm.format_reals([0.1]) == "0.10000000000000001"


def test_tableau_formats():
    t = Tableau(((1, 3), (2,)))
    assert fm.format_tableau(t) == "1,3\n2"
    assert fm.parse_tableau("1,3\n2\n") == t
    assert fm.parse_tableau("[[1,3],[2]]") == t
    assert fm.tableau_literal(t) == "[[1,3],[2]]"
    real = Tableau(((0.1, 0.7), (0.3,)))
    assert fm.parse_tableau(fm.format_tableau(real)) == real
    with pytest.raises(ParseError):
        fm.parse_tableau("[[1,2],")
    with pytest.raises(ParseError):
        fm.parse_tableau("1\n2,3")


def test_young_path_format():
    p = DiagramPath(((), (1,), (2,), (2, 1)))
    assert fm.format_young_path(p) == "∅;1;2;2,1"
    assert fm.parse_young_path("∅;1;2;2,1") == p


def test_iter_lines_skips_blanks_and_comments():
    assert list(fm.iter_lines("# c\n\n1,2\n 3 \n")) == [(3, "1,2"), (4, "3")]
