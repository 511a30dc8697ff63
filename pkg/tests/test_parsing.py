import pytest

from quivercy.errors import ParseError
from quivercy.parsing import parse_algebra_file

A2_TEXT = """\
# a comment
vertices: 1 2
arrows:
  a: 1 -> 2
"""

SQUARE_TEXT = """\
vertices: 11 12 21 22
arrows:
  a1: 11 -> 21
  a2: 12 -> 22
  b1: 11 -> 12
  b2: 21 -> 22
relations:
  a1*b2 - b1*a2
"""

ZERO_TEXT = """\
vertices: 1 2 3
arrows:
  a: 1 -> 2
  b: 2 -> 3
zero:
  a*b
"""


def test_parse_a2():
    af = parse_algebra_file(A2_TEXT)
    assert af.vertices == [1, 2]
    assert af.arrows == [("a", 1, 2)]
    alg = af.build(name="a2")
    assert alg.dim == 3


def test_parse_relations():
    af = parse_algebra_file(SQUARE_TEXT)
    alg = af.build()
    assert alg.dim == 9


def test_parse_zero_section():
    af = parse_algebra_file(ZERO_TEXT)
    alg = af.build()
    assert alg.dim == 5


def test_parse_rational_coefficients():
    text = """\
vertices: 1 2
arrows:
  a: 1 -> 2
  b: 1 -> 2
relations:
  2/3*a - b
"""
    alg = parse_algebra_file(text).build()
    assert alg.dim == 3


def test_parse_error_reports_location():
    with pytest.raises(ParseError) as err:
        parse_algebra_file("vertices: 1 2\narrows:\n  a: 1 --> 2\n")
    assert err.value.line is not None
    with pytest.raises(ParseError):
        parse_algebra_file("arrows:\n  a: 1 -> 2\n")
    with pytest.raises(ParseError):
        parse_algebra_file("vertices: 1 1\n")


def test_parse_undeclared_vertex():
    with pytest.raises(ParseError):
        parse_algebra_file("vertices: 1 2\narrows:\n  a: 1 -> 3\n")


def test_parse_unknown_label_in_relation():
    af = parse_algebra_file("vertices: 1 2\narrows:\n  a: 1 -> 2\nrelations:\n  c*d\n")
    with pytest.raises(ParseError):
        af.relations()
