import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from nijrank.exterior import JacobiError, LieAlgebra
from nijrank.salamon import (
    SalamonSyntaxError,
    algebra_from_json,
    algebra_to_json,
    format_salamon,
    load_algebra,
    parse_salamon,
)


def test_parse_examples():
    g = parse_salamon("(0,0,12,13,23,14)")
    assert g.dim == 6
    assert [dict(s) for s in g.structure] == [{}, {}, {(1, 2): 1}, {(1, 3): 1}, {(2, 3): 1}, {(1, 4): 1}]
    assert all(not s for s in parse_salamon("(0,0,0,0,0,0)").structure)
    h = parse_salamon("(0, 0, 12, 13, 14 + 23, 34 − 25)")
    assert h.structure[4] == {(1, 4): 1, (2, 3): 1}
    assert h.structure[5] == {(3, 4): 1, (2, 5): -1}


def test_rational_and_repeated_terms():
    g = parse_salamon("(0,0,-1/2*12,12+2*13)", check=False)
    assert g.structure[2] == {(1, 2): Fraction(-1, 2)}
    assert format_salamon(parse_salamon("(0,0,12+12)")) == "(0,0,2*12)"


def test_format_examples():
    assert format_salamon(LieAlgebra(6, [{}] * 6)) == "(0,0,0,0,0,0)"
    assert format_salamon(LieAlgebra(4, [{}, {}, {}, {(2, 3): -1}])) == "(0,0,0,-23)"
    assert format_salamon(parse_salamon("(0,0,12,13,14+23,34-25)")) == "(0,0,12,13,14+23,-25+34)"


@pytest.mark.parametrize(
    "text, position, fragment",
    [
        ("(0,0,11)", 5, "repeated index"),
        ("(0,0,21)", 5, "not increasing"),
        ("(0,0,14)", 5, "out of range"),
        ("(0,0,12", 7, "end of input"),
        ("0,0,12)", 0, "expected '('"),
        ("(0,0,1a)", 5, "two digits"),
        ("(0,0,12,,13)", 8, "expected a term"),
        ("(0,0,1/0*12)", 7, "zero denominator"),
    ],
)
def test_syntax_errors(text, position, fragment):
    with pytest.raises(SalamonSyntaxError) as info:
        parse_salamon(text)
    assert info.value.position == position
    assert fragment in str(info.value)


def test_jacobi_checked():
    with pytest.raises(JacobiError):
        parse_salamon("(0,0,0,0,12,35)")
    assert parse_salamon("(0,0,0,0,12,35)", check=False).dim == 6


def test_round_trip_catalog(catalog):
    for entry in catalog:
        text = format_salamon(entry.algebra)
        assert parse_salamon(text) == entry.algebra
        assert format_salamon(parse_salamon(text)) == text


@st.composite
def algebras(draw):
    # random (possibly non-Jacobi) structure constants; the grammar does not care
    n = draw(st.integers(1, 9))
    pairs = [(k, l) for k in range(1, n + 1) for l in range(k + 1, n + 1)]
    coef = st.fractions(min_value=-3, max_value=3, max_denominator=4).filter(bool)
    structure = []
    for _ in range(n):
        if not pairs:
            structure.append({})
            continue
        structure.append(draw(st.dictionaries(st.sampled_from(pairs), coef, max_size=3)))
    return LieAlgebra(n, structure)


@given(algebras())
def test_parse_format_identity(g):
    text = format_salamon(g)
    back = parse_salamon(text, check=False)
    assert back == g
    assert format_salamon(back) == text


@given(algebras())
def test_json_round_trip(g):
    data = json.loads(json.dumps(algebra_to_json(g)))
    assert algebra_from_json(data, check=False) == g


def test_json_format_and_dispatch():
    text = '{"dim": 4, "d": {"4": [{"idx": [2, 3], "c": "-1"}]}}'
    assert format_salamon(load_algebra(text)) == "(0,0,0,-23)"
    assert format_salamon(load_algebra("(0,0,0,-23)")) == "(0,0,0,-23)"
    big = algebra_from_json({"dim": 10, "d": {"10": [{"idx": [1, 9], "c": "1"}]}})
    assert big.dim == 10
    with pytest.raises(ValueError):
        format_salamon(big)
