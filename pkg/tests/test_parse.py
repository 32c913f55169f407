"""Grammar, error positions, and the render/parse round trip."""

import random
from fractions import Fraction

import pytest

from qchar.catalog import ring
from qchar.parse import (
    BinOp,
    Num,
    ParseError,
    Pow,
    Var,
    evaluate,
    parse_element,
    parse_expression,
)


def test_number_and_fraction():
    node = parse_expression("5")
    assert isinstance(node, Num) and node.value == 5
    node = parse_expression("5/12")
    assert node.value == Fraction(5, 12)


def test_binary_structure():
    node = parse_expression("h1^2*h2 - q2")
    assert isinstance(node, BinOp) and node.op == "-"
    left = node.left
    assert isinstance(left, BinOp) and left.op == "*"
    assert isinstance(left.left, Pow) and left.left.exponent == 2
    assert isinstance(left.left.base, Var) and left.left.base.name == "h1"
    assert isinstance(node.right, Var) and node.right.name == "q2"


def test_parenthesized_power():
    node = parse_expression("(1 - y)^3")
    assert isinstance(node, Pow) and node.exponent == 3
    inner = node.base
    assert isinstance(inner, BinOp) and inner.op == "-"


def test_leading_sign():
    R = ring("qh_pn", 2, trunc=1)
    assert parse_element("-h + h", R).is_zero()
    assert parse_element("+h", R) == R.generator("h")
    # the sign binds the first term only
    assert parse_element("-h + q", R) == R.q_element("q") - R.generator("h")


def test_whitespace_insensitive():
    R = ring("qk_pn", 1, trunc=2)
    assert parse_element("2*x-1+Q", R) == parse_element(" 2 * x - 1 + Q ", R)


@pytest.mark.parametrize("src,pos", [
    ("x +", 4),
    ("2h", 2),        # no implicit multiplication
    ("h^-1", 3),      # exponents are nonnegative
    ("(x", 3),
    ("", 1),
    ("x $", 3),
    ("x / y", 3),     # "/" only inside rational literals
])
def test_error_positions(src, pos):
    with pytest.raises(ParseError) as err:
        parse_expression(src)
    assert err.value.position == pos


def test_zero_denominator():
    with pytest.raises(ParseError):
        parse_expression("1/0")


def test_unknown_identifier():
    R = ring("qh_fl", 3, trunc=1)
    with pytest.raises(ParseError) as err:
        parse_element("h3", R)
    assert "h3" in str(err.value)
    assert err.value.position == 1


def test_evaluate_in_flag_ring():
    R = ring("qh_fl", 3, trunc=2)
    expr = parse_element("h1^2*h2 - q2", R)
    direct = R.generator("h1") ** 2 * R.generator("h2") - R.q_element("q2")
    assert expr == direct


def test_dual_hyperplane_relation_evaluates_to_zero():
    # (1 - y)^3 is a defining relation of the (3,3) classical K-ring
    R = ring("k_milnor", 3, 3, trunc=0)
    assert parse_element("(1 - y)^3", R).is_zero()


def test_reduction_example():
    R = ring("qk_pn", 1, trunc=2)
    assert (parse_element("x", R) * parse_element("x", R)).render() \
        == "2*x - 1 + Q"


def test_constant_round_trip():
    R = ring("qh_pn", 1, trunc=1)
    assert parse_element("0", R).is_zero()
    assert parse_element("1", R) == R.one()


def test_render_parse_round_trip():
    rng = random.Random(17)
    rings = [ring("qh_pn", 2, trunc=2), ring("qk_pn", 1, trunc=2),
             ring("qh_fl", 3, trunc=1), ring("qk_milnor", 3, 3, trunc=1)]
    for R in rings:
        for _ in range(6):
            e = R.reduce(R.random_series(rng))
            assert parse_element(e.render(), R) == e


def test_evaluate_rejects_foreign_node():
    R = ring("qh_pn", 1, trunc=1)
    with pytest.raises(TypeError):
        evaluate("not a node", R)
