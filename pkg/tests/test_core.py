"""Core arithmetic: exact polynomials, Laurent support, truncated series.

Expected values below are frozen from hand expansion, never from the
code under test.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qchar.core import (
    NovikovSeries,
    Polynomial,
    VariableSet,
    binomial,
    grevlex_key,
    poly_arith,
    poly_substitute,
    series_truncate,
)

XY = VariableSet(["x", "y"])
LX = VariableSet(["x"], laurent=[True])


def P(vars, name):
    return Polynomial.var(vars, name)


def test_binomial_small_table():
    # C(5, 2) = 10, C(4, 0) = 1, C(0, 0) = 1
    assert binomial(5, 2) == 10
    assert binomial(4, 0) == 1
    assert binomial(0, 0) == 1
    assert isinstance(binomial(5, 2), Fraction)


def test_binomial_out_of_range_is_zero():
    assert binomial(3, -1) == 0
    assert binomial(3, 4) == 0
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_binomial_pascal_rule():
    for n in range(1, 31):
        for k in range(0, n + 1):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_grevlex_order_three_variables():
    # Degree-2 monomials in x > y > z, ascending:
    # z^2 < yz < xz < y^2 < xy < x^2
    monos = [(2, 0, 0), (1, 1, 0), (0, 2, 0), (1, 0, 1), (0, 1, 1), (0, 0, 2)]
    ordered = sorted(monos, key=grevlex_key)
    assert ordered == [(0, 0, 2), (0, 1, 1), (1, 0, 1), (0, 2, 0), (1, 1, 0), (2, 0, 0)]


def test_grevlex_grades_by_total_degree_first():
    assert grevlex_key((0, 3)) > grevlex_key((2, 0))


def test_square_of_one_plus_x():
    x = P(XY, "x")
    p = (1 + x) ** 2
    assert p == 1 + 2 * x + x * x


def test_laurent_inverse_cancels():
    x = P(LX, "x")
    xinv = Polynomial(LX, {(-1,): Fraction(1)})
    assert xinv * x == Polynomial.const(LX, 1)
    assert x ** -1 == xinv


def test_negative_exponent_rejected_without_laurent_flag():
    with pytest.raises(ValueError):
        Polynomial(XY, {(-1, 0): Fraction(1)})


def test_cube_of_one_minus_y():
    y = P(XY, "y")
    p = (1 - y) ** 3
    # 1 - 3y + 3y^2 - y^3, expanded by hand
    assert p == 1 - 3 * y + 3 * y * y - y ** 3


def test_substitute_square():
    x, y = P(XY, "x"), P(XY, "y")
    p = x ** 2
    q = p.substitute({"x": 1 - y})
    assert q == 1 - 2 * y + y ** 2


def test_substitute_identity():
    x = P(XY, "x")
    assert x.substitute({"x": x}) == x


def test_substitute_unbound_variable_raises():
    x, y = P(XY, "x"), P(XY, "y")
    with pytest.raises(ValueError):
        (x * y).substitute({"x": x})


def test_substitute_laurent_needs_unit_value():
    x = P(LX, "x")
    p = x ** -1
    # x -> x^2 sends x^-1 to x^-2
    assert p.substitute({"x": x ** 2}) == x ** -2
    with pytest.raises(ValueError):
        p.substitute({"x": x + 1})


def test_poly_arith_dispatch():
    x = P(XY, "x")
    assert poly_arith(x, x, "add") == 2 * x
    assert poly_arith(x, 1, "sub") == x - 1
    assert poly_arith(x, x, "mul") == x ** 2
    assert poly_arith(x, 3, "pow") == x ** 3
    with pytest.raises(ValueError):
        poly_arith(x, x, "div")


def test_hand_derived_plane_curve_relation_at_x_zero():
    # F(x, y) = (1-x)^2 - (1-x)(1-y) + x(1-y)^2 specializes to y at x = 0.
    x, y = P(XY, "x"), P(XY, "y")
    f = (1 - x) ** 2 - (1 - x) * (1 - y) + x * (1 - y) ** 2
    assert f.substitute({"x": Polynomial.zero(XY), "y": y}) == y


def test_leading_term_grevlex():
    x, y = P(XY, "x"), P(XY, "y")
    f = x ** 2 - x * y + y ** 2
    mono, coeff = f.leading()
    assert mono == (2, 0) and coeff == 1


def test_polynomial_render_descending():
    x, y = P(XY, "x"), P(XY, "y")
    f = y ** 2 - 2 * x + Polynomial.const(XY, Fraction(1, 3))
    assert f.render() == "y^2 - 2*x + 1/3"


def test_render_zero():
    assert Polynomial.zero(XY).render() == "0"
    assert Polynomial.const(XY, 0).render() == "0"


def test_render_laurent_exponent():
    x = P(LX, "x")
    assert (x ** -1).render() == "x^-1"


# ---------------------------------------------------------------- series

MAIN_X = VariableSet(["x"])
QQ = VariableSet(["Q"])


def series_gens(trunc):
    x = NovikovSeries.gen(MAIN_X, QQ, trunc, "x")
    q = NovikovSeries.q_gen(MAIN_X, QQ, trunc, "Q")
    return x, q


def test_series_render_canonical():
    x, q = series_gens(2)
    s = 2 * x - 1 + q
    assert s.render() == "2*x - 1 + Q"


def test_series_render_orders_q_ascending():
    x, q = series_gens(3)
    s = x * q + x - q ** 2 + 1
    assert s.render() == "x + x*Q + 1 - Q^2"


def test_series_truncation_discards_high_q():
    x, q = series_gens(2)
    s = (1 + q) ** 5
    # only q-degrees 0..2 survive
    assert s == 1 + 5 * q + 10 * q ** 2


def test_series_truncate_lowers_order():
    x, q = series_gens(3)
    s = 1 + q + q ** 2 + q ** 3
    t = series_truncate(s, 1)
    assert t.trunc == 1
    assert t == NovikovSeries.const(MAIN_X, QQ, 1, 1) + NovikovSeries.q_gen(MAIN_X, QQ, 1, "Q")


def test_series_truncate_cannot_raise():
    x, q = series_gens(1)
    with pytest.raises(ValueError):
        series_truncate(x, 2)


def test_series_classical_part_and_tail():
    x, q = series_gens(2)
    s = x ** 2 + 3 * q * x - q ** 2
    assert s.classical_part() == Polynomial.var(MAIN_X, "x", 2)
    assert s.q_tail() == 3 * q * x - q ** 2
    assert s.q_tail().min_q_degree() == 1


def test_series_zero_at_truncation_means_empty():
    x, q = series_gens(1)
    s = q * q  # q-degree 2 dies at truncation 1
    assert s.is_zero()
    assert s.min_q_degree() is None


def test_series_mixed_ring_operations_raise():
    x1, _ = series_gens(1)
    x2, _ = series_gens(2)
    with pytest.raises(ValueError):
        x1 + x2


# ------------------------------------------------- property-based checks

fractions_st = st.fractions(
    min_value=Fraction(-5), max_value=Fraction(5), max_denominator=4
)


@st.composite
def polys(draw, vars=XY, max_terms=4, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        mono = tuple(draw(st.integers(0, max_exp)) for _ in vars.names)
        terms[mono] = draw(fractions_st)
    return Polynomial(vars, terms)


@settings(max_examples=60, deadline=None)
@given(polys(), polys(), polys())
def test_poly_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@st.composite
def novikov_series(draw, trunc=3):
    n = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n):
        mm = (draw(st.integers(0, 3)),)
        qm = (draw(st.integers(0, trunc)),)
        terms[(mm, qm)] = draw(fractions_st)
    return NovikovSeries(MAIN_X, QQ, trunc, terms)


@settings(max_examples=60, deadline=None)
@given(novikov_series(), novikov_series(), novikov_series())
def test_series_ring_axioms_at_fixed_truncation(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(novikov_series(), novikov_series(), st.integers(0, 3))
def test_truncation_is_a_ring_map(a, b, d):
    # dropping terms before or after multiplying agrees
    assert (a * b).truncate(d) == a.truncate(d) * b.truncate(d)
    assert (a + b).truncate(d) == a.truncate(d) + b.truncate(d)


@settings(max_examples=40, deadline=None)
@given(polys(), st.integers(0, 3))
def test_poly_to_series_round_trip_classical_part(p, trunc):
    s = NovikovSeries.from_polynomial(p, QQ, trunc)
    assert s.classical_part() == p
    assert poly_substitute(p, {"x": Polynomial.var(XY, "x"), "y": Polynomial.var(XY, "y")}) == p
