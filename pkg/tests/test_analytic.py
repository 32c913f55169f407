"""Series coefficients and quantum evaluation of characteristic classes."""

from fractions import Fraction

import pytest

from qchar.analytic import (
    EXP_NEG,
    OMEOX,
    XOME,
    UnivariateSeries,
    eval_deg2,
    eval_deg2_static,
    quantum_todd_factor,
    quantum_todd_pn,
    series_coeffs,
)
from qchar.catalog import ring

F = Fraction


# -------------------------------------------------------------- coefficients


def test_exp_neg_coeffs():
    assert series_coeffs("exp_neg", 2) == [1, -1, F(1, 2)]
    assert series_coeffs("exp_neg", 5)[5] == F(-1, 120)


def test_one_minus_exp_over_x_coeffs():
    assert series_coeffs("one_minus_exp_over_x", 3) == [1, F(-1, 2), F(1, 6), F(-1, 24)]


def test_x_over_one_minus_exp_coeffs():
    assert series_coeffs("x_over_one_minus_exp", 4) == [1, F(1, 2), F(1, 12), 0, F(-1, 720)]


def test_inverse_pair_product_is_one():
    N = 12
    a = series_coeffs("one_minus_exp_over_x", N)
    b = series_coeffs("x_over_one_minus_exp", N)
    for k in range(N + 1):
        conv = sum(a[i] * b[k - i] for i in range(k + 1))
        assert conv == (1 if k == 0 else 0)


def test_no_adjacent_zero_coeffs_in_named_tags():
    # the dynamic stopping rule leans on this: zero coefficients of the
    # named series are isolated
    for tag in ("exp_neg", "one_minus_exp_over_x", "x_over_one_minus_exp"):
        c = series_coeffs(tag, 20)
        for k in range(20):
            assert not (c[k] == 0 and c[k + 1] == 0)


def test_custom_series():
    s = UnivariateSeries("custom", [1, 0, F(3, 7)])
    assert s.coeff(0) == 1
    assert s.coeff(2) == F(3, 7)
    assert s.coeff(99) == 0
    assert s.is_finite() and s.length() == 3


def test_series_argument_validation():
    with pytest.raises(ValueError):
        UnivariateSeries("custom")
    with pytest.raises(ValueError):
        UnivariateSeries("exp_neg", [1, 2])
    with pytest.raises(ValueError):
        UnivariateSeries("cosh")
    with pytest.raises(ValueError):
        series_coeffs("exp_neg", -1)


# ---------------------------------------------------------------- evaluation


def test_exp_neg_on_line_frozen():
    R = ring("qh_pn", 1, trunc=1)
    e = eval_deg2(EXP_NEG, R.generator("h"), R, 1)
    assert e.render() == "-h - 1/6*h*q + 1 + 1/2*q"


def test_constant_series_evaluates_to_one():
    R = ring("qh_fl", 3, trunc=2)
    one = UnivariateSeries("custom", [1])
    alpha = R.generator("h1") + R.generator("h2").scale(F(5, 3))
    assert eval_deg2(one, alpha, R, 2) == R.one()


def test_classical_chern_character_of_plane():
    # trunc 0 turns quantum powers into nilpotent cup products
    R = ring("qh_pn", 2, trunc=0)
    h = R.generator("h")
    e = eval_deg2(EXP_NEG, h, R, 0)
    assert e == R.one() - h + (h * h).scale(F(1, 2))


def test_eval_rejects_non_linear_class():
    R = ring("qh_pn", 2, trunc=1)
    h = R.generator("h")
    with pytest.raises(ValueError):
        eval_deg2(EXP_NEG, h * h, R, 1)
    with pytest.raises(ValueError):
        eval_deg2(EXP_NEG, h + R.one(), R, 1)
    with pytest.raises(ValueError):
        eval_deg2(EXP_NEG, R.q_element("q"), R, 1)


def test_eval_rejects_truncation_mismatch():
    R = ring("qh_pn", 1, trunc=1)
    with pytest.raises(ValueError):
        eval_deg2(EXP_NEG, R.generator("h"), R, 2)


def test_dynamic_stop_matches_static_bound():
    for n, D in ((1, 2), (2, 2), (3, 1)):
        R = ring("qh_pn", n, trunc=D)
        h = R.generator("h")
        for f in (EXP_NEG, XOME):
            dyn = eval_deg2(f, h, R, D)
            stat = eval_deg2_static(f, h, R, D, (D + 1) * (n + 1))
            assert dyn == stat


# ------------------------------------------------------------- Todd classes


def test_todd_line_classical_limit():
    R = ring("qh_pn", 1, trunc=0)
    t = quantum_todd_pn(1, 0)
    assert t == R.one() + R.generator("h")


def test_todd_line_first_quantum_correction():
    t = quantum_todd_pn(1, 1)
    assert t.render() == "h + 1/12*h*q + 1 + 5/12*q"


def test_todd_reciprocal():
    for n, D in ((1, 2), (2, 1)):
        R = ring("qh_pn", n, trunc=D)
        t = quantum_todd_pn(n, D)
        inv = eval_deg2(OMEOX, R.generator("h"), R, D) ** (n + 1)
        assert t * inv == R.one()


def test_todd_factor_inverse_pair():
    R = ring("qh_fl", 3, trunc=1)
    hsum = R.generator("h1") + R.generator("h2")
    prod = eval_deg2(OMEOX, hsum, R, 1) * eval_deg2(XOME, hsum, R, 1)
    assert prod == R.one()


def test_todd_factor_zero_exponent_is_sum_factor():
    R = ring("qh_fl", 3, trunc=1)
    hsum = R.generator("h1") + R.generator("h2")
    assert quantum_todd_factor(1, R, 0, 1) == eval_deg2(XOME, hsum, R, 1)


def test_todd_factor_validation():
    R = ring("qh_fl", 3, trunc=1)
    with pytest.raises(ValueError):
        quantum_todd_factor(3, R, 3, 1)
    P = ring("qh_pn", 2, trunc=1)
    with pytest.raises(ValueError):
        quantum_todd_factor(1, P, 3, 1)


def test_todd_factor_classical_limit_is_cup_expansion():
    # at trunc 0 every quantum product is the cup product, so the factor
    # must equal the alternating-sum expansion computed by hand below
    R = ring("qh_fl", 3, trunc=0)
    got = quantum_todd_factor(1, R, 3, 0)
    h1 = R.generator("h1")
    hsum = h1 + R.generator("h2")
    left = eval_deg2(OMEOX, h1, R, 0) ** 3
    right = eval_deg2(XOME, hsum, R, 0)
    assert got == left * right
    # and the h1-factor itself matches a direct truncated expansion;
    # h1 is nilpotent at trunc 0, so six powers are plenty
    terms = R.zero()
    power = R.one()
    for k in range(7):
        terms = terms + power.scale(OMEOX.coeff(k))
        power = power * h1
    assert eval_deg2(OMEOX, h1, R, 0) == terms
    assert (h1 ** 3).is_zero()


# ----------------------------------------------------------------- identity


def test_telescoping():
    cases = [("qh_pn", 2, None, 2, ("h",)), ("qh_fl", 3, None, 1, ("h1", "h2"))]
    for family, n, m, D, gens in cases:
        R = ring(family, n, m, D)
        alpha = R.zero()
        for g in gens:
            alpha = alpha + R.generator(g)
        lhs = eval_deg2(OMEOX, alpha, R, D) * alpha
        rhs = R.one() - eval_deg2(EXP_NEG, alpha, R, D)
        assert lhs == rhs


def test_exponential_additivity_flag():
    for D in (1, 2):
        R = ring("qh_fl", 3, trunc=D)
        h1, h2 = R.generator("h1"), R.generator("h2")
        lhs = eval_deg2(EXP_NEG, h1, R, D) * eval_deg2(EXP_NEG, h2, R, D)
        assert lhs == eval_deg2(EXP_NEG, h1 + h2, R, D)
