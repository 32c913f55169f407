"""Quantum quotient rings: normal forms, matrices, determinants.

Frozen values come from hand reduction: x*x = 2x - 1 + Q in the
deformed dual-class ring of the line, h*h = q for the line itself,
and the multiplication-by-h matrix [[0, q], [1, 0]].
"""

import random
from fractions import Fraction

import pytest

from qchar.core import NovikovSeries, Polynomial, VariableSet
from qchar.quotient import (
    AlgebraElement,
    PresentedAlgebra,
    Presentation,
    classical_dim,
    det_bareiss,
    det_expansion,
    poly_div_exact,
    poly_to_qpoly,
    qp_mul,
)

X = VariableSet(["x"])
Q = VariableSet(["Q"])
H = VariableSet(["h"])
QL = VariableSet(["q"])


def qk_line(trunc):
    x = NovikovSeries.gen(X, Q, trunc, "x")
    q = NovikovSeries.q_gen(X, Q, trunc, "Q")
    rel = (1 - x) ** 2 - q
    return PresentedAlgebra(Presentation("test-qk-line", X, Q, [("rel", rel)]), trunc)


def qh_line(trunc):
    h = NovikovSeries.gen(H, QL, trunc, "h")
    q = NovikovSeries.q_gen(H, QL, trunc, "q")
    return PresentedAlgebra(Presentation("test-qh-line", H, QL, [("rel", h ** 2 - q)]), trunc)


def two_var_ring(trunc):
    """x^2 = Q1*y, y^3 = Q2; a small zero-dimensional test ring."""
    gens = VariableSet(["x", "y"])
    qv = VariableSet(["Q1", "Q2"])
    x = NovikovSeries.gen(gens, qv, trunc, "x")
    y = NovikovSeries.gen(gens, qv, trunc, "y")
    q1 = NovikovSeries.q_gen(gens, qv, trunc, "Q1")
    q2 = NovikovSeries.q_gen(gens, qv, trunc, "Q2")
    pres = Presentation("test-two-var", gens, qv,
                        [("r1", x ** 2 - q1 * y), ("r2", y ** 3 - q2)])
    return PresentedAlgebra(pres, trunc)


def test_dual_class_square_frozen():
    ring = qk_line(2)
    x = ring.generator("x")
    assert (x * x).render() == "2*x - 1 + Q"


def test_line_class_square_is_novikov_variable():
    ring = qh_line(3)
    h = ring.generator("h")
    assert (h * h).render() == "q"
    assert (h ** 4).render() == "q^2"


def test_relations_reduce_to_zero():
    for ring in (qk_line(3), qh_line(2), two_var_ring(3)):
        for rel in ring.relations:
            assert ring.reduce(rel).is_zero()


def test_truncation_zero_is_classical():
    ring = qk_line(0)
    x = ring.generator("x")
    assert (x * x).render() == "2*x - 1"


def test_basis_of_line_rings():
    assert qh_line(1).render_basis() == ["1", "h"]
    assert qk_line(1).render_basis() == ["1", "x"]
    assert qh_line(1).classical_dim() == 2


def test_mult_matrix_frozen():
    ring = qh_line(2)
    h = ring.generator("h")
    M = ring.mult_matrix(h)
    assert M[0][0] == {} and M[1][1] == {}
    assert M[1][0] == {(0,): 1}
    assert M[0][1] == {(1,): 1}


def test_reduce_is_idempotent_and_matches_lower_truncation():
    ring3 = two_var_ring(3)
    ring1 = two_var_ring(1)
    rng = random.Random(7)
    for _ in range(10):
        s = ring3.random_series(rng)
        a = ring3.reduce(s)
        assert ring3.reduce(a.as_series()).coords == a.coords
        low = ring1.reduce(s.truncate(1))
        assert a.as_series().truncate(1).terms == low.as_series().terms


def test_reduce_linear_and_multiplicative():
    ring = two_var_ring(2)
    rng = random.Random(3)
    for _ in range(8):
        s, t = ring.random_series(rng), ring.random_series(rng)
        assert ring.reduce(s + t).coords == (ring.reduce(s) + ring.reduce(t)).coords
        assert ring.reduce(s * t).coords == (ring.reduce(s) * ring.reduce(t)).coords


def test_quantum_product_associative_on_basis():
    ring = two_var_ring(2)
    n = ring.classical_dim()
    rng = random.Random(11)
    for _ in range(6):
        i, j, k = (rng.randrange(n) for _ in range(3))
        bi, bj, bk = (ring.basis_element(t) for t in (i, j, k))
        assert ((bi * bj) * bk).coords == (bi * (bj * bk)).coords


def test_confluence_of_reduction_strategies():
    ok, details = qk_line(3).confluence_check(trials=20, seed=5)
    assert ok, details
    ok, details = two_var_ring(2).confluence_check(trials=20, seed=5)
    assert ok, details


def test_presentation_rejects_zero_classical_part():
    x = NovikovSeries.gen(X, Q, 2, "x")
    q = NovikovSeries.q_gen(X, Q, 2, "Q")
    with pytest.raises(ValueError):
        Presentation("bad", X, Q, [("rel", q * x)])


def test_non_zero_dimensional_classical_ideal_rejected():
    gens = VariableSet(["x", "y"])
    qv = VariableSet(["Q"])
    x = NovikovSeries.gen(gens, qv, 1, "x")
    y = NovikovSeries.gen(gens, qv, 1, "y")
    with pytest.raises(ValueError):
        PresentedAlgebra(Presentation("bad", gens, qv, [("rel", x * y)]), 1)


def test_classical_dim_helper():
    ring = two_var_ring(1)
    assert classical_dim(ring.presentation) == 6
    assert ring.classical_dim() == 6


def test_structure_constants_cover_upper_triangle():
    ring = qk_line(1)
    table = ring.structure_constants()
    assert set(table) == {(0, 0), (0, 1), (1, 1)}
    # (x, x) entry repeats the frozen product
    xx = AlgebraElement(ring, table[(1, 1)])
    assert xx.render() == "2*x - 1 + Q"


# ------------------------------------------------------- determinants

def test_poly_div_exact():
    vars = VariableSet(["x", "y"])
    x, y = Polynomial.var(vars, "x"), Polynomial.var(vars, "y")
    assert poly_div_exact(x ** 2 - y ** 2, x - y) == x + y
    with pytest.raises(ValueError):
        poly_div_exact(x ** 2 + 1, x - y)


def test_determinant_frozen_two_by_two():
    ring = qh_line(2)
    M = ring.mult_matrix(ring.generator("h"))
    entries_poly = [[Polynomial(QL, dict(e)) for e in row] for row in M]
    d_exact = det_bareiss(entries_poly)
    assert d_exact == -Polynomial.var(QL, "q")
    d_exp = det_expansion(M, QL, 2)
    assert d_exp == {(1,): Fraction(-1)}


def test_determinant_algorithms_agree_on_random_matrices():
    qv = VariableSet(["q1", "q2"])
    rng = random.Random(23)
    for _ in range(12):
        n = rng.randrange(1, 5)
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                terms = {}
                for _ in range(rng.randrange(0, 3)):
                    qm = (rng.randrange(0, 2), rng.randrange(0, 2))
                    terms[qm] = Fraction(rng.randrange(-4, 5))
                row.append(Polynomial(qv, terms))
            rows.append(row)
        exact = det_bareiss(rows)
        trunc = 3
        truncated_entries = [[poly_to_qpoly(p, trunc) for p in row] for row in rows]
        assert det_expansion(truncated_entries, qv, trunc) == poly_to_qpoly(exact, trunc)


def test_qp_mul_truncates():
    a = {(1, 0): Fraction(1)}
    b = {(1, 1): Fraction(2)}
    assert qp_mul(a, b, 2) == {}
    assert qp_mul(a, b, 3) == {(2, 1): Fraction(2)}
