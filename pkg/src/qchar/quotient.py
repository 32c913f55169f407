"""Truncated quantum quotient rings presented by relations with q-tails.

A presentation consists of generators, Novikov variables, and relations
r_j = c_j + t_j whose classical part c_j is a nonzero polynomial in the
generators and whose tail t_j has total q-degree >= 1.  The classical
parts get a reduced grevlex basis with cofactor rows u_{i,j}; each basis
element g_i then acquires a quantum correction
    h_i := -sum_j u_{i,j} * t_j,
so that modulo the relations g_i acts as h_i, and normal-form reduction
rewrites a term through  lm(g_i) == h_i - (g_i - lm(g_i)).  Every
rewrite strictly drops the (classical monomial, q-degree) measure, so
reduction terminates at any truncation order.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .core import (
    Mono,
    NovikovSeries,
    Polynomial,
    VariableSet,
    _render_terms,
    grevlex_key,
    mono_div,
    mono_divides,
    mono_mul,
)
from .groebner import GroebnerData, groebner, is_zero_dimensional, standard_monomials

QPoly = Dict[Mono, Fraction]  # truncated polynomial in the q variables


class Presentation:
    """Exact relation data, instantiable at any truncation order."""

    def __init__(self, label: str, gens: VariableSet, q_vars: VariableSet,
                 relations: List[Tuple[str, NovikovSeries]]):
        self.label = label
        self.gens = gens
        self.q_vars = q_vars
        if set(gens.names) & set(q_vars.names):
            raise ValueError("generator and Novikov variable names overlap")
        self.relation_names = [name for name, _ in relations]
        self.relation_terms = [dict(rel.terms) for _, rel in relations]
        for name, rel in relations:
            if rel.main_vars != gens or rel.q_vars != q_vars:
                raise ValueError("relation %r over wrong variable sets" % name)
            if rel.classical_part().is_zero():
                raise ValueError("relation %r has zero classical part" % name)

    def relation_at(self, j: int, trunc: int) -> NovikovSeries:
        return NovikovSeries(self.gens, self.q_vars, trunc, self.relation_terms[j])

    def relations_at(self, trunc: int) -> List[NovikovSeries]:
        return [self.relation_at(j, trunc) for j in range(len(self.relation_terms))]


class AlgebraElement:
    """Element of a PresentedAlgebra in normal form.

    coords maps a basis index to the truncated q-polynomial coefficient
    of that basis monomial; absent indices are zero.
    """

    __slots__ = ("ring", "coords")

    def __init__(self, ring: "PresentedAlgebra", coords: Dict[int, QPoly]):
        self.ring = ring
        clean: Dict[int, QPoly] = {}
        for i, qp in coords.items():
            qp2 = {qm: Fraction(c) for qm, c in qp.items() if c != 0}
            if qp2:
                clean[i] = qp2
        self.coords = clean

    def is_zero(self) -> bool:
        return not self.coords

    def as_series(self) -> NovikovSeries:
        terms = {}
        for i, qp in self.coords.items():
            mm = self.ring.basis_monos[i]
            for qm, c in qp.items():
                terms[(mm, qm)] = c
        return NovikovSeries(self.ring.gens, self.ring.q_vars, self.ring.trunc, terms)

    def classical_part(self) -> Polynomial:
        return self.as_series().classical_part()

    def _same_ring(self, other: "AlgebraElement"):
        if self.ring is not other.ring and (
                self.ring.label != other.ring.label or self.ring.trunc != other.ring.trunc):
            raise ValueError("elements of different rings")

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        if isinstance(other, (Polynomial, NovikovSeries)):
            return self.ring.reduce(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._same_ring(other)
        coords = {i: dict(qp) for i, qp in self.coords.items()}
        for i, qp in other.coords.items():
            tgt = coords.setdefault(i, {})
            for qm, c in qp.items():
                tgt[qm] = tgt.get(qm, Fraction(0)) + c
        return AlgebraElement(self.ring, coords)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.ring, {i: {qm: -c for qm, c in qp.items()}
                                          for i, qp in self.coords.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, c) -> "AlgebraElement":
        c = Fraction(c)
        return AlgebraElement(self.ring, {i: {qm: v * c for qm, v in qp.items()}
                                          for i, qp in self.coords.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._same_ring(other)
        return self.ring.reduce(self.as_series() * other.as_series())

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("element power must be a nonnegative integer")
        result = self.ring.one()
        base = self
        k = e
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        self._same_ring(other)
        return self.coords == other.coords

    def render(self) -> str:
        return self.as_series().render()

    def __repr__(self):
        return "AlgebraElement(%s)" % self.render()


class PresentedAlgebra:
    """Quotient of the truncated series ring by a quantum presentation."""

    def __init__(self, presentation: Presentation, trunc: int):
        self.presentation = presentation
        self.gens = presentation.gens
        self.q_vars = presentation.q_vars
        self.trunc = trunc
        self.relations = presentation.relations_at(trunc)

        classical = [r.classical_part() for r in self.relations]
        if any(c.is_zero() for c in classical):
            raise ValueError("relation with zero classical part")
        tails = [r.q_tail() for r in self.relations]

        self.gdata: GroebnerData = groebner(classical)
        if not is_zero_dimensional(self.gdata):
            raise ValueError("classical ideal of %r is not zero-dimensional"
                             % presentation.label)
        self.basis_monos: List[Mono] = standard_monomials(self.gdata)
        self._basis_index = {m: i for i, m in enumerate(self.basis_monos)}

        # quantum corrections: g_i rewrites to h_i - (g_i - lm(g_i))
        self._rules = []
        for g, row in zip(self.gdata.basis, self.gdata.cofactors):
            lm, _ = g.leading()
            rest = g - Polynomial(self.gens, {lm: Fraction(1)})
            correction = NovikovSeries.zero(self.gens, self.q_vars, trunc)
            for u, tail in zip(row, tails):
                if u.is_zero() or tail.is_zero():
                    continue
                correction = correction - u * tail
            mq = correction.min_q_degree()
            if mq is not None and mq < 1:
                raise AssertionError("quantum correction with classical terms")
            self._rules.append((lm, rest, correction))

    @property
    def label(self) -> str:
        return self.presentation.label

    def classical_dim(self) -> int:
        return len(self.basis_monos)

    # element constructors

    def constant(self, c) -> AlgebraElement:
        zero_mono = self.gens.zero_mono()
        i = self._basis_index.get(zero_mono)
        if i is None:  # unit ideal
            return AlgebraElement(self, {})
        qz = self.q_vars.zero_mono()
        return AlgebraElement(self, {i: {qz: Fraction(c)}})

    def one(self) -> AlgebraElement:
        return self.constant(1)

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def generator(self, name: str) -> AlgebraElement:
        return self.reduce(Polynomial.var(self.gens, name))

    def q_element(self, name: str, power: int = 1) -> AlgebraElement:
        s = NovikovSeries.q_gen(self.gens, self.q_vars, self.trunc, name, power)
        return self.reduce(s)

    def series(self, x) -> NovikovSeries:
        if isinstance(x, NovikovSeries):
            if x.main_vars != self.gens or x.q_vars != self.q_vars:
                raise ValueError("series over wrong variable sets")
            if x.trunc != self.trunc:
                raise ValueError("series truncation %d does not match ring truncation %d"
                                 % (x.trunc, self.trunc))
            return x
        if isinstance(x, Polynomial):
            return NovikovSeries.from_polynomial(x, self.q_vars, self.trunc)
        if isinstance(x, (int, Fraction)):
            return NovikovSeries.const(self.gens, self.q_vars, self.trunc, x)
        if isinstance(x, AlgebraElement):
            return x.as_series()
        raise TypeError("cannot interpret %r as a ring element" % (x,))

    # reduction

    def _find_rule(self, mm: Mono, last: bool = False):
        found = None
        for rule in self._rules:
            if mono_divides(rule[0], mm):
                if not last:
                    return rule
                found = rule
        return found

    def _reduce_terms(self, terms: Dict[Tuple[Mono, Mono], Fraction],
                      strategy: str = "default") -> Dict[int, QPoly]:
        work = {k: Fraction(c) for k, c in terms.items() if c != 0}
        out: Dict[int, QPoly] = {}

        def emit(mm, qm, coeff):
            i = self._basis_index[mm]
            qp = out.setdefault(i, {})
            v = qp.get(qm, Fraction(0)) + coeff
            if v:
                qp[qm] = v
            else:
                qp.pop(qm, None)

        while work:
            if strategy == "default":
                # largest classical monomial first, ties by lowest q-degree
                key = max(work, key=lambda k: (grevlex_key(k[0]),
                                               (-sum(k[1]), tuple(e for e in reversed(k[1])))))
                mm, qm = key
                rule = self._find_rule(mm)
            else:
                # smallest reducible classical monomial, ties by highest
                # q-degree, and the last matching rule
                reducible = [(k, self._find_rule(k[0], last=True)) for k in work]
                reducible = [(k, r) for k, r in reducible if r is not None]
                if not reducible:
                    for (mm, qm), c in work.items():
                        emit(mm, qm, c)
                    break
                key, rule = min(reducible,
                                key=lambda kr: (grevlex_key(kr[0][0]),
                                                (-sum(kr[0][1]),
                                                 tuple(e for e in reversed(kr[0][1])))))
                mm, qm = key
            coeff = work.pop(key)
            if rule is None:
                emit(mm, qm, coeff)
                continue
            lm, rest, correction = rule
            quot = mono_div(mm, lm)

            def bump(k, delta):
                v = work.get(k, Fraction(0)) + delta
                if v:
                    work[k] = v
                else:
                    work.pop(k, None)

            for m, c in rest.terms.items():
                bump((mono_mul(m, quot), qm), -coeff * c)
            for (m2, q2), c2 in correction.terms.items():
                qnew = mono_mul(qm, q2)
                if sum(qnew) > self.trunc:
                    continue
                bump((mono_mul(m2, quot), qnew), coeff * c2)
        return {i: qp for i, qp in out.items() if qp}

    def reduce(self, x, strategy: str = "default") -> AlgebraElement:
        if isinstance(x, AlgebraElement):
            if strategy == "default":
                return x
            x = x.as_series()
        s = self.series(x)
        return AlgebraElement(self, self._reduce_terms(s.terms, strategy))

    # matrices and tables

    def basis_element(self, i: int) -> AlgebraElement:
        qz = self.q_vars.zero_mono()
        return AlgebraElement(self, {i: {qz: Fraction(1)}})

    def mult_matrix(self, a: AlgebraElement) -> List[List[QPoly]]:
        """M[i][j] = coefficient of basis i in a * basis j."""
        n = len(self.basis_monos)
        cols = []
        for j in range(n):
            prod = a * self.basis_element(j)
            cols.append(prod.coords)
        return [[dict(cols[j].get(i, {})) for j in range(n)] for i in range(n)]

    def structure_constants(self) -> Dict[Tuple[int, int], Dict[int, QPoly]]:
        n = len(self.basis_monos)
        table = {}
        for i in range(n):
            for j in range(i, n):
                table[(i, j)] = (self.basis_element(i) * self.basis_element(j)).coords
        return table

    def render_basis(self) -> List[str]:
        out = []
        for m in self.basis_monos:
            s = self.gens.render_mono(m)
            out.append(s if s else "1")
        return out

    def render_qpoly(self, qp: QPoly) -> str:
        items = sorted(qp.items(), key=lambda t: (sum(t[0]), tuple(-e for e in reversed(t[0]))))
        return _render_terms([(c, self.q_vars.render_mono(qm)) for qm, c in items])

    def random_series(self, rng: random.Random, max_extra_degree: int = 2) -> NovikovSeries:
        """Random expression in generators and q variables, for self-checks."""
        top = max((sum(m) for m in self.basis_monos), default=0) + max_extra_degree
        terms = {}
        for _ in range(rng.randrange(1, 7)):
            mm = tuple(rng.randrange(0, top + 1) for _ in self.gens.names)
            qm = [0] * len(self.q_vars)
            budget = rng.randrange(0, self.trunc + 1)
            for _ in range(budget):
                if not qm:
                    break
                qm[rng.randrange(len(qm))] += 1
            coeff = Fraction(rng.randrange(-6, 7), rng.randrange(1, 4))
            if coeff == 0:
                continue
            key = (mm, tuple(qm))
            terms[key] = terms.get(key, Fraction(0)) + coeff
        return NovikovSeries(self.gens, self.q_vars, self.trunc, terms)

    def confluence_check(self, trials: int, seed: int) -> Tuple[bool, List[str]]:
        """Reduce random inputs under two admissible strategies; compare."""
        rng = random.Random(seed)
        details = []
        ok = True
        for t in range(trials):
            s = self.random_series(rng)
            a = self.reduce(s, strategy="default")
            b = self.reduce(s, strategy="alternate")
            if a.coords != b.coords:
                ok = False
                details.append("trial %d: strategies disagree on %s" % (t, s.render()))
        return ok, details


def classical_dim(presentation: Presentation) -> int:
    classical = [Polynomial(presentation.gens,
                            {mm: c for (mm, qm), c in terms.items() if sum(qm) == 0})
                 for terms in presentation.relation_terms]
    g = groebner(classical)
    if not is_zero_dimensional(g):
        raise ValueError("classical ideal of %r is not zero-dimensional"
                         % presentation.label)
    return len(standard_monomials(g))


# ------------------------------------------------------------------
# truncated q-polynomial helpers and the two determinant algorithms

def qp_add(a: QPoly, b: QPoly) -> QPoly:
    out = dict(a)
    for qm, c in b.items():
        v = out.get(qm, Fraction(0)) + c
        if v:
            out[qm] = v
        else:
            out.pop(qm, None)
    return out


def qp_scale(a: QPoly, c: Fraction) -> QPoly:
    if c == 0:
        return {}
    return {qm: v * c for qm, v in a.items()}


def qp_mul(a: QPoly, b: QPoly, trunc: Optional[int]) -> QPoly:
    out: QPoly = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = mono_mul(m1, m2)
            if trunc is not None and sum(m) > trunc:
                continue
            v = out.get(m, Fraction(0)) + c1 * c2
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return out


def poly_div_exact(num: Polynomial, den: Polynomial) -> Polynomial:
    """Exact quotient in the polynomial ring; error if division leaves a rest."""
    if den.is_zero():
        raise ZeroDivisionError("exact division by zero polynomial")
    vars = num.vars
    quot_terms = {}
    work = dict(num.terms)
    dm, dc = den.leading()
    while work:
        mono = max(work, key=grevlex_key)
        coeff = work[mono]
        if not mono_divides(dm, mono):
            raise ValueError("inexact polynomial division")
        q_mono = mono_div(mono, dm)
        q_coeff = coeff / dc
        quot_terms[q_mono] = quot_terms.get(q_mono, Fraction(0)) + q_coeff
        for m, c in den.terms.items():
            m2 = mono_mul(m, q_mono)
            v = work.get(m2, Fraction(0)) - q_coeff * c
            if v:
                work[m2] = v
            else:
                work.pop(m2, None)
    return Polynomial(vars, quot_terms)


def det_bareiss(entries: List[List[Polynomial]]) -> Polynomial:
    """Fraction-free determinant over an exact polynomial ring.

    Divisions are exact at every step (Bareiss), which is sound here
    because the entries live in an integral domain; truncate afterwards.
    """
    n = len(entries)
    if n == 0:
        raise ValueError("empty matrix")
    vars = entries[0][0].vars
    M = [[p for p in row] for row in entries]
    sign = 1
    prev = Polynomial.const(vars, 1)
    for k in range(n - 1):
        if M[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not M[r][k].is_zero()), None)
            if swap is None:
                return Polynomial.zero(vars)
            M[k], M[swap] = M[swap], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = poly_div_exact(M[i][j] * M[k][k] - M[i][k] * M[k][j], prev)
            M[i][k] = Polynomial.zero(vars)
        prev = M[k][k]
    return M[n - 1][n - 1].scale(sign)


def det_expansion(entries: List[List[QPoly]], q_vars: VariableSet,
                  trunc: Optional[int]) -> QPoly:
    """Division-free determinant by column-subset expansion.

    Safe directly in truncated arithmetic; used as the independent
    cross-check of the Bareiss route.
    """
    n = len(entries)
    if n == 0:
        raise ValueError("empty matrix")
    unit: QPoly = {q_vars.zero_mono(): Fraction(1)}
    dp = {0: unit}
    for r in range(n):
        new_dp: Dict[int, QPoly] = {}
        for mask, sub in dp.items():
            cols = [j for j in range(n) if mask & (1 << j)]
            for j in range(n):
                if mask & (1 << j):
                    continue
                entry = entries[r][j]
                if not entry:
                    continue
                contrib = qp_mul(entry, sub, trunc)
                # parity of the number of used columns to the right of j
                below = sum(1 for c in cols if c > j)
                if below % 2:
                    contrib = qp_scale(contrib, Fraction(-1))
                m2 = mask | (1 << j)
                new_dp[m2] = qp_add(new_dp.get(m2, {}), contrib)
        dp = {m: v for m, v in new_dp.items() if v}
        if not dp:
            return {}
    return dp.get((1 << n) - 1, {})


def mat_mul(A: List[List[QPoly]], B: List[List[QPoly]], trunc: Optional[int]) -> List[List[QPoly]]:
    n = len(A)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            acc: QPoly = {}
            for k in range(n):
                if A[i][k] and B[k][j]:
                    acc = qp_add(acc, qp_mul(A[i][k], B[k][j], trunc))
            row.append(acc)
        out.append(row)
    return out


def mat_pow(A: List[List[QPoly]], e: int, trunc: Optional[int]) -> List[List[QPoly]]:
    if e < 1:
        raise ValueError("matrix power wants a positive exponent")
    out = A
    for _ in range(e - 1):
        out = mat_mul(out, A, trunc)
    return out


def mat_scale(A: List[List[QPoly]], factor: QPoly, trunc: Optional[int]) -> List[List[QPoly]]:
    return [[qp_mul(entry, factor, trunc) for entry in row] for row in A]


def poly_to_qpoly(p: Polynomial, trunc: Optional[int]) -> QPoly:
    out = {}
    for m, c in p.terms.items():
        if trunc is not None and sum(m) > trunc:
            continue
        out[m] = c
    return out


def qpoly_to_poly(qp: QPoly, q_vars: VariableSet) -> Polynomial:
    return Polynomial(q_vars, dict(qp))
