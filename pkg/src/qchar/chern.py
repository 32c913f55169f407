"""Ring maps sending K-theory generators to exponentials of h-classes.

Each map carries the images of the inverse line classes (e^{-h_a}) and
of the Novikov variables (q_a times a ratio of Todd-type factors).  A
map is certified by substituting it into the source relations and
checking that every residual reduces to the zero element, and by
comparing its Novikov-free limit with the classical Chern character.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .analytic import EXP_NEG, OMEOX, XOME, eval_deg2
from .catalog import RingId, make_presentation, ring
from .core import NovikovSeries, Polynomial
from .quotient import AlgebraElement, Presentation, PresentedAlgebra

SPACES = ("pn", "fl", "milnor")

_SOURCE_FAMILY = {"pn": "qk_pn", "fl": "qk_fl", "milnor": "qk_milnor"}
_TARGET_FAMILY = {"pn": "qh_pn", "fl": "qh_fl", "milnor": "qh_milnor"}


@dataclass
class RelationCheck:
    name: str
    residual_is_zero: bool
    residual_rendering: str


@dataclass
class QuantumChernMap:
    space: str
    source: RingId
    target: PresentedAlgebra
    gen_images: Dict[str, AlgebraElement]
    novikov_images: Dict[str, AlgebraElement]
    trunc: int

    @property
    def source_presentation(self) -> Presentation:
        return make_presentation(self.source.family, self.source.n, self.source.m)

    def source_ring(self, trunc: Optional[int] = None) -> PresentedAlgebra:
        t = self.trunc if trunc is None else trunc
        return ring(self.source.family, self.source.n, self.source.m, t)


def build_qch(space: str, n: int, m: Optional[int] = None,
              trunc: int = 4) -> QuantumChernMap:
    if space not in SPACES:
        raise ValueError("unknown space %r" % space)
    if space != "milnor" and m is not None:
        raise ValueError("%s takes no m parameter" % space)
    source = RingId(_SOURCE_FAMILY[space], n, m, trunc)
    target = ring(_TARGET_FAMILY[space], n, m, trunc)

    if space == "pn":
        h = target.generator("h")
        gen_images = {"x": eval_deg2(EXP_NEG, h, target, trunc)}
        inv_todd = eval_deg2(OMEOX, h, target, trunc) ** (n + 1)
        novikov_images = {"Q": target.q_element("q") * inv_todd}
    else:
        h1, h2 = target.generator("h1"), target.generator("h2")
        hsum = h1 + h2
        gen_images = {"x": eval_deg2(EXP_NEG, h1, target, trunc),
                      "y": eval_deg2(EXP_NEG, h2, target, trunc)}
        sum_factor = eval_deg2(XOME, hsum, target, trunc)
        exps = {"Q1": n, "Q2": n if space == "fl" else m}
        novikov_images = {}
        for a, qname in ((1, "Q1"), (2, "Q2")):
            ha = target.generator("h%d" % a)
            inv_todd = eval_deg2(OMEOX, ha, target, trunc) ** exps[qname]
            novikov_images[qname] = (target.q_element("q%d" % a)
                                     * inv_todd * sum_factor)
    return QuantumChernMap(space, source, target, gen_images, novikov_images, trunc)


def qch_apply(qmap: QuantumChernMap, expr) -> AlgebraElement:
    """Substitute the map's images into an expression over the source ring."""
    pres = qmap.source_presentation
    if isinstance(expr, AlgebraElement):
        expr = expr.as_series()
    if isinstance(expr, Polynomial):
        if expr.vars != pres.gens:
            raise ValueError("expression over wrong generators")
        expr = NovikovSeries.from_polynomial(expr, pres.q_vars, qmap.trunc)
    if not isinstance(expr, NovikovSeries):
        raise TypeError("cannot substitute into %r" % (expr,))
    if expr.main_vars != pres.gens or expr.q_vars != pres.q_vars:
        raise ValueError("expression over wrong variable sets")

    target = qmap.target
    cache: Dict[Tuple[str, int], AlgebraElement] = {}

    def image_power(name: str, e: int, img: AlgebraElement) -> AlgebraElement:
        key = (name, e)
        if key not in cache:
            if e == 1:
                cache[key] = img
            else:
                cache[key] = image_power(name, e - 1, img) * img
        return cache[key]

    out = target.zero()
    for (mm, qm), c in expr.terms.items():
        part = target.one()
        for name, e in zip(pres.gens.names, mm):
            if e:
                part = part * image_power(name, e, qmap.gen_images[name])
        for name, e in zip(pres.q_vars.names, qm):
            if e:
                part = part * image_power(name, e, qmap.novikov_images[name])
        out = out + part.scale(c)
    return out


def verify_relations(qmap: QuantumChernMap) -> List[RelationCheck]:
    """Substitute images into each source relation; the residuals must vanish."""
    pres = qmap.source_presentation
    out = []
    for j, name in enumerate(pres.relation_names):
        residual = qch_apply(qmap, pres.relation_at(j, qmap.trunc))
        out.append(RelationCheck(name, residual.is_zero(), residual.render()))
    return out


def verify_classical_limit(qmap: QuantumChernMap) -> Tuple[bool, List[str]]:
    """Compare the q=0 limit against the nilpotent-exponential character.

    For every monomial in the source classical basis: route one pushes it
    through the map and drops Novikov terms; route two exponentiates the
    matching negative h-combination in the Novikov-free target ring.
    """
    source0 = qmap.source_ring(0)
    target0 = ring(_TARGET_FAMILY[qmap.space], qmap.source.n, qmap.source.m, 0)
    tgt_gens = target0.gens.names
    ok = True
    details = []
    for mono in source0.basis_monos:
        p = Polynomial(source0.gens, {mono: Fraction(1)})
        via_map = qch_apply(qmap, p).classical_part()
        alpha = target0.zero()
        for idx, e in enumerate(mono):
            if e:
                alpha = alpha + target0.generator(tgt_gens[idx]).scale(e)
        direct = eval_deg2(EXP_NEG, alpha, target0, 0) if not alpha.is_zero() \
            else target0.one()
        name = source0.gens.render_mono(mono) or "1"
        if via_map == direct.as_series().classical_part():
            details.append("%s: limits agree" % name)
        else:
            ok = False
            details.append("%s: map limit %s, character %s"
                           % (name, via_map.render(), direct.render()))
    return ok, details


def solve_unique_novikov_image(n: int, trunc: int,
                               rhs: Optional[AlgebraElement] = None
                               ) -> Tuple[AlgebraElement, bool]:
    """Solve X * h^(n+1) = q*(1-e^{-h})^(n+1) in the projective-space ring.

    Works one Novikov order above the requested truncation: h^(n+1) acts
    as q times the identity there, so the equation divides by q exactly,
    and dividing loses only the guard order.  Returns the solution at the
    requested truncation plus a uniqueness flag.
    """
    guard = trunc + 1
    R1 = ring("qh_pn", n, trunc=guard)
    h = R1.generator("h")
    q_mono = R1.q_vars.unit_mono("q")

    # h^(n+1) must act as q times the identity for division to be sound
    unique = True
    hp = h ** (n + 1)
    for i in range(R1.classical_dim()):
        prod = hp * R1.basis_element(i)
        expected = {i: {q_mono: Fraction(1)}}
        if prod.coords != expected:
            unique = False

    if rhs is None:
        one_minus = R1.one() - eval_deg2(EXP_NEG, h, R1, guard)
        rhs = R1.q_element("q") * one_minus ** (n + 1)
    elif rhs.ring is not R1:
        raise ValueError("right-hand side must live at the guard truncation")

    R0 = ring("qh_pn", n, trunc=trunc)
    shifted: Dict[int, Dict] = {}
    for i, qp in rhs.coords.items():
        out = {}
        for qm, c in qp.items():
            if qm[0] < 1:
                raise ValueError("system is inconsistent: residual term "
                                 "without a Novikov factor")
            down = (qm[0] - 1,)
            if down[0] <= trunc:
                out[down] = c
        shifted[i] = out
    return AlgebraElement(R0, shifted), unique


def verify_lemma_todd_simplify(n: int, trunc: int) -> List[RelationCheck]:
    """(1 - e^{-(h1+h2)}) * image(Q_a) must equal (1 - e^{-h_a})^n, a = 1, 2."""
    qmap = build_qch("fl", n, trunc=trunc)
    R = qmap.target
    hsum = R.generator("h1") + R.generator("h2")
    front = R.one() - eval_deg2(EXP_NEG, hsum, R, trunc)
    out = []
    for a in (1, 2):
        ha = R.generator("h%d" % a)
        lhs = front * qmap.novikov_images["Q%d" % a]
        rhs = (R.one() - eval_deg2(EXP_NEG, ha, R, trunc)) ** n
        residual = lhs - rhs
        out.append(RelationCheck("a=%d" % a, residual.is_zero(), residual.render()))
    return out
