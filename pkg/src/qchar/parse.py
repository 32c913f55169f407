"""Text expressions for ring elements.

Grammar, whitespace insensitive:

    expr     := ("+" | "-")? term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := base ("^" nat)?
    base     := rational | ident | "(" expr ")"
    rational := nat ("/" nat)?

There is no implicit multiplication and no division operator; "/" only
occurs inside a rational literal.  Exponents are nonnegative integers.
The grammar covers everything the canonical renderer emits, so
rendering and parsing round-trip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from .quotient import AlgebraElement, PresentedAlgebra


class ParseError(ValueError):
    """Lexical or syntax problem, with a 1-based source position."""

    def __init__(self, message: str, position: int):
        super().__init__("%s (position %d)" % (message, position))
        self.position = position


@dataclass
class Num:
    value: Fraction
    pos: int


@dataclass
class Var:
    name: str
    pos: int


@dataclass
class Neg:
    operand: "Node"


@dataclass
class BinOp:
    op: str  # "+", "-" or "*"
    left: "Node"
    right: "Node"


@dataclass
class Pow:
    base: "Node"
    exponent: int


Node = Union[Num, Var, Neg, BinOp, Pow]

_TOKEN = re.compile(r"(\d+)|([A-Za-z][A-Za-z0-9]*)|([-+*^/()])")


def _tokenize(src: str) -> List[Tuple[str, str, int]]:
    out = []
    i = 0
    while i < len(src):
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if m is None:
            raise ParseError("unexpected character %r" % src[i], i + 1)
        if m.group(1):
            out.append(("num", m.group(1), i + 1))
        elif m.group(2):
            out.append(("ident", m.group(2), i + 1))
        else:
            out.append((m.group(3), m.group(3), i + 1))
        i = m.end()
    out.append(("end", "", len(src) + 1))
    return out


class _Parser:
    def __init__(self, src: str):
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> Tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, kind: str, what: str) -> Tuple[str, str, int]:
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError("expected %s" % what, tok[2])
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError("unexpected %r" % tok[1], tok[2])
        return node

    def expr(self) -> Node:
        sign = None
        if self.peek()[0] in ("+", "-"):
            sign = self.advance()[0]
        node: Node = self.term()
        if sign == "-":
            node = Neg(node)
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] == "*":
            self.advance()
            node = BinOp("*", node, self.factor())
        return node

    def factor(self) -> Node:
        node = self.base()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.expect("num", "a nonnegative integer exponent")
            node = Pow(node, int(tok[1]))
        return node

    def base(self) -> Node:
        tok = self.advance()
        if tok[0] == "num":
            value = Fraction(int(tok[1]))
            if self.peek()[0] == "/":
                self.advance()
                den = self.expect("num", "an integer denominator")
                if int(den[1]) == 0:
                    raise ParseError("zero denominator", den[2])
                value = value / int(den[1])
            return Num(value, tok[2])
        if tok[0] == "ident":
            return Var(tok[1], tok[2])
        if tok[0] == "(":
            node = self.expr()
            self.expect(")", "a closing parenthesis")
            return node
        raise ParseError("expected a number, identifier or parenthesis",
                         tok[2])


def parse_expression(src: str) -> Node:
    return _Parser(src).parse()


def evaluate(node: Node, algebra: PresentedAlgebra) -> AlgebraElement:
    if isinstance(node, Num):
        return algebra.constant(node.value)
    if isinstance(node, Var):
        if node.name in algebra.gens.names:
            return algebra.generator(node.name)
        if node.name in algebra.q_vars.names:
            return algebra.q_element(node.name)
        raise ParseError("unknown identifier %r for this ring" % node.name,
                         node.pos)
    if isinstance(node, Neg):
        return -evaluate(node.operand, algebra)
    if isinstance(node, Pow):
        return evaluate(node.base, algebra) ** node.exponent
    if isinstance(node, BinOp):
        left = evaluate(node.left, algebra)
        right = evaluate(node.right, algebra)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        return left * right
    raise TypeError("not an expression node: %r" % (node,))


def parse_element(src: str, algebra: PresentedAlgebra) -> AlgebraElement:
    """Parse and evaluate in one go; the common entry point."""
    return evaluate(parse_expression(src), algebra)
