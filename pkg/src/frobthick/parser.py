"""Text form of homogeneous polynomials.

Grammar (whitespace between tokens is ignored)::

    expr   := ['-'] term (('+' | '-') term)*
    term   := coeff? ('*'? factor)*        at least one of coeff / factor
    factor := var ('^' nat)?
    var    := 'x' nat
    coeff  := nat

Coefficients of any size are reduced modulo p.  Every term must have the same
degree; ``"x0 - x0"`` parses to the zero polynomial of degree 1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .polyring import HomogPoly, RingSpec


class PolyParseError(ValueError):
    def __init__(self, message, position=None, text=None):
        self.position = position
        self.text = text
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)


class PolySyntaxError(PolyParseError):
    pass


class DegreeMixtureError(PolyParseError):
    pass


class UnknownVariableError(PolyParseError):
    pass


@dataclass(frozen=True)
class PolySource:
    text: str
    ring: RingSpec


_TOKEN = re.compile(r"\s*(?:(?P<var>x\d+)|(?P<nat>\d+)|(?P<op>[-+*^])|(?P<bad>\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        kind = m.lastgroup
        start = m.start(kind)
        if kind == "bad":
            raise PolySyntaxError(f"unexpected character {m.group(kind)!r}", start, text)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        return PolySyntaxError(message, tok[2], self.text)

    def expr(self):
        terms = []
        sign = 1
        if self.peek()[1] == "-":
            self.take()
            sign = -1
        terms.append(self.term(sign))
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            sign = 1 if self.take()[1] == "+" else -1
            terms.append(self.term(sign))
        tok = self.peek()
        if tok[0] != "end":
            raise self.error(f"unexpected {tok[1]!r}")
        return terms

    def term(self, sign):
        start = self.peek()
        coeff = None
        if start[0] == "nat":
            coeff = int(self.take()[1])
        exp = [0] * self.ring.num_vars
        nfactors = 0
        while True:
            tok = self.peek()
            if tok[1] == "*":
                if coeff is None and nfactors == 0:
                    raise self.error("'*' without a left operand")
                self.take()
                if self.peek()[0] != "var":
                    raise self.error("expected a variable after '*'")
                self.factor(exp)
                nfactors += 1
            elif tok[0] == "var":
                self.factor(exp)
                nfactors += 1
            else:
                break
        if coeff is None and nfactors == 0:
            raise self.error("expected a term")
        return start[2], sign * (1 if coeff is None else coeff), tuple(exp)

    def factor(self, exp):
        tok = self.take()
        index = int(tok[1][1:])
        if index >= self.ring.num_vars:
            raise UnknownVariableError(
                f"unknown variable {tok[1]} (ring has x0..x{self.ring.num_vars - 1})", tok[2], self.text
            )
        power = 1
        if self.peek()[1] == "^":
            self.take()
            nat = self.peek()
            if nat[0] != "nat":
                raise self.error("expected an exponent after '^'")
            power = int(self.take()[1])
        exp[index] += power


def parse(src: PolySource) -> HomogPoly:
    ring = src.ring
    text = src.text
    if not text.strip():
        raise PolySyntaxError("empty expression", 0, text)
    terms = _Parser(text, ring).expr()
    degree = sum(terms[0][2])
    for pos, _, exp in terms:
        if sum(exp) != degree:
            raise DegreeMixtureError(
                f"inhomogeneous input: term of degree {sum(exp)} mixed with degree {degree}", pos, text
            )
    p = ring.p
    acc = {}
    for _, c, exp in terms:
        acc[exp] = (acc.get(exp, 0) + c) % p
    return HomogPoly(ring, degree, {e: c for e, c in acc.items() if c}, check=False)


def parse_poly(text: str, ring: RingSpec) -> HomogPoly:
    return parse(PolySource(text, ring))


def _format_monomial(exp):
    parts = []
    for i, a in enumerate(exp):
        if a == 1:
            parts.append(f"x{i}")
        elif a > 1:
            parts.append(f"x{i}^{a}")
    return "*".join(parts)


def format_poly(f: HomogPoly) -> str:
    if not f.terms:
        return "0"
    out = []
    for exp, c in f.sorted_terms():
        mono = _format_monomial(exp)
        if not mono:
            out.append(str(c))
        elif c == 1:
            out.append(mono)
        else:
            out.append(f"{c}*{mono}")
    return " + ".join(out)
