"""Reader for homogeneous polynomials in x, y, z with integer coefficients.

Grammar (whitespace is ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := integer | var ['^' integer]
    var    := 'x' | 'y' | 'z'

Coefficients are reduced mod p and like terms merged before the
homogeneity check, so ``x^2 + y + 2*y`` is accepted over F_3.
"""
from __future__ import annotations

from .errors import NotHomogeneous, ParseError, ZeroPolynomial


def _tokenize(src: str):
    tokens = []
    pos = 0
    while True:
        while pos < len(src) and src[pos].isspace():
            pos += 1
        if pos == len(src):
            break
        ch = src[pos]
        if ch.isdigit():
            end = pos
            while end < len(src) and src[end].isdigit():
                end += 1
            tokens.append(("int", src[pos:end], pos))
            pos = end
            continue
        if ch in "xyz":
            tokens.append(("var", ch, pos))
        elif ch in "+-*^":
            tokens.append((ch, ch, pos))
        else:
            raise ParseError(f"unexpected character {ch!r}", src, pos)
        pos += 1
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, p: int):
        self.src = src
        self.p = p
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind):
        tok = self.peek()
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", self.src, tok[2])
        self.i += 1
        return tok

    def expr(self):
        """List of (coefficient, exponents, start) in source order."""
        terms = []
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0])[1] == "-" else 1
        terms.append(self.term(sign))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take(self.peek()[0])[1] == "-" else 1
            terms.append(self.term(sign))
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", self.src, tok[2])
        return terms

    def term(self, sign):
        start = self.peek()[2]
        acc = [sign, 0, 0, 0]  # coefficient, then exponents of x, y, z
        self.factor(acc)
        while self.peek()[0] == "*":
            self.take("*")
            self.factor(acc)
        return acc[0], tuple(acc[1:]), start

    def factor(self, acc):
        tok = self.peek()
        if tok[0] == "int":
            self.take("int")
            acc[0] *= int(tok[1])
        elif tok[0] == "var":
            self.take("var")
            power = 1
            if self.peek()[0] == "^":
                self.take("^")
                power = int(self.take("int")[1])
            acc[1 + "xyz".index(tok[1])] += power
        else:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected a coefficient or variable, found {what}", self.src, tok[2])


def parse_terms(src: str, p: int) -> dict[tuple[int, int, int], int]:
    """Parse to a dict {(i, j, k): coeff mod p}, zeros dropped, homogeneity checked."""
    if not src.strip():
        raise ParseError("empty polynomial", src, 0)
    raw = _Parser(src, p).expr()
    merged: dict[tuple[int, int, int], int] = {}
    first_pos: dict[tuple[int, int, int], int] = {}
    for coeff, exps, pos in raw:
        merged[exps] = (merged.get(exps, 0) + coeff) % p
        first_pos.setdefault(exps, pos)
    terms = {e: c for e, c in merged.items() if c}
    if not terms:
        raise ZeroPolynomial(f"all terms cancel mod {p}", src, 0)
    degrees = {sum(e) for e in terms}
    if len(degrees) > 1:
        # report the first surviving term whose degree disagrees with the first term
        order = sorted(terms, key=first_pos.get)
        d0 = sum(order[0])
        bad = next(e for e in order if sum(e) != d0)
        raise NotHomogeneous(
            f"term of degree {sum(bad)} in a polynomial of degree {d0}", src, first_pos[bad]
        )
    return terms


def parse_poly(src: str, p: int):
    """Parse text into a :class:`~curvezeta.oracle.PlaneCurve` over F_p."""
    from .oracle import PlaneCurve

    return PlaneCurve.from_terms(p, parse_terms(src, p))
