"""Plain-text input for conformal elements and differential operators.

Grammar (both domains)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*        division only by a constant
    unary := ('+' | '-') unary | power
    power := atom ('^' ['-'] INT)?
    atom  := NUMBER | NAME | '(' expr ')'

Conformal elements use the variables ``d`` and ``x``.  Operators use ``t``
and ``D``; ``*`` is composition and ``t`` may carry a negative exponent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .diffops import DVAR, DiffOp
from .exact_poly import D as DV, X as XV, Poly, UnivarPoly


class ParseError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.message = message
        self.position = position
        self.text = text
        super().__init__(f"parse error at position {position}: {message}")


_TOKEN = re.compile(r"\s*(?:(\d+(?:\.\d+)?)|([A-Za-z_]\w*)|(.))")


@dataclass
class _Tok:
    kind: str  # num, name, op, end
    value: str
    pos: int


def _tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1):
            toks.append(_Tok("num", m.group(1), start))
        elif m.group(2):
            toks.append(_Tok("name", m.group(2), start))
        elif m.group(3):
            if m.group(3) not in "+-*/^()":
                raise ParseError(f"unexpected character {m.group(3)!r}", start, text)
            toks.append(_Tok("op", m.group(3), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Domain:
    def number(self, c: Fraction):
        raise NotImplementedError

    def name(self, name: str, pos: int, text: str):
        raise NotImplementedError

    def power(self, base, exp: int, base_tok: _Tok, pos: int, text: str):
        if exp < 0:
            raise ParseError("negative exponent", pos, text)
        result = self.number(Fraction(1))
        for _ in range(exp):
            result = result * base
        return result

    def constant_value(self, v):
        """The rational value of a constant element, or None."""
        raise NotImplementedError


class _PolyDomain(_Domain):
    names = {"d": DV, "x": XV}

    def number(self, c):
        return Poly.const(c)

    def name(self, name, pos, text):
        if name not in self.names:
            raise ParseError(f"unknown variable {name!r} (expected d or x)", pos, text)
        return Poly.var(self.names[name])

    def constant_value(self, v: Poly):
        return v.constant_term() if not v.variables() else None


class _OpDomain(_Domain):
    def number(self, c):
        return DiffOp.scalar(c)

    def name(self, name, pos, text):
        if name == "t":
            return DiffOp.t(1)
        if name == "D":
            return DiffOp.D(1)
        raise ParseError(f"unknown symbol {name!r} (expected t or D)", pos, text)

    def power(self, base, exp, base_tok, pos, text):
        if base_tok.kind == "name" and base_tok.value == "t":
            return DiffOp.t(exp)
        return super().power(base, exp, base_tok, pos, text)

    def constant_value(self, v: DiffOp):
        terms = v.terms
        if not terms:
            return Fraction(0)
        if list(terms) == [0] and terms[0].degree() == 0:
            return terms[0].coeff(0)
        return None


class _Parser:
    def __init__(self, text: str, domain: _Domain):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.dom = domain

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok.pos, self.text)

    def parse(self):
        if self.peek().kind == "end":
            self.fail("empty expression")
        v = self.expr()
        if self.peek().kind != "end":
            self.fail(f"unexpected {self.peek().value!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def _juxtaposed(self) -> bool:
        # "2x", "(d+x)x": a name or parenthesis right after a factor multiplies
        tok = self.peek()
        return tok.kind == "name" or (tok.kind == "op" and tok.value == "(")

    def term(self):
        v = self.unary()
        while (self.peek().kind == "op" and self.peek().value in "*/") or self._juxtaposed():
            if self._juxtaposed():
                v = v * self.power()
                continue
            op = self.take()
            rhs_tok = self.peek()
            rhs = self.unary()
            if op.value == "*":
                v = v * rhs
            else:
                c = self.dom.constant_value(rhs)
                if c is None:
                    self.fail("can only divide by a constant", rhs_tok)
                if c == 0:
                    self.fail("division by zero", rhs_tok)
                v = v * (1 / c)
        return v

    def unary(self):
        if self.peek().kind == "op" and self.peek().value in "+-":
            op = self.take().value
            v = self.unary()
            return -v if op == "-" else v
        return self.power()

    def power(self):
        base_tok = self.peek()
        base = self.atom()
        if self.peek().kind == "op" and self.peek().value == "^":
            caret = self.take()
            sign = 1
            if self.peek().kind == "op" and self.peek().value in "+-":
                sign = -1 if self.take().value == "-" else 1
            tok = self.peek()
            if tok.kind != "num" or not tok.value.isdigit():
                self.fail("exponent must be an integer")
            self.take()
            return self.dom.power(base, sign * int(tok.value), base_tok, caret.pos, self.text)
        return base

    def atom(self):
        tok = self.take()
        if tok.kind == "num":
            return self.dom.number(Fraction(tok.value))
        if tok.kind == "name":
            return self.dom.name(tok.value, tok.pos, self.text)
        if tok.kind == "op" and tok.value == "(":
            v = self.expr()
            if not (self.peek().kind == "op" and self.peek().value == ")"):
                self.fail("expected ')'")
            self.take()
            return v
        if tok.kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail(f"unexpected {tok.value!r}", tok)


def parse_gc(text: str) -> Poly:
    """Polynomial in d and x, e.g. ``x^2 + 1/2*d*x``."""
    return _Parser(text, _PolyDomain()).parse()


def parse_diffop(text: str) -> DiffOp:
    """Operator such as ``t^-1*(D^2-D) + 3*D``."""
    return _Parser(text, _OpDomain()).parse()


def parse_dpoly(text: str) -> UnivarPoly:
    """Polynomial in D alone."""
    op = parse_diffop(text)
    if set(op.terms) - {0}:
        raise ParseError("expected a polynomial in D without powers of t", 0, text)
    return op.coeff(0).with_var(DVAR)
