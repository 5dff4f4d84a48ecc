"""Recursive-descent parser for small polynomial expressions.

Grammar (whitespace is ignored everywhere):

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor factor*            # juxtaposition multiplies, '*' optional
    factor   := primary ['^' integer]
    primary  := rational | 'i' | variable | '(' expr ')'
    rational := integer ['/' integer]

Values are sparse polynomials over a caller-fixed variable tuple, with
Gaussian-rational coefficients.  This one grammar covers linear factors such
as ``y+3x+1``, Gaussian coefficient literals such as ``3+1/2i``, and family
coefficients such as ``5*t - (t - t^2)i``.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .gaussian import GaussianRational

# A polynomial is {exponent tuple: coefficient}, exponents aligned with the
# variable tuple handed to parse_polynomial.
Poly = dict


def poly_const(value, nvars: int) -> Poly:
    g = GaussianRational(value) if not isinstance(value, GaussianRational) else value
    if not g:
        return {}
    return {(0,) * nvars: g}


def poly_add(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for mono, c in q.items():
        s = out.get(mono, GaussianRational(0)) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def poly_neg(p: Poly) -> Poly:
    return {mono: -c for mono, c in p.items()}


def poly_mul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for m1, c1 in p.items():
        for m2, c2 in q.items():
            mono = tuple(a + b for a, b in zip(m1, m2))
            s = out.get(mono, GaussianRational(0)) + c1 * c2
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def poly_pow(p: Poly, n: int, nvars: int) -> Poly:
    out = poly_const(1, nvars)
    for _ in range(n):
        out = poly_mul(out, p)
    return out


_OPS = set("+-*^()/")


def _tokenize(text: str):
    """Yield (kind, value, position) with kind in {'num', 'name', 'i', 'op'}."""
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch.isdigit():
            start = pos
            while pos < n and text[pos].isdigit():
                pos += 1
            tokens.append(("num", int(text[start:pos]), start))
            continue
        if ch == "i":
            tokens.append(("i", "i", pos))
            pos += 1
            continue
        if ch.isalpha():
            tokens.append(("name", ch, pos))
            pos += 1
            continue
        if ch in _OPS:
            tokens.append(("op", ch, pos))
            pos += 1
            continue
        raise ParseError("unexpected character", column=pos, token=ch)
    return tokens


class _Parser:
    def __init__(self, tokens, variables, text):
        self.tokens = tokens
        self.variables = variables
        self.nvars = len(variables)
        self.pos = 0
        self.text = text

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", token=self.text)
        self.pos += 1
        return tok

    def expect_op(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            raise ParseError(f"expected {op!r}", column=tok[2], token=str(tok[1]))

    def expr(self) -> Poly:
        sign = 1
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = poly_neg(value)
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                break
            self.take()
            rhs = self.term()
            value = poly_add(value, poly_neg(rhs) if tok[1] == "-" else rhs)
        return value

    def term(self) -> Poly:
        value = self.factor()
        while True:
            tok = self.peek()
            if tok is None:
                break
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                value = poly_mul(value, self.factor())
                continue
            if tok[0] in ("num", "name", "i") or (tok[0] == "op" and tok[1] == "("):
                value = poly_mul(value, self.factor())
                continue
            break
        return value

    def factor(self) -> Poly:
        value = self.primary()
        tok = self.peek()
        if tok and tok[0] == "op" and tok[1] == "^":
            self.take()
            etok = self.take()
            if etok[0] != "num":
                raise ParseError("exponent must be a nonnegative integer",
                                 column=etok[2], token=str(etok[1]))
            value = poly_pow(value, etok[1], self.nvars)
        return value

    def primary(self) -> Poly:
        tok = self.take()
        kind, value, where = tok
        if kind == "num":
            numerator = value
            nxt = self.peek()
            if nxt and nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num" or den[1] == 0:
                    raise ParseError("denominator must be a positive integer",
                                     column=den[2], token=str(den[1]))
                return poly_const(Fraction(numerator, den[1]), self.nvars)
            return poly_const(Fraction(numerator), self.nvars)
        if kind == "i":
            return poly_const(GaussianRational(0, 1), self.nvars)
        if kind == "name":
            if value not in self.variables:
                raise ParseError("unknown variable", column=where, token=value)
            mono = tuple(1 if v == value else 0 for v in self.variables)
            return {mono: GaussianRational(1)}
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise ParseError("unexpected token", column=where, token=str(value))


def parse_polynomial(text: str, variables: tuple[str, ...]) -> Poly:
    """Parse ``text`` into a sparse polynomial over ``variables``."""
    if not text.strip():
        raise ParseError("empty expression", token=text)
    parser = _Parser(_tokenize(text), variables, text)
    value = parser.expr()
    tok = parser.peek()
    if tok is not None:
        raise ParseError("trailing input", column=tok[2], token=str(tok[1]))
    return value


def parse_gaussian_literal(text: str) -> GaussianRational:
    """Parse a coefficient literal such as ``-3``, ``1/2`` or ``3+1/2i``."""
    poly = parse_polynomial(text, ())
    if not poly:
        return GaussianRational(0)
    return poly[()]
