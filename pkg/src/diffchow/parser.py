"""Text syntax for differential polynomials.

Grammar (whitespace ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom postfix* ("^" INT)?
    postfix:= "'" | "^(" INT ")"      # derivative; "^(k)" only right after a variable
    atom   := INT | "x" | VARIABLE | "(" expr ")"

Division is only allowed by a nonzero ground element. ``x`` is the ground
variable of Q(x) and is rejected when the ring uses Q.
"""

from __future__ import annotations

import re

from .errors import OrderOverflowError, ParseError, UnknownVariableError
from .ground import X
from .poly import DiffPolynomial
from .ring import Family, Ring, Var, parse_base

MAX_ORDER = 1000

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def tokenize(text: str) -> list:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(0).strip() == "":
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            tokens.append(("op", m.group(3), start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring, allow_t):
        self.text = text
        self.ring = ring
        self.allow_t = allow_t
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def next(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None, cls=ParseError):
        tok = tok or self.peek()
        return cls(msg, position=tok[2], text=self.text)

    def expect(self, op):
        tok = self.next()
        if tok[0] != "op" or tok[1] != op:
            raise self.error(f"expected {op!r}", tok)
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        p = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self):
        p = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.next()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self):
        p = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.next()
                p = p * self.unary()
            elif tok[0] == "op" and tok[1] == "/":
                self.next()
                q = self.unary()
                if not q.is_ground():
                    raise self.error("can only divide by a ground element", tok)
                if q.is_zero():
                    raise self.error("division by zero", tok)
                p = p / q.ground_value()
            else:
                return p

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.next()
            p = self.unary()
            return -p if tok[1] == "-" else p
        return self.power()

    def power(self):
        tok = self.peek()
        p, is_var = self.atom()
        while True:
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "'":
                self.next()
                p = self._derive(p, 1, nxt)
            elif (is_var and nxt[0] == "op" and nxt[1] == "^"
                  and self.tokens[self.i + 1][1] == "("):
                self.next()
                self.next()
                k = self.next()
                if k[0] != "int":
                    raise self.error("expected a derivative order", k)
                self.expect(")")
                p = self._derive(p, k[1], k)
            else:
                break
        nxt = self.peek()
        if nxt[0] == "op" and nxt[1] == "^":
            self.next()
            k = self.next()
            if k[0] == "op" and k[1] == "(":
                k = self.next()
                self.expect(")")
            if k[0] != "int":
                raise self.error("expected an integer exponent", k)
            p = p ** k[1]
        del tok
        return p

    def _derive(self, p, times, tok):
        if p.order() + times > MAX_ORDER:
            raise self.error(f"derivative order exceeds {MAX_ORDER}", tok, OrderOverflowError)
        return p.differentiate(times)

    def atom(self):
        tok = self.next()
        kind, val, _ = tok
        if kind == "int":
            return DiffPolynomial.constant(val, self.ring), False
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect(")")
            return p, False
        if kind == "name":
            if val == "x":
                if self.ring.field != "Qx":
                    raise self.error("'x' is only allowed over the field Qx", tok)
                return DiffPolynomial.constant(X, self.ring), False
            try:
                fam, block, index = parse_base(val)
            except ParseError:
                raise self.error(f"unknown variable {val!r}", tok, UnknownVariableError)
            if fam == Family.T and not self.allow_t:
                raise self.error("the scaling variable t is reserved", tok, UnknownVariableError)
            v = Var(fam, block, index, 0)
            if not self.ring.contains(v):
                raise self.error(f"variable {val!r} is not declared in the ring", tok,
                                 UnknownVariableError)
            return DiffPolynomial.var(v, self.ring), True
        raise self.error(f"unexpected token {val!r}", tok)


def parse(text: str, ring: Ring, allow_t: bool = False) -> DiffPolynomial:
    """Parse ``text`` into a canonical polynomial of ``ring``."""
    return _Parser(text, ring, allow_t).parse()


def render(p: DiffPolynomial) -> str:
    return p.render()
