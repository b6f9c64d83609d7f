"""Ground-field coefficients: Q, or Q(x) with derivation d/dx.

Rational constants are plain ``int`` or ``Fraction`` values; only genuinely
non-constant elements of Q(x) are ``RationalFunction`` instances. All
arithmetic helpers below keep that invariant.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

# Dense univariate polynomials in x over Q: tuples of coefficients, lowest
# degree first, no trailing zeros. The zero polynomial is ().


def _q(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def upoly(coeffs) -> tuple:
    coeffs = [_q(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


def uadd(a, b):
    if len(a) < len(b):
        a, b = b, a
    return upoly([ca + (b[i] if i < len(b) else 0) for i, ca in enumerate(a)])


def uneg(a):
    return tuple(-c for c in a)


def usub(a, b):
    return uadd(a, uneg(b))


def umul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return upoly(out)


def uscale(a, c):
    return upoly([c * v for v in a])


def udivmod(a, b):
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    a = list(a)
    lead = Fraction(b[-1])
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        factor = _q(Fraction(a[-1]) / lead)
        q[shift] = factor
        for i, cb in enumerate(b):
            a[i + shift] -= factor * cb
        a = list(upoly(a))
    return upoly(q), upoly(a)


def ugcd(a, b):
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def umonic(a):
    if not a:
        return a
    lead = Fraction(a[-1])
    return upoly([Fraction(c) / lead for c in a])


def uderiv(a):
    return upoly([i * c for i, c in enumerate(a)][1:])


def ueval(a, value):
    acc = 0
    for c in reversed(a):
        acc = acc * value + c
    return _q(acc)


def uprimitive(a):
    """Scale to coprime integer coefficients with positive leading coefficient."""
    if not a:
        return a
    fr = [Fraction(c) for c in a]
    den = 1
    for c in fr:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in fr]
    g = 0
    for c in ints:
        g = gcd(g, c)
    if ints[-1] < 0:
        g = -g
    return tuple(c // g for c in ints)


def render_upoly(a, var="x") -> str:
    """Render with highest degree first, e.g. ``3/2*x^2 - x + 1``."""
    if not a:
        return "0"
    parts = []
    for deg in range(len(a) - 1, -1, -1):
        c = a[deg]
        if c == 0:
            continue
        neg = c < 0
        mag = -c if neg else c
        if deg == 0:
            body = str(mag)
        else:
            mono = var if deg == 1 else f"{var}^{deg}"
            body = mono if mag == 1 else f"{mag}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


class RationalFunction:
    """A non-constant element ``num/den`` of Q(x).

    The fraction is reduced and ``den`` is monic. Use :func:`make_ground`
    rather than the constructor so that constants collapse to rationals.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=(1,)):
        self.num = num
        self.den = den
        self._hash = None

    @staticmethod
    def _coerce(c):
        if isinstance(c, RationalFunction):
            return c.num, c.den
        return upoly([c]), (1,)

    def __add__(self, other):
        n1, d1 = self.num, self.den
        n2, d2 = self._coerce(other)
        if d1 == d2:
            return make_ground(uadd(n1, n2), d1)
        return make_ground(uadd(umul(n1, d2), umul(n2, d1)), umul(d1, d2))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(uneg(self.num), self.den)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        n2, d2 = self._coerce(other)
        return make_ground(umul(self.num, n2), umul(self.den, d2))

    __rmul__ = __mul__

    def __truediv__(self, other):
        n2, d2 = self._coerce(other)
        if not n2:
            raise ZeroDivisionError("division by zero in Q(x)")
        return make_ground(umul(self.num, d2), umul(self.den, n2))

    def __rtruediv__(self, other):
        n1, d1 = self._coerce(other)
        return make_ground(umul(n1, self.den), umul(d1, self.num))

    def __pow__(self, k):
        out = 1
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return False

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(("RF", self.num, self.den))
        return self._hash

    def derivative(self):
        # (p/q)' = (p'q - pq')/q^2
        num = usub(umul(uderiv(self.num), self.den), umul(self.num, uderiv(self.den)))
        return make_ground(num, umul(self.den, self.den))

    def is_negative(self) -> bool:
        return self.num[-1] < 0

    def __repr__(self):
        return f"RationalFunction({render_ground(self)})"


def make_ground(num, den=(1,)):
    """Build a reduced element of Q(x); constants come back as int/Fraction."""
    num, den = upoly(num), upoly(den)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return 0
    if len(den) > 1:
        g = ugcd(num, den)
        if len(g) > 1:
            num = udivmod(num, g)[0]
            den = udivmod(den, g)[0]
    lead = Fraction(den[-1])
    if lead != 1:
        num = upoly([Fraction(c) / lead for c in num])
        den = upoly([Fraction(c) / lead for c in den])
    if len(num) == 1 and len(den) == 1:
        return _q(Fraction(num[0]))
    return RationalFunction(num, den)


X = RationalFunction((0, 1), (1,))


def gdiv(a, b):
    """Exact division of ground elements."""
    if b == 0:
        raise ZeroDivisionError("division by zero")
    if isinstance(a, RationalFunction):
        return a / b
    if isinstance(b, RationalFunction):
        return b.__rtruediv__(a)
    return _q(Fraction(a) / b)


def gderiv(c):
    if isinstance(c, RationalFunction):
        return c.derivative()
    return 0


def gnorm(c):
    return _q(c) if isinstance(c, Fraction) else c


def is_negative(c) -> bool:
    if isinstance(c, RationalFunction):
        return c.is_negative()
    return c < 0


def render_ground(c) -> str:
    """Render a ground element so that the polynomial parser reads it back."""
    if not isinstance(c, RationalFunction):
        return str(c)
    num = render_upoly(c.num)
    if len([v for v in c.num if v != 0]) > 1:
        num = f"({num})"
    if c.den == (1,):
        return num
    den = render_upoly(c.den)
    if len([v for v in c.den if v != 0]) > 1 or c.den[-1] != 1:
        den = f"({den})"
    return f"{num}/{den}"


def ground_parts(c):
    """Return ``(numerator, denominator)`` dense polynomials of a ground element."""
    if isinstance(c, RationalFunction):
        return c.num, c.den
    return upoly([c]), (1,)
