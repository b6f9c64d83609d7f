"""Truncated power series in x with exact rational coefficients.

A :class:`Series` knows its coefficients ``a_0 .. a_{N-1}``; everything from
``x^N`` on is unknown. Arithmetic tracks the absolute precision ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InsufficientPrecisionError, PreconditionError
from .ground import RationalFunction, _q, upoly


class Series:
    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs, prec: int):
        coeffs = [_q(c) for c in list(coeffs)[:prec]]
        if len(coeffs) < prec:
            coeffs.extend([0] * (prec - len(coeffs)))
        self.coeffs = tuple(coeffs)
        self.prec = prec

    @classmethod
    def from_poly(cls, coeffs, prec: int) -> "Series":
        """Series of a polynomial given by its coefficients, lowest first."""
        return cls(coeffs, prec)

    @classmethod
    def constant(cls, c, prec: int) -> "Series":
        return cls([c], prec)

    @classmethod
    def from_ground(cls, c, prec: int) -> "Series":
        if isinstance(c, RationalFunction):
            num = cls(c.num, prec)
            den = cls(c.den, prec)
            if den.coeffs[0] == 0:
                raise PreconditionError(
                    "coefficient has a pole at x = 0; no power series expansion")
            return num / den
        return cls([c], prec)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self):
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return None

    def _binary(self, other):
        if not isinstance(other, Series):
            other = Series([other], self.prec)
        return other, min(self.prec, other.prec)

    def __add__(self, other):
        other, n = self._binary(other)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(n)], n)

    __radd__ = __add__

    def __neg__(self):
        return Series([-c for c in self.coeffs], self.prec)

    def __sub__(self, other):
        other, n = self._binary(other)
        return Series([self.coeffs[i] - other.coeffs[i] for i in range(n)], n)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series([c * other for c in self.coeffs], self.prec)
        n = min(self.prec, other.prec)
        a, b = self.coeffs, other.coeffs
        out = [0] * n
        for i in range(n):
            ai = a[i]
            if ai == 0:
                continue
            for j in range(n - i):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj
        return Series(out, n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Series([1], self.prec)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def inverse(self) -> "Series":
        a0 = self.coeffs[0] if self.prec else 0
        if a0 == 0:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = self.prec
        inv = [Fraction(1) / a0]
        for k in range(1, n):
            acc = 0
            for i in range(1, k + 1):
                acc += self.coeffs[i] * inv[k - i]
            inv.append(-acc / a0 if not isinstance(acc, int) else Fraction(-acc) / a0)
        return Series(inv, n)

    def __truediv__(self, other):
        if not isinstance(other, Series):
            return Series([Fraction(c) / other for c in self.coeffs], self.prec)
        k = other.valuation()
        if k is None:
            raise InsufficientPrecisionError(
                "division by a series that vanishes to known precision", precision=other.prec)
        num_val = self.valuation()
        if num_val is not None and num_val < k:
            raise PreconditionError("quotient is not a power series (pole at x = 0)")
        n = min(self.prec, other.prec) - k
        if n <= 0:
            raise InsufficientPrecisionError("no precision left after division")
        a = Series(self.coeffs[k:], n)
        b = Series(other.coeffs[k:], n)
        return a * b.inverse()

    def derivative(self, times: int = 1) -> "Series":
        coeffs = self.coeffs
        for _ in range(times):
            coeffs = [i * c for i, c in enumerate(coeffs)][1:]
        return Series(coeffs, max(self.prec - times, 0))

    def truncate(self, prec: int) -> "Series":
        return Series(self.coeffs, min(prec, self.prec))

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        n = min(self.prec, other.prec)
        return self.coeffs[:n] == other.coeffs[:n]

    __hash__ = None

    def as_poly(self) -> tuple:
        """Known coefficients with trailing zeros dropped."""
        return upoly(self.coeffs)

    def render(self) -> str:
        from .ground import render_upoly

        body = render_upoly(self.as_poly())
        return f"{body} + O(x^{self.prec})"

    def __repr__(self):
        return f"Series({self.render()})"


@dataclass(frozen=True)
class DiffPoint:
    """A tuple of truncated power series sharing one precision."""

    coords: tuple
    precision: int

    def __post_init__(self):
        coords = tuple(self.coords)
        object.__setattr__(self, "coords", coords)
        for c in coords:
            if c.prec != self.precision:
                raise PreconditionError("all coordinates must share the point's precision")

    @classmethod
    def from_ground(cls, values, precision: int = 16) -> "DiffPoint":
        """Build from ground elements (ints, Fractions, RationalFunctions)."""
        return cls(tuple(Series.from_ground(v, precision) for v in values), precision)

    @classmethod
    def from_polys(cls, polys, precision: int = 16) -> "DiffPoint":
        return cls(tuple(Series.from_poly(p, precision) for p in polys), precision)

    def __len__(self):
        return len(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def is_projective_representative(self) -> bool:
        return any(c.coeffs[0] != 0 for c in self.coords if c.prec)

    def render(self) -> list:
        return [c.render() for c in self.coords]
