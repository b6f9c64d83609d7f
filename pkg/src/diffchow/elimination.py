"""Fraction-free determinants and Sylvester resultants over polynomial entries."""

from __future__ import annotations

from .poly import DiffPolynomial


def _is_zero(x):
    return x.is_zero() if isinstance(x, DiffPolynomial) else x == 0


def bareiss_det(matrix, ring):
    """Determinant by Bareiss elimination; every division is exact."""
    n = len(matrix)
    if n == 0:
        return DiffPolynomial.constant(1, ring)
    m = [[e if isinstance(e, DiffPolynomial) else DiffPolynomial.constant(e, ring)
          for e in row] for row in matrix]
    sign = 1
    prev = DiffPolynomial.constant(1, ring)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return DiffPolynomial.zero(ring)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * pivot - m[i][k] * m[k][j]
                m[i][j] = num if prev.is_ground() and prev.ground_value() == 1 else _exact(num, prev)
            m[i][k] = DiffPolynomial.zero(ring)
        prev = pivot
    det = m[n - 1][n - 1]
    return -det if sign < 0 else det


def _exact(num, den):
    if den.is_ground():
        return num / den.ground_value()
    return num.exquo(den)


def coefficients_in(p: DiffPolynomial, v) -> list:
    """Coefficients of p as a polynomial in v, lowest degree first."""
    parts = p.as_univariate(v)
    top = max(parts)
    return [parts.get(k, DiffPolynomial.zero(p.ring)) for k in range(top + 1)]


def sylvester_matrix(f: DiffPolynomial, g: DiffPolynomial, v) -> list:
    a = coefficients_in(f, v)[::-1]   # highest first
    b = coefficients_in(g, v)[::-1]
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    zero = DiffPolynomial.zero(f.ring.join(g.ring))
    rows = []
    for i in range(n):
        rows.append([zero] * i + a + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + b + [zero] * (size - n - 1 - i))
    return rows


def resultant(f: DiffPolynomial, g: DiffPolynomial, v) -> DiffPolynomial:
    """Res_v(f, g) as the Sylvester determinant."""
    ring = f.ring.join(g.ring)
    df, dg = f.degree(v), g.degree(v)
    if df == 0 and dg == 0:
        return DiffPolynomial.constant(1, ring)
    if df == 0:
        return f ** dg
    if dg == 0:
        return g ** df
    return bareiss_det(sylvester_matrix(f, g, v), ring)


def linear_eliminant(eqs, unknowns, ring) -> DiffPolynomial | None:
    """For k+1 equations affine-linear in k unknowns: det of the augmented matrix."""
    rows = []
    for e in eqs:
        row = []
        rest = e
        for w in unknowns:
            if e.degree(w) > 1:
                return None
            c = e.coefficient(w, 1)
            row.append(c)
            rest = rest - c * DiffPolynomial.var(w, ring)
        if any(w in rest.variables() for w in unknowns):
            return None
        row.append(rest)
        rows.append(row)
    return bareiss_det(rows, ring)
