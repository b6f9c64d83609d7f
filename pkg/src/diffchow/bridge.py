"""Passing between homogeneous ideals in y0..yn and affine ideals in y1..yn.

Dehomogenization sets y0 = 1 (so every y0^(k), k >= 1, becomes 0).
Homogenization substitutes y_j -> y_j / y0 and clears the y0 denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .errors import PreconditionError, VerificationError
from .homogeneity import is_diff_homogeneous
from .poly import DiffPolynomial
from .ranking import Ranking
from .reduction import CharSet, leader, pseudo_remainder
from .ring import Family, Ring, Var, u, y

Y0 = (Family.Y, 0, 0)


@dataclass
class HomogenizationResult:
    polynomial: DiffPolynomial
    denomination: int


def dehomogenize(p: DiffPolynomial) -> DiffPolynomial:
    out = {}
    for mono, c in p.terms.items():
        rest = []
        dead = False
        for v, e in mono:
            if v.base == Y0:
                if v.order > 0:
                    dead = True
                    break
            else:
                rest.append((v, e))
        if dead:
            continue
        rest = tuple(rest)
        out[rest] = out.get(rest, 0) + c
    return DiffPolynomial(p.ring, out)


def dehomogenize_charset(cs: CharSet) -> CharSet:
    """Image of a homogeneous characteristic set under y0 = 1, leaders kept."""
    images = []
    for a in cs.elements:
        if not is_diff_homogeneous(a).homogeneous:
            raise PreconditionError("characteristic set element is not homogeneous",
                                    poly=a.render())
        ld = leader(a, cs.ranking)
        if ld.base == Y0:
            raise PreconditionError("y0 must not be a leader variable", poly=a.render())
        b = dehomogenize(a)
        if b.is_zero() or leader(b, cs.ranking) != ld:
            raise VerificationError("dehomogenization changed a leader", poly=a.render())
        images.append(b)
    return CharSet(images, cs.ranking, cs.provenance)


def homogenize(r: DiffPolynomial, check: bool = True) -> HomogenizationResult:
    """``y0^l * r(y1/y0, ..., yn/y0)`` with the exact denomination ``l``."""
    if r.is_zero():
        raise PreconditionError("cannot homogenize the zero polynomial")
    if Y0 in r.bases():
        raise PreconditionError("affine input must not involve y0")
    ring = r.ring if r.ring.n_y >= 1 else r.ring.join(Ring(n_y=1, field=r.ring.field))
    y0 = DiffPolynomial.var(y(0), ring)
    numerators = {b: DiffPolynomial.var(Var(*b, 0), ring)
                  for b in r.bases() if b[0] == Family.Y}
    num, _, power = r.substitute_quotients(numerators, y0)
    # strip any leftover plain y0 factor so that l is minimal
    while power > 0 and all(any(v == y(0) for v, _ in mono) for mono in num.terms):
        num = num.exquo(y0)
        power -= 1
    if check and not is_diff_homogeneous(num).homogeneous:
        raise VerificationError("homogenization produced a non-homogeneous polynomial",
                                poly=num.render())
    return HomogenizationResult(num, power)


def wronskian_minor(i: int, j: int, ring: Ring) -> DiffPolynomial:
    """G_ij = y_i y_j' - y_j y_i'."""
    yi, yj = DiffPolynomial.var(y(i), ring), DiffPolynomial.var(y(j), ring)
    return yi * yj.differentiate() - yj * yi.differentiate()


def vdelta_generators(gens, n: int, ring: Ring | None = None) -> list:
    """Algebraic generators plus every Wronskian minor G_ij, 0 <= i < j <= n."""
    gens = list(gens)
    if ring is None:
        ring = gens[0].ring if gens else Ring(n_y=n + 1)
    ring = ring.join(Ring(n_y=n + 1, field=ring.field))
    for g in gens:
        if g.order() > 0:
            raise PreconditionError("algebraic generators must not involve derivatives",
                                    poly=g.render())
    minors = [wronskian_minor(i, j, ring) for i in range(n + 1) for j in range(i + 1, n + 1)]
    return gens + minors


def prolong_hyperplane(s: int, n: int, ring: Ring | None = None, block: int = 0) -> DiffPolynomial:
    """sum_j sum_k C(s,k) u_bj^(k) y_j^(s-k), the s-th prolongation of the hyperplane."""
    if ring is None:
        ring = Ring(n_y=n + 1, u_blocks=block + 1, u_arity=n + 1)
    terms = {}
    for j in range(n + 1):
        for k in range(s + 1):
            uv, yv = u(block, j, k), y(j, s - k)
            mono = tuple(sorted([(uv, 1), (yv, 1)]))
            terms[mono] = comb(s, k)
    return DiffPolynomial(ring, terms)


def hm_polynomial(m: int, ring: Ring | None = None) -> DiffPolynomial:
    """h_m(y) in the variable y0 from the binomial recurrence.

    h_1 stands for y'/y; it is stored as H_1 = y' and the missing 1/y is
    absorbed by lowering the y exponent of the s = 1 term.
    """
    if m < 2:
        raise PreconditionError("h_m is defined for m >= 2", m=m)
    ring = ring or Ring(n_y=1)
    yv = DiffPolynomial.var(y(0), ring)
    h = {1: yv.differentiate()}
    for mm in range(2, m + 1):
        acc = yv.differentiate(mm) * yv ** (mm - 2)
        for s_ in range(1, mm):
            c = comb(mm - 1, s_) - comb(mm - 1, s_ - 1)
            if c == 0:
                continue
            e = mm - s_ - 1 - (1 if s_ == 1 else 0)
            acc = acc + (yv.differentiate(mm - s_) * yv ** e * h[s_]).scale(c)
        h[mm] = acc
    return h[m]


def hm_companion(m: int):
    """Pseudo-reduce y^(m-1) z^(m) - h_m(y) z modulo y z' - z y' (y = y0, z = y1)."""
    ring = Ring(n_y=2)
    yv, zv = DiffPolynomial.var(y(0), ring), DiffPolynomial.var(y(1), ring)
    f = yv ** (m - 1) * zv.differentiate(m) - hm_polynomial(m, ring) * zv
    r = Ranking.elimination([(Family.Y, 0, 0), (Family.Y, 0, 1)])
    return f, pseudo_remainder(f, [wronskian_minor(0, 1, ring)], r, keep_quotients=True)


def lambda_certificate(k: int, n: int):
    """Reduce sum_j u_0j^(k) y_j modulo the hyperplane and the minors G_0j.

    Ranking y0 < ... < yn < u01 < ... < u0n < u00 (elimination), so every
    initial and separant used is y0. Returns ``(Lambda_k, elements, reduction)``.
    """
    ring = Ring(n_y=n + 1, u_blocks=1, u_arity=n + 1)
    lam = DiffPolynomial(ring, {tuple(sorted([(u(0, j, k), 1), (y(j), 1)])): 1
                                for j in range(n + 1)})
    elements = [prolong_hyperplane(0, n, ring)] + [wronskian_minor(0, j, ring)
                                                   for j in range(1, n + 1)]
    order = [(Family.Y, 0, j) for j in range(n + 1)]
    order += [(Family.U, 0, j) for j in range(1, n + 1)] + [(Family.U, 0, 0)]
    r = Ranking.elimination(order)
    return lam, elements, pseudo_remainder(lam, elements, r, keep_quotients=True)
