"""Random polynomial generators shared by the tests."""

from __future__ import annotations

import random
from fractions import Fraction

from hypothesis import strategies as st

from diffchow import DiffPolynomial, Ring, y
from diffchow.ground import make_ground
from diffchow.ring import Var


def random_monomial(rng: random.Random, bases, max_order: int, max_deg: int):
    mono = {}
    for _ in range(rng.randint(0, max_deg)):
        v = Var(*rng.choice(bases), rng.randint(0, max_order))
        mono[v] = mono.get(v, 0) + 1
    return tuple(sorted(mono.items()))


def random_coeff(rng: random.Random, field: str = "Q"):
    c = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 3))
    if field == "Qx" and rng.random() < 0.3:
        return make_ground((c, rng.randint(-3, 3)), (1, rng.randint(1, 2)))
    return c


def random_poly(rng: random.Random, ring: Ring, bases=None, nterms: int = 4,
                max_order: int = 2, max_deg: int = 3) -> DiffPolynomial:
    bases = bases or ring.y_bases()
    terms = {}
    for _ in range(rng.randint(1, nterms)):
        mono = random_monomial(rng, bases, max_order, max_deg)
        terms[mono] = terms.get(mono, 0) + random_coeff(rng, ring.field)
    return DiffPolynomial(ring, terms)


def random_affine(rng: random.Random, n: int, max_order: int = 3, max_deg: int = 4,
                  nterms: int = 3) -> DiffPolynomial:
    """Nonzero, non-ground polynomial in y1..yn."""
    ring = Ring(n_y=n + 1)
    while True:
        p = random_poly(rng, ring, ring.y_bases(1), nterms, max_order, max_deg)
        if not p.is_ground():
            return p


@st.composite
def polys(draw, ring: Ring, max_order: int = 2, max_deg: int = 3, max_terms: int = 4):
    bases = ring.y_bases()
    var = st.builds(lambda b, k: Var(*b, k), st.sampled_from(bases),
                    st.integers(0, max_order))
    mono = st.lists(var, max_size=max_deg).map(
        lambda vs: tuple(sorted({v: vs.count(v) for v in vs}.items())))
    coeff = st.fractions(min_value=-20, max_value=20, max_denominator=6)
    terms = draw(st.dictionaries(mono, coeff, max_size=max_terms))
    return DiffPolynomial(ring, terms)


def y_var(j, k=0, ring=None):
    ring = ring or Ring(n_y=j + 1)
    return DiffPolynomial.var(y(j, k), ring)
