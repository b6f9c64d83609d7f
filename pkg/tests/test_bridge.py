import random

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from diffchow import Ranking, Ring, parse
from diffchow.bridge import (dehomogenize, dehomogenize_charset, hm_companion, hm_polynomial,
                             homogenize, lambda_certificate, prolong_hyperplane,
                             vdelta_generators)
from diffchow.errors import PreconditionError
from diffchow.homogeneity import is_diff_homogeneous
from diffchow.reduction import CharSet, is_autoreduced

from helpers import random_affine
from oracles import certificate_identity, homogenize_oracle, infinitesimal_homogeneity, to_functional

R2 = Ring(n_y=2)
R3 = Ring(n_y=3)


def P(text, ring=R2):
    return parse(text, ring)


def test_dehomogenize_charset_examples():
    cases = [
        (R2, ["y0*y1' - y1*y0'"], ["y1'"]),
        (R3, ["y2", "y0*y1' - y1*y0'"], ["y2", "y1'"]),
        (R2, ["y1 - 2*y0"], ["y1 - 2"]),
    ]
    for ring, hom, aff in cases:
        r = Ranking.standard(ring, "orderly")
        cs = CharSet.asserted([P(t, ring) for t in hom], r)
        out = dehomogenize_charset(cs)
        assert sorted(out.rendered()) == sorted(P(t, ring).render() for t in aff)


def test_dehomogenize_rejects_inhomogeneous():
    cs = CharSet.asserted([P("y1' + y0")], Ranking.standard(R2, "orderly"))
    with pytest.raises(PreconditionError):
        dehomogenize_charset(cs)


def test_homogenize_examples():
    res = homogenize(P("y1'"))
    assert res.polynomial == P("y0*y1' - y1*y0'") and res.denomination == 2
    res = homogenize(P("y1 - 2"))
    assert res.polynomial == P("y1 - 2*y0") and res.denomination == 1
    res = homogenize(P("y1'*y1"))
    assert res.polynomial == P("y0*y1'*y1 - y1^2*y0'") and res.denomination == 3


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_homogenize_matches_quotient_oracle(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    r = random_affine(rng, n, rng.randint(0, 2), rng.randint(1, 3), nterms=2)
    res = homogenize(r)
    expected, l = homogenize_oracle(r, n)
    assert res.denomination == l
    assert sp.expand(to_functional(res.polynomial) - expected) == 0
    assert infinitesimal_homogeneity(res.polynomial) is not None
    assert dehomogenize(res.polynomial) == r


def test_vdelta_generators_examples():
    gens = vdelta_generators([P("y2", R3)], 2, R3)
    assert [g.render() for g in gens] == [
        "y2", "y0*y1' - y1*y0'", "y0*y2' - y2*y0'", "y1*y2' - y2*y1'"]
    assert [g.render() for g in vdelta_generators([], 1, R2)] == ["y0*y1' - y1*y0'"]
    lin = [P("y1 - 2*y0", R3), P("y2 - 3*y0", R3)]
    assert len(vdelta_generators(lin, 2, R3)) == 5
    with pytest.raises(PreconditionError):
        vdelta_generators([P("y1'")], 1, R2)


def test_prolong_hyperplane_examples():
    ring = Ring(n_y=3, u_blocks=1, u_arity=3)
    assert prolong_hyperplane(0, 2, ring) == parse("u00*y0 + u01*y1 + u02*y2", ring)
    assert prolong_hyperplane(1, 2, ring) == parse(
        "u00'*y0 + u00*y0' + u01'*y1 + u01*y1' + u02'*y2 + u02*y2'", ring)
    one = Ring(n_y=1, u_blocks=1, u_arity=1)
    assert prolong_hyperplane(2, 0, one) == parse("u00''*y0 + 2*u00'*y0' + u00*y0''", one)


@pytest.mark.parametrize("s", range(6))
def test_prolongation_is_iterated_derivative(s):
    ring = Ring(n_y=3, u_blocks=1, u_arity=3)
    assert prolong_hyperplane(s, 2, ring) == prolong_hyperplane(0, 2, ring).differentiate(s)


def test_h2_and_companion():
    one = Ring(n_y=1)
    assert hm_polynomial(2, one) == parse("y0''", one)
    f, red = hm_companion(2)
    assert f == P("y0*y1'' - y0''*y1")
    assert red.remainder.is_zero()
    with pytest.raises(PreconditionError):
        hm_polynomial(1)


@pytest.mark.parametrize("m", range(2, 7))
def test_hm_companions_reduce_to_zero(m):
    f, red = hm_companion(m)
    assert red.remainder.is_zero()
    wr = P("y0*y1' - y1*y0'")
    assert red.check(f, [wr])
    assert certificate_identity(f, [wr], red)
    # modulo the Wronskian z/y is constant, so z^(m) = (z/y) y^(m) and
    # h_m(y) = y^(m-2) y^(m)
    one = Ring(n_y=1)
    assert hm_polynomial(m, one) == parse(f"y0^{m - 2}*y0^({m})", one)


@pytest.mark.parametrize("k", range(1, 5))
@pytest.mark.parametrize("n", [1, 2])
def test_lambda_certificates(k, n):
    lam, elements, red = lambda_certificate(k, n)
    assert red.remainder.is_zero()
    assert red.multiplier == parse(f"y0^{k}", red.multiplier.ring)
    assert red.check(lam, elements)
    assert certificate_identity(lam, elements, red)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_round_trip_on_affine_charsets(seed):
    rng = random.Random(seed)
    ring = Ring(n_y=3)
    r = Ranking.standard(ring, "orderly")
    elems = []
    for base in rng.sample(ring.y_bases(1), rng.randint(1, 2)):
        # an element with leader in `base`, y0-free
        other = [b for b in ring.y_bases(1) if b != base]
        k = rng.randint(0, 2)
        text = f"y{base[2]}" + "'" * k
        if other and rng.random() < 0.7:
            text += f" + {rng.randint(-3, 3)}*y{other[0][2]}" + "'" * rng.randint(0, k)
        text += f" + {rng.randint(-3, 3)}"
        elems.append(parse(text, ring))
    if not is_autoreduced(elems, r):
        return
    hom = [homogenize(e).polynomial for e in elems]
    cs = CharSet.asserted(hom, r, check=False)
    back = dehomogenize_charset(cs)
    assert sorted(p.render() for p in back.elements) == sorted(p.render() for p in elems)
