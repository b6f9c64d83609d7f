import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from diffchow import Ranking, Ring, parse
from diffchow.bridge import homogenize
from diffchow.errors import PreconditionError
from diffchow.homogeneity import (check_separant_initial_homogeneous,
                                  check_top_partials_homogeneous, is_diff_homogeneous,
                                  is_p_homogeneous, scale_substitute)
from diffchow.ring import Family

from helpers import polys, random_affine
from oracles import infinitesimal_homogeneity

R2 = Ring(n_y=2)
RU = Ring(n_y=1, u_blocks=2, u_arity=2)


def P(text, ring=R2):
    return parse(text, ring)


def T(text, ring=R2):
    return parse(text, ring, allow_t=True)


def test_scale_substitute_examples():
    assert scale_substitute(P("y0")) == T("t*y0")
    assert scale_substitute(P("y0'")) == T("t'*y0 + t*y0'")
    assert scale_substitute(P("y0*y1' - y1*y0'")) == T("t^2*(y0*y1' - y1*y0')")


def test_homogeneity_examples():
    rep = is_diff_homogeneous(P("y0*y1' - y1*y0'"))
    assert rep.homogeneous and rep.degree == 2
    rep = is_diff_homogeneous(P("y0'"))
    assert not rep.homogeneous and rep.witness == T("t'*y0")
    rep = is_diff_homogeneous(P("y0 + y0^2"))
    assert not rep.homogeneous and rep.witness is None
    assert rep.to_json() == {"homogeneous": False, "witness": None}


def test_p_homogeneity_examples():
    u0, u1 = (Family.U, 0), (Family.U, 1)
    reps = is_p_homogeneous(parse("u00*u11 - u01*u10", RU), [u0, u1])
    assert [r.degree for r in reps] == [1, 1]
    reps = is_p_homogeneous(parse("y0*u00", RU), [Family.Y, u0])
    assert [r.degree for r in reps] == [1, 1]
    reps = is_p_homogeneous(parse("u00 + u10", RU), [u0, u1])
    assert not any(r.homogeneous for r in reps)


def test_separant_initial_examples():
    r = Ranking.standard(R2, "orderly")
    assert check_separant_initial_homogeneous(P("y0*y1' - y1*y0'"), r)
    assert check_separant_initial_homogeneous(P("y0^2"), r)
    # y0^3 * (y1/y0)'' is homogeneous of degree 3 and order 2
    f = homogenize(P("y1''")).polynomial
    assert f == P("y0^2*y1'' - 2*y0*y0'*y1' - y0*y1*y0'' + 2*y1*y0'^2")
    assert check_separant_initial_homogeneous(f, r)
    assert check_separant_initial_homogeneous(f, Ranking.standard(R2, "elimination"))


def test_derivative_of_wronskian_is_not_homogeneous():
    f = P("y0*y1'' - y1*y0''")
    assert is_diff_homogeneous(f).witness == T("2*t*t'*(y0*y1' - y1*y0')")
    assert infinitesimal_homogeneity(f) is None


def test_second_wronskian_like_expression_is_not_homogeneous():
    # y0*y1'' - 2*y0'*y1' + y0''*y1 picks up 2*t*t''*y0*y1 under y -> t*y
    f = P("y0*y1'' - 2*y0'*y1' + y0''*y1")
    assert not is_diff_homogeneous(f).homogeneous
    assert infinitesimal_homogeneity(f) is None
    with pytest.raises(PreconditionError):
        check_separant_initial_homogeneous(f, Ranking.standard(R2, "orderly"))


@settings(max_examples=150, deadline=None)
@given(polys(R2, max_order=2, max_deg=3, max_terms=3))
def test_agrees_with_infinitesimal_oracle(f):
    if f.is_zero():
        return
    rep = is_diff_homogeneous(f)
    expected = infinitesimal_homogeneity(f)
    assert rep.homogeneous == (expected is not None)
    if rep.homogeneous:
        assert rep.degree == expected


def _homogeneous(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 2)
    return homogenize(random_affine(rng, n, rng.randint(0, 2), rng.randint(1, 3))).polynomial


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_degree_additivity(a, b):
    f, g = _homogeneous(a), _homogeneous(b)
    rf, rg, rfg = is_diff_homogeneous(f), is_diff_homogeneous(g), is_diff_homogeneous(f * g)
    assert rfg.homogeneous and rfg.degree == rf.degree + rg.degree


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_derivative_picks_up_t_prime_term(seed):
    # differentiating f(tY) = t^m f gives (f')(tY) = t^m f' + m t^(m-1) t' f,
    # so f' is not homogeneous once m >= 1
    f = _homogeneous(seed)
    m = is_diff_homogeneous(f).degree
    tt = T("t", f.ring)
    expected = tt ** m * f.differentiate() + (tt ** (m - 1) * tt.differentiate() * f).scale(m)
    assert scale_substitute(f.differentiate()) == expected
    assert not is_diff_homogeneous(f.differentiate()).homogeneous


@settings(max_examples=50, deadline=None)
@given(polys(R2, max_order=2, max_deg=3, max_terms=3))
def test_scale_substitute_commutes_with_derivation(f):
    assert scale_substitute(f).differentiate() == scale_substitute(f.differentiate())


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6))
def test_top_partials(seed):
    f = _homogeneous(seed)
    if is_diff_homogeneous(f).degree:
        assert check_top_partials_homogeneous(f)
