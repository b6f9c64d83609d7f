import pytest

from diffchow import Ranking, Ring, charset, parse
from diffchow.bridge import dehomogenize_charset
from diffchow.dimension import (check_sum_formula, dimension_polynomial,
                                intersect_generic_hyperplane, lattice_count, parametric_set)
from diffchow.errors import PreconditionError
from diffchow.reduction import CharSet
from diffchow.ring import y

from corpus import ENTRIES, build
from oracles import lattice_oracle

IDS = [e[0] for e in ENTRIES]


def cs_of(texts, ny, kind="orderly"):
    ring = Ring(n_y=ny)
    return ring, CharSet.asserted([parse(t, ring) for t in texts], Ranking.standard(ring, kind))


def test_worked_examples():
    ring, cs = cs_of(["y0*y1' - y1*y0'"], 2)
    dp = dimension_polynomial(cs, "projective", ring)
    assert (dp.a1, dp.a0, dp.dim, dp.order) == (1, 1, 0, 1)
    assert [dp(t) for t in range(4)] == [t + 2 for t in range(4)]
    ring, cs = cs_of(["y2"], 3)
    dp = dimension_polynomial(cs, "projective", ring)
    assert (dp.dim, dp.order) == (1, 0) and dp(3) == 8
    ring, cs = cs_of(["y2", "y0*y1' - y1*y0'"], 3)
    dp = dimension_polynomial(cs, "projective", ring)
    assert (dp.dim, dp.order) == (0, 1)


def test_affine_side_of_sum_formula():
    ring, cs = cs_of(["y0*y1' - y1*y0'"], 2)
    aff = dimension_polynomial(dehomogenize_charset(cs), "affine", ring)
    assert (aff.a1, aff.a0) == (0, 1)
    for texts, ny in [(["y0*y1' - y1*y0'"], 2), (["y2"], 3), (["y1 - 2*y0", "y2 - 3*y0"], 3)]:
        ring, cs = cs_of(texts, ny)
        assert check_sum_formula(cs, ring)


def test_parametric_sets():
    ring, cs = cs_of(["y0*y1' - y1*y0'"], 2)
    assert parametric_set(cs, ring) == [y(0)]
    ring, cs = cs_of(["y2"], 3)
    assert parametric_set(cs, ring) == [y(0), y(1)]
    ring, cs = cs_of(["y1 - 2*y0", "y2 - 3*y0"], 3)
    assert parametric_set(cs, ring) == [y(0)]


def test_elimination_input_is_recomputed():
    ring = Ring(n_y=3)
    gens = [parse("y2", ring), parse("y0*y1' - y1*y0'", ring)]
    cs = charset(gens, Ranking.standard(ring, "elimination"))
    dp = dimension_polynomial(cs, "projective", ring)
    assert (dp.dim, dp.order) == (0, 1)


def test_intersection_examples():
    for texts, ny in [(["y2"], 3), (["y3", "y2"], 4)]:
        ring, cs = cs_of(texts, ny)
        res = intersect_generic_hyperplane(cs, ring)
        assert (res.dim_after, res.order_after) == (0, 0)
        assert res.holds


def test_intersection_guards():
    ring = Ring(n_y=2)
    with pytest.raises(PreconditionError):
        intersect_generic_hyperplane(CharSet([], Ranking.standard(ring)), ring)
    ring, cs = cs_of(["y0*y1' - y1*y0'"], 2)
    with pytest.raises(PreconditionError):
        intersect_generic_hyperplane(cs, ring)


@pytest.mark.parametrize("entry", ENTRIES, ids=IDS)
def test_corpus_dimension_and_lattice(entry):
    ring, cs = build(entry)
    dp = dimension_polynomial(cs, "projective", ring)
    assert (dp.dim, dp.order) == entry[3:]
    assert dp.a1 == dp.dim + 1
    bases = ring.y_bases()
    # omega equals the count of free derivatives from the stability threshold on
    for t in range(dp.stability_threshold, dp.stability_threshold + 6):
        assert lattice_oracle(cs.elements, bases, bases, t) == dp(t)
        assert lattice_count(cs, t, ring) == dp(t)
    assert parametric_set(cs, ring)


def test_below_threshold_count_is_not_yet_polynomial():
    ring, cs = build(next(e for e in ENTRIES if e[0] == "second-order relation"))
    dp = dimension_polynomial(cs, "projective", ring)
    assert dp.stability_threshold == 1
    bases = ring.y_bases()
    assert lattice_oracle(cs.elements, bases, bases, 0) == 3
    assert dp(0) == 4


@pytest.mark.parametrize("entry", ENTRIES, ids=IDS)
def test_corpus_sum_formula(entry):
    ring, cs = build(entry)
    proj = dimension_polynomial(cs, "projective", ring)
    aff_cs = dehomogenize_charset(cs)
    aff = dimension_polynomial(aff_cs, "affine", ring)
    bases = ring.y_bases()
    for t in range(11):
        assert proj(t) == (t + 1) + aff(t)
        full = lattice_oracle(cs.elements, bases, bases, t)
        part = lattice_oracle(aff_cs.elements, bases, bases[1:], t)
        assert full == (t + 1) + part
        if t >= proj.stability_threshold:
            assert full == proj(t) and part == aff(t)


@pytest.mark.parametrize("entry", [e for e in ENTRIES if e[3] >= 1], ids=lambda e: e[0])
def test_corpus_intersection(entry):
    ring, cs = build(entry)
    res = intersect_generic_hyperplane(cs, ring)
    assert res.dim_after == entry[3] - 1
    assert res.order_after == entry[4]
