"""Differential homogeneity: f(tY) = t^m f(Y) for a fresh differential indeterminate t."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .poly import DiffPolynomial
from .ranking import Ranking
from .reduction import initial, separant
from .ring import Family, Var, t


def block_predicate(block):
    """Turn a block description into a predicate on bases.

    Accepted: ``Family.Y`` (all y_j), ``(Family.U, i)`` (the row u_i*), or an
    explicit collection of bases.
    """
    if block == Family.Y or block == "Y":
        return lambda base: base[0] == Family.Y
    if isinstance(block, tuple) and len(block) == 2 and block[0] in (Family.U, "U"):
        row = block[1]
        return lambda base: base[0] == Family.U and base[1] == row
    chosen = set(block)
    return lambda base: base in chosen


def describe_block(block) -> str:
    if block == Family.Y or block == "Y":
        return "Y"
    if isinstance(block, tuple) and len(block) == 2 and block[0] in (Family.U, "U"):
        return f"u{block[1]}"
    return "custom"


@dataclass
class HomogeneityReport:
    homogeneous: bool
    degree: int | None = None
    witness: DiffPolynomial | None = None
    block: str = "Y"

    def to_json(self) -> dict:
        if self.homogeneous:
            return {"homogeneous": True, "degree": self.degree}
        return {"homogeneous": False,
                "witness": None if self.witness is None else self.witness.render()}


def scale_substitute(f: DiffPolynomial, block=Family.Y) -> DiffPolynomial:
    """Replace each base v of the block by t*v, so v^(k) becomes sum C(k,i) t^(i) v^(k-i)."""
    if any(v.family == Family.T for v in f.variables()):
        raise PreconditionError("input already contains the scaling variable t")
    inside = block_predicate(block)
    tt = DiffPolynomial.var(t(), f.ring)
    mapping = {}
    for base in f.bases():
        if inside(base):
            mapping[base] = tt * DiffPolynomial.var(Var(*base, 0), f.ring)
    if not mapping:
        return f
    return f.substitute(mapping)


def block_degrees(f: DiffPolynomial, block=Family.Y) -> set:
    inside = block_predicate(block)
    return f.degree_in(lambda v: inside(v.base))


def is_diff_homogeneous(f: DiffPolynomial, block=Family.Y) -> HomogeneityReport:
    if f.is_zero():
        raise PreconditionError("the zero polynomial has no homogeneity degree")
    name = describe_block(block)
    degrees = block_degrees(f, block)
    if len(degrees) != 1:
        return HomogeneityReport(False, None, None, name)
    m = degrees.pop()
    scaled = scale_substitute(f, block)
    diff = scaled - DiffPolynomial.var(t(), f.ring, m) * f if m else scaled - f
    if diff.is_zero():
        return HomogeneityReport(True, m, None, name)
    return HomogeneityReport(False, None, diff, name)


def is_p_homogeneous(f: DiffPolynomial, blocks) -> list:
    blocks = list(blocks)
    names = [describe_block(b) for b in blocks]
    if len(set(map(repr, blocks))) != len(blocks):
        raise PreconditionError("blocks must be pairwise distinct", blocks=names)
    return [is_diff_homogeneous(f, b) for b in blocks]


def check_separant_initial_homogeneous(f: DiffPolynomial, r: Ranking,
                                       block=Family.Y) -> bool:
    """Separant homogeneous of degree m-1 and initial homogeneous, for homogeneous f of degree m > 0."""
    rep = is_diff_homogeneous(f, block)
    if not rep.homogeneous or rep.degree == 0:
        raise PreconditionError("input must be differentially homogeneous of positive degree",
                                poly=f.render())
    sep = separant(f, r)
    init = initial(f, r)
    sep_rep = is_diff_homogeneous(sep, block)
    if not sep_rep.homogeneous or sep_rep.degree != rep.degree - 1:
        return False
    return is_diff_homogeneous(init, block).homogeneous


def check_top_partials_homogeneous(f: DiffPolynomial, block=Family.Y) -> bool:
    """For homogeneous f of degree d > 0 and order o, each nonzero
    df/dy_j^(o) is homogeneous of degree d-1."""
    rep = is_diff_homogeneous(f, block)
    if not rep.homogeneous or rep.degree == 0:
        raise PreconditionError("input must be differentially homogeneous of positive degree",
                                poly=f.render())
    inside = block_predicate(block)
    top = max(v.order for v in f.variables() if inside(v.base))
    for v in f.variables():
        if not inside(v.base) or v.order != top:
            continue
        part = f.partial(v)
        if part.is_zero():
            continue
        prep = is_diff_homogeneous(part, block)
        if not prep.homogeneous or prep.degree != rep.degree - 1:
            return False
    return True

