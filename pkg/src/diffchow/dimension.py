"""Differential dimension polynomials and generic hyperplane sections."""

from __future__ import annotations

from dataclasses import dataclass, field

from .bridge import dehomogenize_charset, prolong_hyperplane
from .errors import PreconditionError, VerificationError
from .homogeneity import is_diff_homogeneous
from .ranking import Ranking
from .reduction import CharSet, charset
from .ring import Family, Ring, Var


@dataclass(frozen=True)
class DimensionPolynomial:
    """omega(t) = a1*(t+1) + a0, exact for t >= stability_threshold."""

    a1: int
    a0: int
    stability_threshold: int = 0
    form: str = "projective"

    @property
    def dim(self) -> int:
        return self.a1 - 1 if self.form == "projective" else self.a1

    @property
    def order(self) -> int:
        return self.a0

    def __call__(self, t: int) -> int:
        return self.a1 * (t + 1) + self.a0

    def to_json(self) -> dict:
        return {"a1": self.a1, "a0": self.a0, "dim": self.dim,
                "order": self.order, "form": self.form}


def _ring_of(cs: CharSet, ring: Ring | None) -> Ring:
    if ring is not None:
        return ring
    if not cs.elements:
        raise PreconditionError("an empty characteristic set needs an explicit ring")
    out = cs.elements[0].ring
    for p in cs.elements[1:]:
        out = out.join(p.ring)
    return out


def counted_bases(ring: Ring, form: str) -> list:
    if form == "projective":
        return ring.y_bases()
    if form == "affine":
        return ring.y_bases(1)
    raise PreconditionError(f"unknown normal form {form!r}")


def _leader_orders(cs: CharSet, bases) -> dict:
    counted = set(bases)
    orders: dict = {}
    for ld in cs.leaders():
        if ld.base not in counted:
            raise PreconditionError(f"leader {ld!r} is outside the counted variables")
        if ld.base in orders:
            raise PreconditionError(f"two leaders share the variable {ld.name}")
        orders[ld.base] = ld.order
    return orders


def lattice_count(cs: CharSet, t: int, ring: Ring | None = None,
                  form: str = "projective") -> int:
    """Count derivatives of order <= t that are not derivatives of any leader."""
    ring = _ring_of(cs, ring)
    leaders = cs.leaders()
    free = 0
    for base in counted_bases(ring, form):
        for k in range(t + 1):
            v = Var(*base, k)
            if not any(v.base == ld.base and v.order >= ld.order for ld in leaders):
                free += 1
    return free


def dimension_polynomial(cs: CharSet, form: str = "projective",
                         ring: Ring | None = None, cross_check: bool = True) -> DimensionPolynomial:
    """omega(t) = N(t+1) - sum over leaders of (t + 1 - ord) from an orderly characteristic set."""
    ring = _ring_of(cs, ring)
    bases = counted_bases(ring, form)
    if cs.elements and not cs.ranking.is_orderly_on(bases):
        # order sums are only meaningful for orderly rankings; recompute
        cs = charset(cs.elements, _orderly_like(cs.ranking, ring))
    orders = _leader_orders(cs, bases)
    a1 = len(bases) - len(orders)
    a0 = sum(orders.values())
    threshold = max(0, max(orders.values(), default=0) - 1)
    if form == "projective" and a1 < 1:
        raise PreconditionError("projective dimension polynomial needs a1 >= 1", a1=a1)
    out = DimensionPolynomial(a1, a0, threshold, form)
    if cross_check:
        for t in range(threshold, threshold + 4):
            if lattice_count(cs, t, ring, form) != out(t):
                raise VerificationError("closed form disagrees with the lattice count", t=t)
    return out


def _orderly_like(r: Ranking, ring: Ring) -> Ranking:
    ys = ring.y_bases()
    groups = [[b for b in g if b not in ys] for g in r.groups]
    low = [g for g in groups[:1] if g]
    rest = [g for g in groups[1:] if g]
    return Ranking(low + [ys] + rest)


def check_sum_formula(cs: CharSet, ring: Ring | None = None) -> bool:
    """omega_I(t) = (t+1) + omega_V(t), with V the dehomogenized image."""
    ring = _ring_of(cs, ring)
    proj = dimension_polynomial(cs, "projective", ring)
    aff = dimension_polynomial(dehomogenize_charset(cs), "affine", ring)
    return proj.a1 == aff.a1 + 1 and proj.a0 == aff.a0


def parametric_set(cs: CharSet, ring: Ring | None = None, form: str = "projective") -> list:
    """The non-leader variables."""
    ring = _ring_of(cs, ring)
    lead = {ld.base for ld in cs.leaders()}
    return [Var(*b, 0) for b in counted_bases(ring, form) if b not in lead]


@dataclass
class IntersectionResult:
    charset_out: CharSet
    dim_before: int
    dim_after: int
    order_before: int
    order_after: int
    hyperplane: object = None
    splitting_log: list = field(default_factory=list)

    @property
    def holds(self) -> bool:
        return (self.dim_after == self.dim_before - 1
                and self.order_after == self.order_before)

    def to_json(self) -> dict:
        return {"charset": self.charset_out.rendered(),
                "dim_before": self.dim_before, "order_before": self.order_before,
                "dim_after": self.dim_after, "order_after": self.order_after}


def intersect_generic_hyperplane(cs: CharSet, ring: Ring | None = None) -> IntersectionResult:
    """Adjoin sum_j u_j y_j with a fresh u-block ranked below Y and recompute.

    The u-block plays the role of the coefficient field F<u>.
    """
    if not cs.elements:
        raise PreconditionError("an empty characteristic set is rejected")
    ring = _ring_of(cs, ring)
    for a in cs.elements:
        if not is_diff_homogeneous(a).homogeneous:
            raise PreconditionError("characteristic set element is not homogeneous",
                                    poly=a.render())
    before = dimension_polynomial(cs, "projective", ring)
    if before.dim < 1:
        raise PreconditionError("generic intersection needs dimension >= 1", dim=before.dim)
    n = ring.n_y - 1
    block = ring.u_blocks
    ring2 = ring.with_u(block + 1, max(ring.u_arity, n + 1))
    hyper = prolong_hyperplane(0, n, ring2, block=block)
    ubases = [(Family.U, block, j) for j in range(n + 1)]
    groups = [ubases] + [[b for b in g if b not in ubases] for g in cs.ranking.groups]
    if not any(b in g for g in groups for b in ring.y_bases()):
        groups.append(ring.y_bases())
    r2 = Ranking(groups, cs.ranking.kind)
    out = charset(list(cs.elements) + [hyper], r2)
    after = dimension_polynomial(out, "projective", ring2)
    return IntersectionResult(out, before.dim, after.dim, before.order, after.order,
                              hyper, out.splitting_log)

