"""Ritt reduction, autoreduced sets and Wu-Ritt characteristic sets."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotDivisibleError, PreconditionError, UnitIdealError, VerificationError
from .poly import DiffPolynomial
from .ranking import Ranking
from .ring import Var


def leader(p: DiffPolynomial, r: Ranking) -> Var:
    if p.is_ground():
        raise PreconditionError("a ground element has no leader", poly=p.render())
    return max(p.variables(), key=r.key)


def initial(p: DiffPolynomial, r: Ranking) -> DiffPolynomial:
    v = leader(p, r)
    return p.coefficient(v, p.degree(v))


def separant(p: DiffPolynomial, r: Ranking) -> DiffPolynomial:
    return p.partial(leader(p, r))


def rank(p: DiffPolynomial, r: Ranking) -> tuple:
    """Comparable rank: ``(leader key, degree)``; ground elements rank lowest."""
    if p.is_ground():
        return ((-1,), 0)
    v = leader(p, r)
    return (r.key(v), p.degree(v))


def _sort_key(p, r):
    # rank first; ties broken by fewest terms, then smallest rendering
    return (rank(p, r), len(p), p.render())


def is_reduced(f: DiffPolynomial, a: DiffPolynomial, r: Ranking) -> bool:
    """Reduced w.r.t. ``a``: no proper derivative of ld(a), and lower degree in ld(a)."""
    ld = leader(a, r)
    da = a.degree(ld)
    for v in f.variables():
        if v.base == ld.base:
            if v.order > ld.order:
                return False
            if v.order == ld.order and f.degree(v) >= da:
                return False
    return True


def is_autoreduced(elements, r: Ranking) -> bool:
    for a in elements:
        if a.is_ground():
            return False
        for b in elements:
            if a is not b and not is_reduced(a, b, r):
                return False
    return True


@dataclass
class Reduction:
    """Result of pseudo-reducing ``f`` by an autoreduced set ``A``.

    ``multiplier`` is the product of initials and separants used, and
    ``exponents`` records it as ``{("I"|"S", k): power}``. When quotients are
    kept, ``multiplier*f - remainder == sum(Q * delta^theta(A[k]))`` over
    ``quotients[(k, theta)] = Q``.
    """

    remainder: DiffPolynomial
    multiplier: DiffPolynomial
    exponents: dict
    quotients: dict | None = None
    used: list = field(default_factory=list)

    def check(self, f, elements) -> bool:
        if self.quotients is None:
            raise PreconditionError("reduction was run without quotients")
        lhs = self.multiplier * f - self.remainder
        rhs = DiffPolynomial.zero(f.ring)
        for (k, theta), q in self.quotients.items():
            rhs = rhs + q * elements[k].differentiate(theta)
        return (lhs - rhs).is_zero()


def _try_exquo(a, b):
    if b.is_ground():
        return a / b.ground_value()
    try:
        return a.exquo(b)
    except NotDivisibleError:
        return None


def pseudo_remainder(f: DiffPolynomial, elements, r: Ranking,
                     keep_quotients: bool = False) -> Reduction:
    """Ritt pseudo-reduction of ``f`` by the autoreduced set ``elements``.

    The highest reducible derivative is eliminated at each step. A step
    multiplies by the relevant initial or separant only when the leading
    coefficient is not already divisible by it.
    """
    elements = list(elements)
    info = []
    for k, a in enumerate(elements):
        ld = leader(a, r)
        info.append((k, ld, a.degree(ld)))
    by_base = {ld.base: (k, ld, d) for k, ld, d in info}
    ring = f.ring
    one = DiffPolynomial.constant(1, ring)
    multiplier = one
    exponents: dict = {}
    quotients: dict | None = {} if keep_quotients else None
    prolongs: dict = {}
    seps: dict = {}
    inits: dict = {}
    used = []
    rem = f

    def reducible(v):
        hit = by_base.get(v.base)
        if hit is None:
            return None
        k, ld, d = hit
        if v.order > ld.order:
            return k
        if v.order == ld.order and rem.degree(v) >= d:
            return k
        return None

    while not rem.is_zero():
        cands = [v for v in rem.variables() if reducible(v) is not None]
        if not cands:
            break
        v = max(cands, key=r.key)
        k, ld, d = by_base[v.base]
        theta = v.order - ld.order
        if theta > 0:
            if (k, theta) not in prolongs:
                prolongs[(k, theta)] = elements[k].differentiate(theta)
            b = prolongs[(k, theta)]
            if k not in seps:
                seps[k] = separant(elements[k], r)
            c, tag, bdeg = seps[k], "S", 1
        else:
            b = elements[k]
            if k not in inits:
                inits[k] = initial(elements[k], r)
            c, tag, bdeg = inits[k], "I", d
        e = rem.degree(v)
        lc = rem.coefficient(v, e)
        shift = DiffPolynomial.var(v, ring, e - bdeg) if e > bdeg else one
        q = _try_exquo(lc, c)
        if q is not None:
            step = q * shift
            rem = rem - step * b
        else:
            step = lc * shift
            rem = c * rem - step * b
            multiplier = multiplier * c
            exponents[(tag, k)] = exponents.get((tag, k), 0) + 1
            if not c.is_ground():
                used.append((tag, k))
            if quotients is not None:
                for key in quotients:
                    quotients[key] = quotients[key] * c
        if quotients is not None:
            prev = quotients.get((k, theta))
            quotients[(k, theta)] = step if prev is None else prev + step
    if quotients is not None:
        quotients = {key: q for key, q in quotients.items() if not q.is_zero()}
    return Reduction(rem, multiplier, exponents, quotients, used)


def rank_compare(a, b, r: Ranking) -> int:
    """Ritt's order on autoreduced sets: -1 if ``a`` is lower, 0 if equal rank, 1 if higher."""
    ra = sorted(rank(p, r) for p in a)
    rb = sorted(rank(p, r) for p in b)
    for x, y in zip(ra, rb):
        if x < y:
            return -1
        if x > y:
            return 1
    if len(ra) == len(rb):
        return 0
    # a proper extension is lower
    return -1 if len(ra) > len(rb) else 1


def normalize(p: DiffPolynomial, r: Ranking) -> DiffPolynomial:
    """Monic when the initial is a ground element, primitive otherwise."""
    if p.is_ground():
        return p
    init = initial(p, r)
    if init.is_ground():
        return p / init.ground_value()
    return p.primitive()


def basic_set(polys, r: Ranking) -> list:
    """A minimal-rank autoreduced subset (Wu-Ritt basic set)."""
    pool = sorted(polys, key=lambda p: _sort_key(p, r))
    chosen: list = []
    for p in pool:
        if p.is_ground():
            raise UnitIdealError("a nonzero ground element lies in the ideal",
                                 element=p.render())
        if all(is_reduced(p, a, r) for a in chosen):
            chosen.append(p)
    return chosen


@dataclass
class CharSet:
    """An autoreduced set taken as the characteristic set of a prime ideal.

    ``provenance`` is ``"computed"`` (from :func:`charset`) or
    ``"asserted-prime"`` (supplied by the caller). ``splitting_log`` lists the
    non-ground initials and separants that multiplied some reduction.
    """

    elements: list
    ranking: Ranking
    provenance: str = "asserted-prime"
    splitting_log: list = field(default_factory=list)
    rank_log: list = field(default_factory=list)

    @classmethod
    def asserted(cls, elements, ranking: Ranking, check: bool = True) -> "CharSet":
        elements = [p for p in elements if not p.is_zero()]
        elements.sort(key=lambda p: _sort_key(p, ranking))
        if check and not is_autoreduced(elements, ranking):
            raise PreconditionError("asserted characteristic set is not autoreduced",
                                    elements=[p.render() for p in elements])
        return cls(elements, ranking, "asserted-prime")

    def leaders(self) -> list:
        return [leader(p, self.ranking) for p in self.elements]

    def initials(self) -> list:
        return [initial(p, self.ranking) for p in self.elements]

    def separants(self) -> list:
        return [separant(p, self.ranking) for p in self.elements]

    def reduce(self, f: DiffPolynomial, keep_quotients: bool = False) -> Reduction:
        return pseudo_remainder(f, self.elements, self.ranking, keep_quotients)

    def contains(self, f: DiffPolynomial) -> bool:
        return self.reduce(f).remainder.is_zero()

    def rendered(self) -> list:
        return [p.render() for p in self.elements]

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)


def charset(generators, r: Ranking, max_rounds: int = 200) -> CharSet:
    """Wu-Ritt characteristic set of the differential ideal generated by ``generators``.

    Raises UnitIdealError when a nonzero ground element is derived.
    """
    pool = []
    seen = set()
    for g in generators:
        if g.is_zero():
            continue
        g = normalize(g, r)
        if g.is_ground():
            raise UnitIdealError("a nonzero ground element lies in the ideal",
                                 element=g.render())
        if g not in seen:
            seen.add(g)
            pool.append(g)
    if not pool:
        raise PreconditionError("charset needs at least one nonzero generator")
    rank_log = []
    split: list = []
    prev = None
    for _ in range(max_rounds):
        basis = basic_set(pool, r)
        if prev is not None and rank_compare(basis, prev, r) >= 0:
            raise VerificationError("characteristic set loop did not decrease rank")
        prev = basis
        rank_log.append([rank(p, r) for p in basis])
        basis_ids = {id(p) for p in basis}
        new = []
        for g in pool:
            if id(g) in basis_ids:
                continue
            red = pseudo_remainder(g, basis, r)
            for tag, k in red.used:
                item = (tag, basis[k].render(),
                        (initial if tag == "I" else separant)(basis[k], r))
                if item[2] not in [s for _, _, s in split]:
                    split.append(item)
            rem = red.remainder
            if rem.is_zero():
                continue
            rem = normalize(rem, r)
            if rem.is_ground():
                raise UnitIdealError("a nonzero ground element lies in the ideal",
                                     element=rem.render())
            if rem not in seen:
                seen.add(rem)
                new.append(rem)
        if not new:
            log = [s for _, _, s in split]
            return CharSet(basis, r, "computed", log, rank_log)
        pool.extend(new)
    raise VerificationError("characteristic set loop exceeded its round limit")


def sat_membership(f: DiffPolynomial, cs: CharSet) -> bool:
    """Membership in sat(A) for an asserted prime characteristic set."""
    if f.is_zero():
        return True
    return cs.contains(f)
