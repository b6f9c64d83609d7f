"""Sparse differential polynomials with exact ground coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .errors import InsufficientPrecisionError, NotDivisibleError, PreconditionError
from .ground import (
    RationalFunction,
    _q,
    gderiv,
    gdiv,
    ground_parts,
    is_negative,
    make_ground,
    render_ground,
    udivmod,
    ugcd,
    umul,
)
from .ring import Family, Ring, Var

ONE = ()  # the empty monomial


def mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items()))


def mono_div(a: tuple, b: tuple):
    """``a / b`` as a monomial, or None when ``b`` does not divide ``a``."""
    exps = dict(a)
    for v, e in b:
        have = exps.get(v, 0)
        if have < e:
            return None
        if have == e:
            del exps[v]
        else:
            exps[v] = have - e
    return tuple(sorted(exps.items()))


def lex_key(mono: tuple) -> tuple:
    # Largest variable is most significant; a monomial order.
    return tuple(reversed(mono))


_FAM_RANK = {Family.T: 0, Family.Y: 1, Family.U: 2, Family.PARAM: 3}


def _display_key(v: Var):
    return (_FAM_RANK[v.family], v.order, v.block, v.index)


def _term_key(v: Var):
    return (v.order, _FAM_RANK[v.family], v.block, v.index)


def _render_order(mono):
    return tuple(sorted((_term_key(v), e) for v, e in mono))[::-1]


def _coerce_coeff(c):
    if isinstance(c, Fraction):
        return _q(c)
    return c


class DiffPolynomial:
    """An element of a differential polynomial ring.

    ``terms`` maps monomials to nonzero ground coefficients. A monomial is a
    tuple of ``(Var, exponent)`` pairs sorted by ``Var``.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms=None):
        self.ring = ring
        clean = {}
        if terms:
            for mono, c in terms.items():
                if c != 0:
                    clean[mono] = _coerce_coeff(c)
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, ring, terms):
        obj = cls.__new__(cls)
        obj.ring = ring
        obj.terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, ring: Ring) -> "DiffPolynomial":
        return cls._raw(ring, {})

    @classmethod
    def constant(cls, c, ring: Ring) -> "DiffPolynomial":
        return cls(ring, {ONE: c})

    @classmethod
    def var(cls, v: Var, ring: Ring, exp: int = 1) -> "DiffPolynomial":
        return cls._raw(ring, {((v, exp),): 1})

    @classmethod
    def from_monomial(cls, mono: tuple, coeff, ring: Ring) -> "DiffPolynomial":
        return cls(ring, {mono: coeff})

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def is_ground(self) -> bool:
        return all(not mono for mono in self.terms)

    def ground_value(self):
        if not self.is_ground():
            raise PreconditionError("polynomial is not a ground element")
        return self.terms.get(ONE, 0)

    def variables(self) -> set:
        out = set()
        for mono in self.terms:
            for v, _ in mono:
                out.add(v)
        return out

    def bases(self) -> set:
        return {v.base for v in self.variables()}

    def order(self, base=None) -> int:
        """Highest derivative order occurring (optionally for one base); -1 if none."""
        best = -1
        for mono in self.terms:
            for v, _ in mono:
                if (base is None or v.base == base) and v.order > best:
                    best = v.order
        return best

    def degree(self, v: Var | None = None) -> int:
        if v is None:
            return max((sum(e for _, e in m) for m in self.terms), default=0)
        best = 0
        for mono in self.terms:
            for w, e in mono:
                if w == v and e > best:
                    best = e
        return best

    def degree_in(self, pred) -> set:
        """Set of per-term degrees counted over variables satisfying ``pred``."""
        return {sum(e for w, e in mono if pred(w)) for mono in self.terms}

    def coefficient(self, v: Var, e: int) -> "DiffPolynomial":
        """Coefficient of ``v^e`` when viewed as a polynomial in ``v``."""
        out = {}
        for mono, c in self.terms.items():
            got = 0
            rest = []
            for w, k in mono:
                if w == v:
                    got = k
                else:
                    rest.append((w, k))
            if got == e:
                out[tuple(rest)] = c
        return DiffPolynomial._raw(self.ring, out)

    def as_univariate(self, v: Var) -> dict:
        """``{exponent: coefficient polynomial}`` with respect to ``v``."""
        parts: dict = {}
        for mono, c in self.terms.items():
            got = 0
            rest = []
            for w, k in mono:
                if w == v:
                    got = k
                else:
                    rest.append((w, k))
            parts.setdefault(got, {})[tuple(rest)] = c
        return {e: DiffPolynomial._raw(self.ring, t) for e, t in parts.items()}

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, DiffPolynomial):
            return other
        if isinstance(other, (int, Fraction, RationalFunction)):
            return DiffPolynomial.constant(other, self.ring)
        return NotImplemented

    def _join(self, other):
        if other.ring is self.ring:
            return self.ring
        return self.ring.join(other.ring)

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        ring = self._join(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            v = out.get(mono)
            if v is None:
                out[mono] = c
            else:
                v = _coerce_coeff(v + c)
                if v == 0:
                    del out[mono]
                else:
                    out[mono] = v
        return DiffPolynomial._raw(ring, out)

    __radd__ = __add__

    def __neg__(self):
        return DiffPolynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RationalFunction)):
            return self.scale(other)
        if not isinstance(other, DiffPolynomial):
            return NotImplemented
        ring = self._join(other)
        out: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = mono_mul(m1, m2)
                c = c1 * c2
                prev = out.get(m)
                out[m] = c if prev is None else prev + c
        return DiffPolynomial(ring, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def scale(self, c) -> "DiffPolynomial":
        if c == 0:
            return DiffPolynomial.zero(self.ring)
        if c == 1:
            return self
        return DiffPolynomial(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_monomial(self, mono: tuple, coeff=1) -> "DiffPolynomial":
        return DiffPolynomial(
            self.ring, {mono_mul(m, mono): c * coeff for m, c in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, DiffPolynomial):
            if not c.is_ground():
                return NotImplemented
            c = c.ground_value()
        if c == 0:
            raise ZeroDivisionError("division by zero")
        return DiffPolynomial(self.ring, {m: gdiv(v, c) for m, v in self.terms.items()})

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = DiffPolynomial.constant(1, self.ring)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def __eq__(self, other):
        if isinstance(other, DiffPolynomial):
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, RationalFunction)):
            if other == 0:
                return not self.terms
            return self.terms == {ONE: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- calculus -----------------------------------------------------------

    def differentiate(self, times: int = 1) -> "DiffPolynomial":
        p = self
        for _ in range(times):
            p = p._derive_once()
        return p

    def _derive_once(self):
        ring = self.ring
        out: dict = {}

        def put(m, c):
            prev = out.get(m)
            out[m] = c if prev is None else prev + c

        for mono, c in self.terms.items():
            dc = gderiv(c)
            if dc != 0:
                put(mono, dc)
            for i, (v, e) in enumerate(mono):
                if ring.is_constant(v):
                    continue
                rest = list(mono)
                if e == 1:
                    del rest[i]
                else:
                    rest[i] = (v, e - 1)
                put(mono_mul(tuple(rest), ((v.diff(), 1),)), c * e)
        return DiffPolynomial(ring, out)

    def partial(self, v: Var) -> "DiffPolynomial":
        """Algebraic partial derivative with respect to the derivative ``v``."""
        out = {}
        for mono, c in self.terms.items():
            for i, (w, e) in enumerate(mono):
                if w == v:
                    rest = list(mono)
                    if e == 1:
                        del rest[i]
                    else:
                        rest[i] = (w, e - 1)
                    out[tuple(rest)] = c * e
                    break
        return DiffPolynomial(self.ring, out)

    # -- substitution and evaluation -----------------------------------------

    def map_vars(self, fn, ring: Ring | None = None) -> "DiffPolynomial":
        """Rename variables with ``fn: Var -> Var``."""
        out: dict = {}
        for mono, c in self.terms.items():
            m = ONE
            for v, e in mono:
                m = mono_mul(m, ((fn(v), e),))
            prev = out.get(m)
            out[m] = c if prev is None else prev + c
        return DiffPolynomial(ring or self.ring, out)

    def evaluate(self, value_of, lift, zero):
        """Generic evaluation: ``value_of(Var)`` gives values, ``lift`` embeds coefficients."""
        powers: dict = {}
        acc = zero
        for mono, c in self.terms.items():
            term = lift(c)
            for v, e in mono:
                key = (v, e)
                val = powers.get(key)
                if val is None:
                    val = value_of(v) ** e if e > 1 else value_of(v)
                    powers[key] = val
                term = term * val
            acc = acc + term
        return acc

    def substitute(self, mapping: dict, ring: Ring | None = None) -> "DiffPolynomial":
        """Replace base variables by polynomials; derivatives follow by differentiation.

        ``mapping`` sends a base ``(family, block, index)`` to a DiffPolynomial
        or ground element. Unmapped variables are kept.
        """
        target = ring or self.ring
        images = {}
        for base, img in mapping.items():
            if not isinstance(img, DiffPolynomial):
                img = DiffPolynomial.constant(img, target)
            target = target.join(img.ring) if img.ring != target else target
            images[base] = img
        cache: dict = {}

        def value_of(v):
            img = images.get(v.base)
            if img is None:
                return DiffPolynomial.var(v, target)
            got = cache.get(v)
            if got is None:
                got = img.differentiate(v.order)
                cache[v] = got
            return got

        return self.evaluate(
            value_of,
            lambda c: DiffPolynomial.constant(c, target),
            DiffPolynomial.zero(target),
        )

    def substitute_quotients(self, numerators: dict, denominator: "DiffPolynomial"):
        """Substitute ``base -> numerators[base] / denominator`` and clear denominators.

        Returns ``(N, D, L)`` with ``p(...) = N / D**L`` and ``L`` the smallest
        power that clears every term. Uses the quotient rule
        ``(n/D)^(k) = n_k / D^(k+1)`` with ``n_{k+1} = n_k' D - (k+1) n_k D'``.
        """
        if denominator.is_zero():
            raise ZeroDivisionError("substitution by a quotient with zero denominator")
        ring = self.ring.join(denominator.ring)
        d1 = denominator.differentiate()
        chains: dict = {}

        def numer(v):
            chain = chains.get(v.base)
            if chain is None:
                chain = [numerators[v.base]]
                chains[v.base] = chain
            while len(chain) <= v.order:
                k = len(chain) - 1
                nk = chain[-1]
                chain.append(nk.differentiate() * denominator - (nk * d1).scale(k + 1))
            return chain[v.order]

        # Denominator power carried by each term.
        def weight(mono):
            return sum(e * (v.order + 1) for v, e in mono if v.base in numerators)

        top = max((weight(m) for m in self.terms), default=0)
        dpow = {0: DiffPolynomial.constant(1, ring)}

        def dpower(k):
            if k not in dpow:
                dpow[k] = denominator ** k
            return dpow[k]

        acc = DiffPolynomial.zero(ring)
        for mono, c in self.terms.items():
            term = DiffPolynomial.constant(c, ring)
            for v, e in mono:
                val = numer(v) if v.base in numerators else DiffPolynomial.var(v, ring)
                term = term * (val ** e)
            acc = acc + term * dpower(top - weight(mono))
        return acc, denominator, top

    def eval_series(self, assignment: dict, precision: int, guard: int = 0):
        """Evaluate at truncated power series.

        ``assignment`` maps bases to :class:`Series` of a common precision.
        The result has precision ``precision - ord(p)``.
        """
        from .series import Series

        ordp = max(self.order(), 0)
        if precision - ordp < max(guard, 1):
            raise InsufficientPrecisionError(
                f"precision {precision} too small for order {ordp} (guard {guard})",
                precision=precision, order=ordp)
        missing = self.bases() - set(assignment)
        if missing:
            raise PreconditionError("no value for some variables",
                                    missing=sorted(str(b) for b in missing))
        derivs: dict = {}

        def value_of(v):
            got = derivs.get(v)
            if got is None:
                got = assignment[v.base].derivative(v.order)
                derivs[v] = got
            return got

        out = self.evaluate(
            value_of,
            lambda c: Series.from_ground(c, precision),
            Series([0], precision),
        )
        return out.truncate(precision - ordp)

    def eval_at(self, point, guard: int = 8):
        """Evaluate a polynomial in ``y0..yn`` at a :class:`DiffPoint`."""
        assignment = {}
        for base in self.bases():
            fam, _, idx = base
            if fam != Family.Y:
                raise PreconditionError("eval_at only assigns the Y family")
            if idx >= len(point):
                raise PreconditionError("point arity too small",
                                        arity=len(point), index=idx)
            assignment[base] = point[idx]
        return self.eval_series(assignment, point.precision, guard)

    # -- division and normalization -------------------------------------------

    def leading_term_lex(self):
        mono = max(self.terms, key=lex_key)
        return mono, self.terms[mono]

    def exquo(self, other: "DiffPolynomial") -> "DiffPolynomial":
        """Exact quotient ``self / other``; raises NotDivisibleError otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        lm, lc = other.leading_term_lex()
        rem = self
        quot: dict = {}
        while rem.terms:
            m, c = rem.leading_term_lex()
            qm = mono_div(m, lm)
            if qm is None:
                raise NotDivisibleError("polynomial division leaves a remainder")
            qc = gdiv(c, lc)
            quot[qm] = qc
            rem = rem - other.mul_monomial(qm, qc)
        return DiffPolynomial(self.ring.join(other.ring), quot)

    def divides(self, other: "DiffPolynomial") -> bool:
        try:
            other.exquo(self)
        except NotDivisibleError:
            return False
        return True

    def leading_coefficient(self):
        """Coefficient of the first term in rendering order."""
        mono = max(self.terms, key=_render_order)
        return self.terms[mono]

    def primitive(self) -> "DiffPolynomial":
        """Scale by a ground element so coefficients are coprime integer polynomials
        in x and the first rendered term has positive leading coefficient."""
        if not self.terms:
            return self
        parts = {m: ground_parts(c) for m, c in self.terms.items()}
        if all(len(d) == 1 and len(n) <= 1 for n, d in parts.values()):
            fr = {m: Fraction(c) for m, c in self.terms.items()}
            den = 1
            for c in fr.values():
                den = den * c.denominator // gcd(den, c.denominator)
            ints = {m: int(c * den) for m, c in fr.items()}
            g = 0
            for c in ints.values():
                g = gcd(g, c)
            out = DiffPolynomial._raw(self.ring, {m: c // g for m, c in ints.items()})
        else:
            lcm_den = (1,)
            for _, d in parts.values():
                lcm_den = udivmod(umul(lcm_den, d), ugcd(lcm_den, d))[0]
            polys = {m: udivmod(umul(n, lcm_den), d)[0] for m, (n, d) in parts.items()}
            g = ()
            for p in polys.values():
                g = ugcd(g, p) if g else p
            polys = {m: udivmod(p, g)[0] for m, p in polys.items()}
            # clear rational constants jointly
            flat = [c for p in polys.values() for c in p]
            den = 1
            for c in flat:
                den = den * Fraction(c).denominator // gcd(den, Fraction(c).denominator)
            num_g = 0
            for c in flat:
                num_g = gcd(num_g, int(Fraction(c) * den))
            scale = Fraction(den, num_g)
            out = DiffPolynomial(
                self.ring, {m: make_ground([c * scale for c in p]) for m, p in polys.items()})
        if is_negative(out.leading_coefficient()):
            out = -out
        return out

    def monic(self) -> "DiffPolynomial":
        return self / self.leading_coefficient()

    # -- display ------------------------------------------------------------

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: _render_order(mc[0]), reverse=True)

    def render(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.sorted_terms():
            neg = is_negative(c)
            mag = -c if neg else c
            factors = []
            for v, e in sorted(mono, key=lambda ve: _display_key(ve[0])):
                factors.append(repr(v) if e == 1 else f"{v!r}^{e}")
            body = "*".join(factors)
            if mag == 1 and body:
                text = body
            elif not body:
                text = render_ground(mag)
            else:
                text = f"{render_ground(mag)}*{body}"
            if not parts:
                parts.append(("-" if neg else "") + text)
            else:
                parts.append((" - " if neg else " + ") + text)
        return "".join(parts)

    __str__ = render

    def __repr__(self):
        return f"DiffPolynomial({self.render()!r})"

