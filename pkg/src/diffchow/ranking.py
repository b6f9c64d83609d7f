"""Rankings on derivatives.

A ranking is stored as a list of groups of base variables, lowest group
first. Derivatives in different groups compare by group; inside a group they
compare by order, then by position in the group. So an orderly ranking is a
single group, an elimination ranking puts each variable in its own group, and
a block ranking is anything in between.
"""

from __future__ import annotations

from .errors import PreconditionError
from .ring import Family, Ring, Var, base_name


class Ranking:
    def __init__(self, groups, kind: str | None = None):
        self.groups = tuple(tuple(g) for g in groups if g)
        self._pos = {}
        for gi, group in enumerate(self.groups):
            for ii, base in enumerate(group):
                if base in self._pos:
                    raise PreconditionError(f"{base_name(base)} listed twice in ranking")
                self._pos[base] = (gi, ii)
        if kind is None:
            if len(self.groups) == 1:
                kind = "orderly"
            elif all(len(g) == 1 for g in self.groups):
                kind = "elimination"
            else:
                kind = "block"
        self.kind = kind

    @classmethod
    def orderly(cls, bases) -> "Ranking":
        return cls([list(bases)], "orderly")

    @classmethod
    def elimination(cls, bases) -> "Ranking":
        return cls([[b] for b in bases], "elimination")

    @classmethod
    def block(cls, groups) -> "Ranking":
        return cls(groups, "block")

    @classmethod
    def standard(cls, ring: Ring, kind: str = "orderly") -> "Ranking":
        """u-blocks lowest (as parameters), then Y ranked by ``kind``, then T and
        free parameters highest."""
        groups = []
        if ring.u_blocks:
            groups.append(ring.u_bases())
        ys = ring.y_bases()
        if kind == "orderly":
            groups.append(ys)
        elif kind == "elimination":
            groups.extend([b] for b in ys)
        else:
            raise PreconditionError(f"unknown ranking kind {kind!r}")
        groups.append([(Family.T, 0, 0)])
        if ring.n_params:
            groups.append(ring.param_bases())
        # kind describes how the Y block is ranked
        return cls(groups, kind)

    def key(self, v: Var) -> tuple:
        pos = self._pos.get(v.base)
        if pos is None:
            raise PreconditionError(f"{base_name(v.base)} is not covered by the ranking")
        return (pos[0], v.order, pos[1])

    def covers(self, base) -> bool:
        return base in self._pos

    def is_orderly_on(self, bases) -> bool:
        """True when all ``bases`` share one group (so order dominates among them)."""
        groups = {self._pos[b][0] for b in bases if b in self._pos}
        return len(groups) <= 1

    def less(self, a: Var, b: Var) -> bool:
        return self.key(a) < self.key(b)

    def bases(self) -> list:
        return [b for g in self.groups for b in g]

    def describe(self) -> str:
        parts = []
        for g in self.groups:
            names = " < ".join(base_name(b) for b in g)
            parts.append(f"[{names}]" if len(g) > 1 else names)
        return f"{self.kind}: " + " << ".join(parts)

    def __eq__(self, other):
        return isinstance(other, Ranking) and self.groups == other.groups

    def __hash__(self):
        return hash(self.groups)

    def __repr__(self):
        return f"Ranking({self.describe()})"
