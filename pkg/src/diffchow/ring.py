"""Differential indeterminates and ring descriptors."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace
from typing import NamedTuple

from .errors import ParseError, RingMismatchError


class Family(enum.IntEnum):
    Y = 0
    U = 1
    T = 2
    PARAM = 3


class Var(NamedTuple):
    """A derivative ``v^(order)`` of one differential indeterminate.

    ``block`` is the hyperplane index ``i`` of ``u_ij`` and is 0 for every
    other family.
    """

    family: Family
    block: int
    index: int
    order: int

    @property
    def base(self) -> tuple:
        return (self.family, self.block, self.index)

    def diff(self, times: int = 1) -> "Var":
        return Var(self.family, self.block, self.index, self.order + times)

    def at_order(self, order: int) -> "Var":
        return Var(self.family, self.block, self.index, order)

    @property
    def name(self) -> str:
        return base_name(self.base)

    def __repr__(self):
        return self.name + ("'" * self.order if self.order <= 3 else f"^({self.order})")


def base_name(base) -> str:
    family, block, index = base
    if family == Family.Y:
        return f"y{index}"
    if family == Family.U:
        if block < 10 and index < 10:
            return f"u{block}{index}"
        return f"u{block}_{index}"
    if family == Family.T:
        return "t"
    return f"s{index}"


def y(index: int, order: int = 0) -> Var:
    return Var(Family.Y, 0, index, order)


def u(block: int, index: int, order: int = 0) -> Var:
    return Var(Family.U, block, index, order)


def t(order: int = 0) -> Var:
    return Var(Family.T, 0, 0, order)


def s(index: int = 0, order: int = 0) -> Var:
    return Var(Family.PARAM, 0, index, order)


_NAME_RE = re.compile(r"^(?:y(\d+)|u(\d)(\d)|u(\d+)_(\d+)|t|s(\d*))$")


def parse_base(name: str) -> tuple:
    """``"y1"`` -> ``(Family.Y, 0, 1)``; also ``u01``, ``u1_10``, ``t``, ``s``/``s2``."""
    m = _NAME_RE.match(name.strip())
    if not m:
        raise ParseError(f"not a variable name: {name!r}")
    if m.group(1) is not None:
        return (Family.Y, 0, int(m.group(1)))
    if m.group(2) is not None:
        return (Family.U, int(m.group(2)), int(m.group(3)))
    if m.group(4) is not None:
        return (Family.U, int(m.group(4)), int(m.group(5)))
    if name.strip() == "t":
        return (Family.T, 0, 0)
    return (Family.PARAM, 0, int(m.group(6) or 0))


@dataclass(frozen=True)
class Ring:
    """Which indeterminates exist and which ground field is used.

    ``n_y`` counts ``y0..y{n_y-1}``; ``u_blocks`` x ``u_arity`` gives
    ``u_ij``; ``n_params`` parameters ``s0..``, of which ``const_params``
    have zero derivative. ``field`` is ``"Q"`` (constants, zero derivation)
    or ``"Qx"`` (rational functions in x with d/dx).
    """

    n_y: int = 0
    u_blocks: int = 0
    u_arity: int = 0
    n_params: int = 0
    const_params: frozenset = field(default_factory=frozenset)
    field: str = "Q"

    def __post_init__(self):
        if self.field not in ("Q", "Qx"):
            raise ValueError(f"unknown ground field {self.field!r}")
        object.__setattr__(self, "const_params", frozenset(self.const_params))

    def contains(self, var: Var) -> bool:
        if var.order < 0:
            return False
        if var.family == Family.Y:
            return var.block == 0 and 0 <= var.index < self.n_y
        if var.family == Family.U:
            return 0 <= var.block < self.u_blocks and 0 <= var.index < self.u_arity
        if var.family == Family.T:
            return var.block == 0 and var.index == 0
        return var.block == 0 and 0 <= var.index < self.n_params

    def is_constant(self, var: Var) -> bool:
        return var.family == Family.PARAM and var.index in self.const_params

    def y_bases(self, start: int = 0) -> list:
        return [(Family.Y, 0, j) for j in range(start, self.n_y)]

    def u_bases(self, block: int | None = None) -> list:
        blocks = range(self.u_blocks) if block is None else [block]
        return [(Family.U, i, j) for i in blocks for j in range(self.u_arity)]

    def param_bases(self) -> list:
        return [(Family.PARAM, 0, j) for j in range(self.n_params)]

    def join(self, other: "Ring") -> "Ring":
        if self is other or self == other:
            return self
        if self.field != other.field:
            raise RingMismatchError(
                f"ground fields differ: {self.field} vs {other.field}")
        for j in set(range(min(self.n_params, other.n_params))):
            if (j in self.const_params) != (j in other.const_params):
                raise RingMismatchError(f"parameter s{j} is constant in one ring only")
        return Ring(
            n_y=max(self.n_y, other.n_y),
            u_blocks=max(self.u_blocks, other.u_blocks),
            u_arity=max(self.u_arity, other.u_arity),
            n_params=max(self.n_params, other.n_params),
            const_params=self.const_params | other.const_params,
            field=self.field,
        )

    def with_u(self, blocks: int, arity: int) -> "Ring":
        return replace(self, u_blocks=max(self.u_blocks, blocks),
                       u_arity=max(self.u_arity, arity))

    def with_params(self, count: int, constant=()) -> "Ring":
        return replace(self, n_params=max(self.n_params, count),
                       const_params=self.const_params | frozenset(constant))

    def declaration(self) -> str:
        parts = ["ring"]
        if self.n_y:
            parts.append(f"Y={self.n_y}")
        if self.u_blocks:
            parts.append(f"U={self.u_blocks}x{self.u_arity}")
        if self.n_params:
            parts.append(f"P={self.n_params}")
            if self.const_params:
                parts.append("const=" + ",".join(str(j) for j in sorted(self.const_params)))
        parts.append(f"field={self.field}")
        return " ".join(parts)


def parse_ring(text: str) -> Ring:
    """Parse a declaration such as ``ring Y=3 U=2x3 field=Qx``.

    The leading ``ring`` keyword is optional.
    """
    kwargs: dict = {}
    tokens = text.split()
    if tokens and tokens[0] == "ring":
        tokens = tokens[1:]
    for tok in tokens:
        key, sep, value = tok.partition("=")
        if not sep:
            raise ParseError(f"bad ring declaration token {tok!r}", text=text)
        try:
            if key == "Y":
                kwargs["n_y"] = int(value)
            elif key == "U":
                blocks, _, arity = value.partition("x")
                kwargs["u_blocks"], kwargs["u_arity"] = int(blocks), int(arity)
            elif key == "P":
                kwargs["n_params"] = int(value)
            elif key == "const":
                kwargs["const_params"] = frozenset(int(v) for v in value.split(",") if v)
            elif key == "field":
                if value not in ("Q", "Qx"):
                    raise ParseError(f"unknown field {value!r}", text=text)
                kwargs["field"] = value
            else:
                raise ParseError(f"unknown ring key {key!r}", text=text)
        except ValueError as exc:
            raise ParseError(f"bad ring declaration token {tok!r}: {exc}", text=text)
    return Ring(**kwargs)
