"""Exact differential polynomial algebra: reduction, homogeneity, dimension and Chow forms."""

from .ground import X, make_ground
from .parser import parse, render
from .poly import DiffPolynomial
from .ranking import Ranking
from .reduction import CharSet, charset, pseudo_remainder
from .ring import Family, Ring, Var, parse_ring, s, t, u, y
from .series import DiffPoint, Series

__all__ = [
    "CharSet", "DiffPoint", "DiffPolynomial", "Family", "Ranking", "Ring", "Series",
    "Var", "X", "charset", "make_ground", "parse", "parse_ring", "pseudo_remainder",
    "render", "s", "t", "u", "y",
]
