from fractions import Fraction

import pytest
from hypothesis import given, settings

from diffchow import Ring, parse, parse_ring, render, y
from diffchow.errors import OrderOverflowError, ParseError, UnknownVariableError
from diffchow.ground import make_ground

from helpers import polys

R2 = Ring(n_y=2)
RX = Ring(n_y=2, field="Qx")


def test_wronskian_text():
    p = parse("y0*y1' - y1*y0'", R2)
    assert len(p) == 2
    assert p.coefficient(y(1, 1), 1) == parse("y0", R2)
    assert render(p) == "y0*y1' - y1*y0'"


def test_bracket_order_and_rational_coefficients():
    p = parse("y0^(2) + (3/2)*x*y1", RX)
    assert p.coefficient(y(0, 2), 1).ground_value() == 1
    assert p.coefficient(y(1), 1).ground_value() == make_ground((0, Fraction(3, 2)))


def test_power_versus_derivative():
    assert parse("y0^2", R2) == parse("y0*y0", R2)
    assert parse("y0^(2)", R2) == parse("y0''", R2)
    assert parse("y0'^2", R2) == parse("y0'*y0'", R2)
    assert parse("(y0*y1)'", R2) == parse("y0'*y1 + y0*y1'", R2)


def test_division_by_ground_only():
    assert parse("y0/2", R2) == parse("1/2*y0", R2)
    with pytest.raises(ParseError):
        parse("y0/y1", R2)


def test_errors_carry_codes():
    with pytest.raises(UnknownVariableError):
        parse("y7", R2)
    with pytest.raises(ParseError) as exc:
        parse("y0 + * y1", R2)
    assert exc.value.code == "parse_error"
    with pytest.raises(ParseError):
        parse("x*y0", R2)  # x needs the Q(x) field
    with pytest.raises(OrderOverflowError):
        parse("y0^(5000)", R2)


def test_scaling_variable_reserved():
    with pytest.raises(UnknownVariableError):
        parse("t*y0", R2)
    assert not parse("t*y0", R2, allow_t=True).is_zero()


def test_ring_declaration():
    r = parse_ring("ring Y=3 U=2x3 field=Qx")
    assert (r.n_y, r.u_blocks, r.u_arity, r.field) == (3, 2, 3, "Qx")
    assert parse("u12*y2 + x", r).variables()


@settings(max_examples=300, deadline=None)
@given(polys(R2, max_order=3))
def test_round_trip(p):
    assert parse(render(p), R2) == p
