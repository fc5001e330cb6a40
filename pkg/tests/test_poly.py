from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from lindefect.errors import NonHomogeneousError, ParseError, UsageError
from lindefect.field import Field
from lindefect.poly import (
    Monomial,
    MonomialOrder,
    PolyRing,
    compare,
    is_homogeneous,
    linear_component,
    monomials_of_degree,
    poly_mul,
)

QQ = Field(0)
S = PolyRing(QQ, "xyz")
T = PolyRing(Field(101), "xy")


def test_monomial_product_and_degree():
    m = Monomial((1, 0, 2)) * Monomial((0, 3, 1))
    assert m.exponents == (1, 3, 3)
    assert m.degree == 7
    with pytest.raises(UsageError):
        Monomial((1,)) * Monomial((1, 0))


def test_degrevlex_examples():
    # x*z vs y^2: same degree, revlex looks at the last variable first
    assert compare((1, 0, 1), (0, 2, 0)) == -1
    assert compare((2, 0, 0), (0, 1, 0)) == 1
    assert compare((1, 1, 0), (1, 1, 0)) == 0
    assert compare((1, 0, 1), (0, 2, 0), MonomialOrder.LEX) == 1


def test_compare_length_mismatch():
    with pytest.raises(UsageError):
        compare((1, 0), (1, 0, 0))


def test_monomials_of_degree_count():
    assert len(list(monomials_of_degree(3, 4))) == 15
    assert list(monomials_of_degree(2, 0)) == [(0, 0)]


def test_parse_and_print():
    f = S.parse("x^2 - 3*x*y + 1/2 z^2")
    assert f == S.gen(0) ** 2 - 3 * S.gen(0) * S.gen(1) + Fraction(1, 2) * S.gen(2) ** 2
    assert S.parse(str(f)) == f
    assert S.parse("x**2") == S.parse("x^2")
    assert S.parse("(x+y)^2") == S.parse("x^2 + 2x*y + y^2")


@pytest.mark.parametrize("text", ["", "x +", "x^y", "x^1/2", "w", "x $ y", "(x"])
def test_parse_errors(text):
    with pytest.raises((ParseError, UsageError)):
        S.parse(text)


def test_parse_error_position():
    with pytest.raises(ParseError) as info:
        S.parse("x + $")
    assert info.value.column == 5


def test_homogeneity():
    assert is_homogeneous(S.parse("x^2 + y z")) == 2
    assert is_homogeneous(S.parse("x^2 + y")) is None
    assert is_homogeneous(S.zero()) == "zero"


def test_linear_component():
    assert linear_component(S.parse("x + 2y")) == S.parse("x + 2y")
    assert linear_component(S.parse("x^2")).is_zero()
    with pytest.raises(NonHomogeneousError):
        linear_component(S.parse("x^2 + y"))


def test_ring_mismatch():
    with pytest.raises(UsageError):
        poly_mul(S.gen(0), T.gen(0))


def test_characteristic_reduction():
    assert T.parse("101 x + y") == T.parse("y")
    assert T.parse("1/2 x") * 2 == T.gen(0)


def test_leading_term():
    f = S.parse("x*z + y^2 + x")
    assert f.leading_exponent() == (0, 2, 0)
    assert f.leading_exponent(MonomialOrder.LEX) == (1, 0, 1)
    with pytest.raises(UsageError):
        S.zero().leading_exponent()


exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, st.integers(-5, 5), max_size=5).map(
    lambda d: S.from_terms({e: c for e, c in d.items() if c}))


@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_axioms(f, g, h):
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == S.zero()


@settings(max_examples=60)
@given(polys, polys)
def test_degree_additive(f, g):
    if f and g:
        assert (f * g).degree() == f.degree() + g.degree()


@given(exps, exps, exps)
def test_order_total_and_multiplicative(a, b, c):
    for order in MonomialOrder:
        assert compare(a, b, order) == -compare(b, a, order)
        ac = tuple(x + y for x, y in zip(a, c))
        bc = tuple(x + y for x, y in zip(b, c))
        assert compare(ac, bc, order) == compare(a, b, order)


@settings(max_examples=60)
@given(polys)
def test_print_parse_round_trip(f):
    assert S.parse(str(f)) == f
