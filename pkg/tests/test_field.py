from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given, strategies as st

from lindefect.errors import ParseError, UsageError
from lindefect.field import Field, field_add, field_eq, field_inv, field_mul, field_neg

GF5, GF7, QQ = Field(5), Field(7), Field(0)


def test_add_examples():
    assert field_add(GF5(3), GF5(4)) == GF5(2)
    assert field_add(QQ(Fraction(1, 2)), QQ(Fraction(1, 3))) == QQ(Fraction(5, 6))
    for x in range(7):
        assert field_add(GF7(x), GF7(0)) == GF7(x)


def test_inverse_examples():
    assert field_inv(GF5(2)) == GF5(3)
    assert field_inv(QQ(Fraction(-3, 4))) == QQ(Fraction(-4, 3))
    assert field_inv(Field(101)(1)) == Field(101)(1)


def test_inverse_of_zero():
    with pytest.raises(ZeroDivisionError):
        field_inv(GF5(0))
    with pytest.raises(ZeroDivisionError):
        QQ(0).inverse()


def test_mismatched_fields():
    with pytest.raises(UsageError):
        field_add(GF5(1), GF7(1))
    with pytest.raises(UsageError):
        field_eq(GF5(1), QQ(1))


def test_neg_mul_eq():
    assert field_neg(GF5(2)) == GF5(3)
    assert field_mul(GF7(3), GF7(5)) == GF7(1)
    assert field_eq(QQ(Fraction(2, 4)), QQ(Fraction(1, 2)))


def test_canonical_forms():
    assert GF5(-1).value == 4
    assert GF5(Fraction(1, 2)).value == 3
    z = QQ(Fraction(0, 7))
    assert z.value.numerator == 0 and z.value.denominator == 1


@pytest.mark.parametrize("p", [0, 2, 3, 101, 2147483647])
def test_valid_fields(p):
    assert Field(p).characteristic == p


@pytest.mark.parametrize("p", [1, 4, 100, 2**31, 2**31 + 11])
def test_invalid_moduli(p):
    with pytest.raises(UsageError):
        Field(p)


def test_parse():
    assert Field.parse("QQ") == QQ
    assert Field.parse("GF(101)") == Field(101)
    assert Field.parse(" GF( 7 ) ") == GF7
    with pytest.raises(ParseError):
        Field.parse("GF(7^2)")
    with pytest.raises(UsageError):
        Field.parse("GF(9)")


fields = st.sampled_from([Field(2), Field(5), Field(101), Field(2147483647), QQ])


@st.composite
def triples(draw):
    F = draw(fields)
    if F.characteristic:
        vals = st.integers(-10**12, 10**12)
    else:
        vals = st.fractions(max_denominator=10**6)
    return F, F(draw(vals)), F(draw(vals)), F(draw(vals))


@given(triples())
def test_field_axioms(t):
    F, a, b, c = t
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a and a * b == b * a
    assert a + (-a) == F(0)
    if a:
        assert a * a.inverse() == F(1)


@given(st.fractions(), st.fractions())
def test_rationals_stay_reduced(a, b):
    for v in (QQ(a) + QQ(b), QQ(a) * QQ(b), QQ(a) - QQ(b)):
        assert gcd(v.value.numerator, v.value.denominator) == 1
        assert v.value.denominator > 0


@given(st.integers(-10**9, 10**9))
def test_prime_field_canonical_range(n):
    assert 0 <= Field(101)(n).value < 101
