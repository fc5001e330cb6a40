"""Exact coefficient fields: prime fields GF(p) and the rationals.

The Groebner engine works on *raw* coefficients (``int`` in ``[0, p)`` for
GF(p), :class:`fractions.Fraction` for QQ) and calls :meth:`Field.normalize`
after ring operations.  :class:`FieldElement` is the value type exposed to
users; it wraps a raw coefficient together with its field.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import ParseError, UsageError

MAX_PRIME = 2**31


@lru_cache(maxsize=None)
def _is_prime(n: int) -> bool:
    from sympy import isprime

    return bool(isprime(n))


class Field:
    """A coefficient field, either ``GF(p)`` (``p`` prime, ``p < 2**31``) or ``QQ``."""

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int = 0):
        if characteristic != 0:
            if not 2 <= characteristic < MAX_PRIME or not _is_prime(characteristic):
                raise UsageError(f"GF({characteristic}): modulus must be a prime below 2^31")
        self.characteristic = characteristic

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse ``"QQ"`` or ``"GF(p)"``."""
        text = text.strip()
        if text == "QQ":
            return cls(0)
        m = re.fullmatch(r"GF\(\s*(\d+)\s*\)", text)
        if not m:
            raise ParseError(f"unknown field {text!r}; expected 'QQ' or 'GF(p)'")
        return cls(int(m.group(1)))

    @property
    def is_prime_field(self) -> bool:
        return self.characteristic != 0

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return f"GF({self.characteristic})" if self.characteristic else "QQ"

    __str__ = __repr__

    # raw coefficient arithmetic -------------------------------------------

    def normalize(self, value):
        """Canonical raw coefficient for an int, Fraction or raw value."""
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        return Fraction(value)

    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        return 1 / a

    def random(self, rng, bound: int = 10):
        """A random raw coefficient; over QQ an integer in ``[-bound, bound]``."""
        if self.characteristic:
            return rng.randrange(self.characteristic)
        return Fraction(rng.randint(-bound, bound))

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.normalize(value))


@dataclass(frozen=True)
class FieldElement:
    """An immutable element of a :class:`Field`."""

    field: Field
    value: object

    def _check(self, other):
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise UsageError(f"field mismatch: {self.field} vs {other.field}")
            return other.value
        return self.field.normalize(other)

    def __add__(self, other):
        return FieldElement(self.field, self.field.normalize(self.value + self._check(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.field, self.field.normalize(self.value - self._check(other)))

    def __rsub__(self, other):
        return FieldElement(self.field, self.field.normalize(self._check(other) - self.value))

    def __mul__(self, other):
        return FieldElement(self.field, self.field.normalize(self.value * self._check(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.normalize(-self.value))

    def __truediv__(self, other):
        return self * FieldElement(self.field, self.field.inv(self._check(other)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        try:
            return self.value == self.field.normalize(other)
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __repr__(self):
        return f"{self.value} in {self.field}"


def field_add(a: FieldElement, b: FieldElement) -> FieldElement:
    return a + b


def field_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    return a * b


def field_neg(a: FieldElement) -> FieldElement:
    return -a


def field_inv(a: FieldElement) -> FieldElement:
    return a.inverse()


def field_eq(a: FieldElement, b: FieldElement) -> bool:
    if a.field != b.field:
        raise UsageError(f"field mismatch: {a.field} vs {b.field}")
    return a.value == b.value
