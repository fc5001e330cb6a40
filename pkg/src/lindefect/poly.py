"""Monomials, monomial orders and polynomials in a fixed set of variables.

Exponent vectors are plain tuples of ints.  A :class:`Polynomial` is an
immutable mapping from exponent tuples to raw field coefficients.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .errors import NonHomogeneousError, ParseError, UsageError
from .field import Field, FieldElement

Exp = Tuple[int, ...]


def mono_mul(a: Exp, b: Exp) -> Exp:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Exp, b: Exp) -> Exp:
    """``a / b``; caller guarantees ``b`` divides ``a``."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Exp, b: Exp) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Exp, b: Exp) -> Exp:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Exp, b: Exp) -> bool:
    return not any(x and y for x, y in zip(a, b))


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree ``d``, in lex-descending order."""
    if d < 0:
        return
    if nvars == 0:
        if d == 0:
            yield ()
        return
    if nvars == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in monomials_of_degree(nvars - 1, d - first):
            yield (first,) + rest


@dataclass(frozen=True)
class Monomial:
    exponents: Exp

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def __mul__(self, other: "Monomial") -> "Monomial":
        if len(other.exponents) != len(self.exponents):
            raise UsageError("monomials from rings with different variable counts")
        return Monomial(mono_mul(self.exponents, other.exponents))


class MonomialOrder(enum.Enum):
    DEGREVLEX = "degrevlex"
    LEX = "lex"

    def key(self, exp: Exp):
        """Sort key; a larger key means a larger monomial."""
        if self is MonomialOrder.DEGREVLEX:
            return (sum(exp), tuple(-e for e in reversed(exp)))
        return exp


def compare(m1, m2, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> int:
    """Return 1, 0 or -1 as ``m1`` is larger than, equal to or smaller than ``m2``."""
    e1 = m1.exponents if isinstance(m1, Monomial) else tuple(m1)
    e2 = m2.exponents if isinstance(m2, Monomial) else tuple(m2)
    if len(e1) != len(e2):
        raise UsageError(f"cannot compare monomials of lengths {len(e1)} and {len(e2)}")
    k1, k2 = order.key(e1), order.key(e2)
    return (k1 > k2) - (k1 < k2)


class PolyRing:
    """The polynomial ring ``k[x_1, ..., x_n]`` with the standard grading."""

    def __init__(self, field: Field, variables: Sequence[str]):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise UsageError(f"duplicate variable names in {variables}")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise UsageError(f"invalid variable name {v!r}")
        self.field = field
        self.variables = variables
        self.nvars = len(variables)

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and other.field == self.field
            and other.variables == self.variables
        )

    def __hash__(self):
        return hash((self.field, self.variables))

    def __repr__(self):
        return f"{self.field}[{', '.join(self.variables)}]"

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field.normalize(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def gen(self, i: int) -> "Polynomial":
        exp = tuple(int(j == i) for j in range(self.nvars))
        return Polynomial(self, {exp: self.field.one()})

    def gens(self):
        return [self.gen(i) for i in range(self.nvars)]

    def var(self, name: str) -> "Polynomial":
        try:
            return self.gen(self.variables.index(name))
        except ValueError:
            raise UsageError(f"unknown variable {name!r}") from None

    def monomial(self, exp: Exp, coeff=1) -> "Polynomial":
        c = self.field.normalize(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def from_terms(self, terms: Dict[Exp, object]) -> "Polynomial":
        norm = self.field.normalize
        out = {}
        for e, c in terms.items():
            c = norm(c)
            if c:
                out[tuple(e)] = c
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise UsageError(f"polynomial from {value.ring} used in {self}")
            return value
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, FieldElement):
            value = value.value
        return self.constant(value)


class Polynomial:
    """An immutable polynomial; ``terms`` maps exponent tuples to nonzero raw coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: Dict[Exp, object]):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # structure ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self, order: MonomialOrder = MonomialOrder.DEGREVLEX):
        """Term list ``[(Monomial, FieldElement)]`` in descending order."""
        f = self.ring.field
        return [
            (Monomial(e), FieldElement(f, self.terms[e]))
            for e in sorted(self.terms, key=order.key, reverse=True)
        ]

    def leading_exponent(self, order: MonomialOrder = MonomialOrder.DEGREVLEX) -> Exp:
        if not self.terms:
            raise UsageError("the zero polynomial has no leading term")
        return max(self.terms, key=order.key)

    def degree(self) -> int:
        if not self.terms:
            raise UsageError("the zero polynomial has no degree")
        return max(sum(e) for e in self.terms)

    def homogeneous_degree(self) -> Optional[int]:
        """Common degree of all terms; ``None`` for mixed degrees or the zero polynomial."""
        degs = {sum(e) for e in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def constant_coefficient(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field.zero())

    # arithmetic --------------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise UsageError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other
        if isinstance(other, FieldElement):
            if other.field != self.ring.field:
                raise UsageError(f"field mismatch: {self.ring.field} vs {other.field}")
            return self.ring.constant(other.value)
        if isinstance(other, (int, Fraction)):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        norm = self.ring.field.normalize
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = norm(out.get(e, 0) + c)
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        norm = self.ring.field.normalize
        return Polynomial(self.ring, {e: norm(-c) for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, poly_mul_terms(self.terms, other.terms, self.ring.field))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise UsageError("polynomial powers must be non-negative integers")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        other = self._coerce(other) if isinstance(other, (int, Fraction, FieldElement)) else None
        return other is not None and other.terms == self.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        return f"Polynomial({self})"

    def __str__(self):
        return format_poly(self.terms, self.ring.variables)


def poly_mul_terms(a: Dict[Exp, object], b: Dict[Exp, object], field: Field) -> Dict[Exp, object]:
    norm = field.normalize
    out: Dict[Exp, object] = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return {e: v for e, v in ((e, norm(c)) for e, c in out.items()) if v}


def format_monomial(exp: Exp, variables: Sequence[str]) -> str:
    parts = []
    for v, e in zip(variables, exp):
        if e == 1:
            parts.append(v)
        elif e > 1:
            parts.append(f"{v}^{e}")
    return "*".join(parts)


def format_coeff(c, field: Optional[Field] = None) -> str:
    if isinstance(c, Fraction) and c.denominator == 1:
        return str(c.numerator)
    return str(c)


def format_poly(terms: Dict[Exp, object], variables: Sequence[str],
                order: MonomialOrder = MonomialOrder.DEGREVLEX) -> str:
    if not terms:
        return "0"
    out = []
    for e in sorted(terms, key=order.key, reverse=True):
        c = terms[e]
        mono = format_monomial(e, variables)
        neg = isinstance(c, Fraction) and c < 0
        mag = -c if neg else c
        cs = format_coeff(mag)
        if mono:
            body = mono if cs == "1" else f"{cs}*{mono}"
        else:
            body = cs
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def is_homogeneous(f: Polynomial):
    """Common degree of ``f``; the string ``"zero"`` for the zero polynomial; ``None`` if mixed."""
    if f.is_zero():
        return "zero"
    return f.homogeneous_degree()


def poly_mul(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise UsageError(f"ring mismatch: {f.ring} vs {g.ring}")
    return f * g


def linear_component(f: Polynomial) -> Polynomial:
    """``f`` itself when it is a linear form, else zero."""
    if f.is_zero():
        return f
    d = f.homogeneous_degree()
    if d is None:
        raise NonHomogeneousError(f"linear_component of non-homogeneous {f}")
    return f if d == 1 else f.ring.zero()


# parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


class _Parser:
    """Recursive descent over ``expr := term (('+'|'-') term)*``."""

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text_stripped_end = len(text.rstrip())
        while pos < text_stripped_end:
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                while text[pos].isspace():
                    pos += 1
                raise ParseError(f"unexpected character {text[pos]!r} in {text!r}", 1, pos + 1)
            kind = "num" if m.group(1) else "id" if m.group(2) else "op"
            value = m.group(1) or m.group(2) or m.group(3)
            if value == "**":
                value = "^"
            self.tokens.append((kind, value, m.start(m.lastindex) + 1))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text) + 1)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def error(self, msg):
        col = self.peek()[2]
        raise ParseError(f"{msg} in {self.text!r}", 1, col)

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.error("empty polynomial")
        p = self.expr()
        if self.i != len(self.tokens):
            self.error(f"unexpected token {self.peek()[1]!r}")
        return p

    def expr(self) -> Polynomial:
        sign = 1
        kind, val, _ = self.peek()
        if val in ("+", "-"):
            self.take()
            sign = -1 if val == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while self.peek()[1] in ("+", "-"):
            _, op, _ = self.take()
            t = self.term()
            p = p + t if op == "+" else p - t
        return p

    def term(self) -> Polynomial:
        p = self.power()
        while True:
            kind, val, _ = self.peek()
            if val == "*":
                self.take()
                p = p * self.power()
            elif kind in ("num", "id") or val == "(":
                p = p * self.power()
            else:
                return p

    def power(self) -> Polynomial:
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            kind, val, _ = self.take()
            if kind != "num" or "/" in val:
                self.i -= 1
                self.error("exponent must be a non-negative integer")
            base = base ** int(val)
        return base

    def atom(self) -> Polynomial:
        kind, val, _ = self.peek()
        if kind == "num":
            self.take()
            return self.ring.constant(Fraction(val))
        if kind == "id":
            if val not in self.ring.variables:
                self.error(f"unknown variable {val!r}")
            self.take()
            return self.ring.var(val)
        if val == "(":
            self.take()
            p = self.expr()
            if self.peek()[1] != ")":
                self.error("missing ')'")
            self.take()
            return p
        if kind is None:
            self.error("unexpected end of input")
        self.error(f"unexpected token {val!r}")
