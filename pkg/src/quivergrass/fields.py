"""Exact coefficient fields: the rationals and prime fields.

Every scalar in this package is either a `fractions.Fraction` (over Q) or an
int in ``range(p)`` (over F_p).  No floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import QuivergrassError


class FieldError(QuivergrassError):
    """Bad field tag or impossible coercion (e.g. 1/p in F_p)."""


class Rationals:
    """The field Q; elements are Fraction."""

    char = 0
    zero = Fraction(0)
    one = Fraction(1)
    tag = "Q"

    def coerce(self, value):
        return Fraction(value)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1) / a

    def div(self, a, b):
        return a / b

    @property
    def finite(self):
        return False

    def elements(self):
        raise FieldError("Q is infinite; cannot enumerate elements")

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "Q"


class PrimeField:
    """The field F_p for a prime p; elements are ints in range(p)."""

    def __init__(self, p):
        if p < 2 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
            raise FieldError(f"{p} is not prime")
        self.p = p
        self.char = p
        self.zero = 0
        self.one = 1 % p
        self.tag = f"F{p}"

    def coerce(self, value):
        if isinstance(value, Fraction):
            den = value.denominator % self.p
            if den == 0:
                raise FieldError(f"denominator of {value} vanishes in F{self.p}")
            return value.numerator * pow(den, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return a * self.inv(b) % self.p

    @property
    def finite(self):
        return True

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return self.tag


QQ = Rationals()


def GF(p):
    return PrimeField(p)


def parse_field(tag):
    """Turn a tag like "Q" or "F5" into a field object."""
    tag = tag.strip()
    if tag in ("Q", "QQ"):
        return QQ
    if tag.startswith("F") and tag[1:].isdigit():
        return PrimeField(int(tag[1:]))
    raise FieldError(f"unknown field tag {tag!r} (expected Q or F<p>)")
