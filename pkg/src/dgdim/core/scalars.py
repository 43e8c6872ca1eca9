"""Exact scalar arithmetic: the rationals and prime fields F_p (p <= 2**31).

Field elements are plain Python objects (Fraction for Q, int in [0, p) for
F_p); the Field object carries the operations so polynomial code stays
field-agnostic.
"""
from __future__ import annotations

from fractions import Fraction

_P_MAX = 2 ** 31


class Field:
    """Common interface; use Rationals() or PrimeField(p)."""

    tag: str

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero()

    def parse(self, text: str):
        """Parse 'n' or 'n/d' (decimal integers)."""
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            d = self.from_int(int(den))
            if self.is_zero(d):
                raise ValueError("zero denominator in scalar %r" % text)
            return self.div(self.from_int(int(num)), d)
        return self.from_int(int(text))

    def format(self, a) -> str:
        raise NotImplementedError

    def __eq__(self, other):
        return isinstance(other, Field) and self.tag == other.tag

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return self.tag


class Rationals(Field):
    tag = "Q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def format(self, a) -> str:
        return str(a)


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or p > _P_MAX:
            raise ValueError("prime out of supported range: %r" % p)
        for d in range(2, int(p ** 0.5) + 1):
            if p % d == 0:
                raise ValueError("modulus %d is not prime" % p)
        self.p = p
        self.tag = "Fp:%d" % p

    def zero(self):
        return 0

    def one(self):
        return 1 % self.p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def format(self, a) -> str:
        return str(a % self.p)


def field_from_tag(tag: str) -> Field:
    """'Q' or 'Fp:<p>' -> Field instance."""
    if tag == "Q":
        return Rationals()
    if tag.startswith("Fp:"):
        return PrimeField(int(tag[3:]))
    raise ValueError("unknown field tag %r" % tag)
