"""Exact coefficient fields.

Everything downstream (ring elements, elimination, report rendering) is
parametrized by a Field object so the same code runs over the rationals and
over a prime field. Scalars are plain hashable Python values: Fraction for
the rationals, small ints in [0, p) for GF(p). No floats, ever.
"""

from __future__ import annotations

from fractions import Fraction


class FieldError(ValueError):
    pass


class Rationals:
    """The field of rational numbers with Fraction scalars."""

    name = "q"

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_fraction(self, num, den):
        if den == 0:
            raise FieldError("zero denominator")
        return Fraction(num, den)

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
            raise FieldError("division by zero")
        return 1 / a

    def is_zero(self, a):
        return a == 0

    def render(self, a):
        if a.denominator == 1:
            return str(a.numerator)
        return "%d/%d" % (a.numerator, a.denominator)


class PrimeField:
    """GF(p) with int scalars reduced to [0, p)."""

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise FieldError("fp modulus must be prime, got %r" % (p,))
        self.p = p
        self.name = "fp:%d" % p

    def zero(self):
        return 0

    def one(self):
        return 1

    def from_int(self, n):
        return n % self.p

    def from_fraction(self, num, den):
        if den % self.p == 0:
            raise FieldError("denominator divisible by modulus")
        return (num * self.inv(den % self.p)) % self.p

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
            raise FieldError("division by zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def render(self, a):
        return str(a % self.p)


QQ = Rationals()


def field_from_spec(text):
    """Parse a field spec string: "q" or "fp:<prime>"."""
    t = text.strip().lower()
    if t == "q":
        return QQ
    if t.startswith("fp:"):
        body = t[3:]
        if not body.isdigit():
            raise FieldError("bad prime in field spec %r" % (text,))
        return PrimeField(int(body))
    raise FieldError("unknown field spec %r (want q or fp:<prime>)" % (text,))
