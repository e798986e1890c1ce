"""Exact coefficient fields.

Two fields are supported: the rationals (arbitrary precision, always in
lowest terms with positive denominator, courtesy of fractions.Fraction) and
prime fields F_p (residues stored as ints in [0, p)).  Every verification in
this package is exact; there is deliberately no floating-point path.

Scalar values are plain Python objects (Fraction or int).  A Field instance
supplies the operations; rings tag their polynomials with the field, and
cross-field operations are rejected at the ring layer.
"""

from __future__ import annotations

from fractions import Fraction


class FieldMismatchError(ValueError):
    """Operands belong to different fields."""


class Field:
    """Common interface of the two coefficient fields."""

    kind: str

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def div(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def from_int(self, n: int):
        raise NotImplementedError

    def from_fraction(self, num: int, den: int):
        raise NotImplementedError

    @property
    def zero(self):
        return self.from_int(0)

    @property
    def one(self):
        return self.from_int(1)

    def is_zero(self, a) -> bool:
        return a == self.zero

    def coeff_str(self, a) -> str:
        return str(a)


class RationalField(Field):
    kind = "rationals"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        if b == 0:
            raise ZeroDivisionError("division by zero in the rational field")
        return a / b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def from_int(self, n: int):
        return Fraction(n)

    def from_fraction(self, num: int, den: int):
        return Fraction(num, den)

    def __repr__(self):
        return "QQ"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")


class PrimeField(Field):
    kind = "prime_field"

    def __init__(self, p: int):
        if p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def div(self, a, b):
        if b % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return (a * pow(b, self.p - 2, self.p)) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in F_{self.p}")
        return pow(a, self.p - 2, self.p)

    def from_int(self, n: int):
        return n % self.p

    def from_fraction(self, num: int, den: int):
        return self.div(num % self.p, den % self.p)

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


QQ = RationalField()

#: Cross-check prime: large enough that random catalog coefficients never
#: collide with the characteristic.
CHECK_PRIME = 32003


def field_from_spec(spec: str) -> Field:
    """Parse a field descriptor: 'q' for the rationals, 'fp:P' for F_P."""
    if spec == "q":
        return QQ
    if spec.startswith("fp:"):
        return PrimeField(int(spec[3:]))
    raise ValueError(f"unknown field spec {spec!r} (expected 'q' or 'fp:P')")


def field_spec_str(field: Field) -> str:
    if isinstance(field, RationalField):
        return "q"
    if isinstance(field, PrimeField):
        return f"fp:{field.p}"
    raise TypeError(f"not a field: {field!r}")
