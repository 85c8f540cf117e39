"""Exact scalar arithmetic over the rationals or a prime field GF(p).

Scalars are stored in canonical form (reduced fraction with positive
denominator, or residue in [0, p)), so two scalars are equal exactly when
their stored representations coincide.  There is no floating point anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DenominatorDivisibleByP,
    DivisionByZero,
    FieldMismatch,
    NonPrimeModulus,
    ZeroDenominator,
)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The ground field: the rationals when ``modulus`` is None, else GF(p)."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and not _is_prime(self.modulus):
            raise NonPrimeModulus(f"modulus {self.modulus} is not prime")

    @property
    def is_prime_field(self) -> bool:
        return self.modulus is not None

    def scalar(self, num: int, den: int = 1) -> "Scalar":
        """The canonical representative of num/den in this field."""
        if den == 0:
            raise ZeroDenominator(f"denominator of {num}/{den} is zero")
        if self.modulus is None:
            return Scalar(self, Fraction(num, den))
        p = self.modulus
        if den % p == 0:
            raise DenominatorDivisibleByP(
                f"denominator {den} is divisible by the modulus {p}"
            )
        return Scalar(self, num * pow(den, p - 2, p) % p)

    @property
    def zero(self) -> "Scalar":
        return self.scalar(0)

    @property
    def one(self) -> "Scalar":
        return self.scalar(1)

    def from_string(self, text: str) -> "Scalar":
        """Parse ``a`` or ``a/b`` with an optional leading minus."""
        num, slash, den = text.strip().partition("/")
        return self.scalar(int(num), int(den) if slash else 1)

    def __str__(self) -> str:
        return "Q" if self.modulus is None else f"GF({self.modulus})"


#: The field of rational numbers.
QQ = FieldSpec()


def GF(p: int) -> FieldSpec:
    """The prime field with p elements."""
    return FieldSpec(p)


@dataclass(frozen=True)
class Scalar:
    """An exact element of a :class:`FieldSpec`."""

    field: FieldSpec
    value: Fraction | int

    def __post_init__(self):
        if self.field.modulus is None:
            object.__setattr__(self, "value", Fraction(self.value))
        else:
            object.__setattr__(self, "value", int(self.value) % self.field.modulus)

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, int):
            return Scalar(self.field, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.value + other.value)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.value - other.value)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.value * other.value)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(self.field, -self.value)

    def inv(self) -> "Scalar":
        if not self:
            raise DivisionByZero("inverse of zero")
        p = self.field.modulus
        if p is None:
            return Scalar(self.field, 1 / self.value)
        return Scalar(self.field, pow(self.value, p - 2, p))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __bool__(self) -> bool:
        return self.value != 0

    @property
    def is_negative(self) -> bool:
        # GF(p) residues are canonical non-negative integers, never negative.
        return self.field.modulus is None and self.value < 0

    def __abs__(self) -> "Scalar":
        return -self if self.is_negative else self

    def __str__(self) -> str:
        return str(self.value)

    def __repr__(self) -> str:
        return f"Scalar({self.value} over {self.field})"
