"""
Exact coefficient fields.

Two fields cover everything the constructions need:

- RationalField: elements are plain fractions.Fraction values, so
  arithmetic is arbitrary precision and equality is canonical.
- PrimeField(p): elements are PrimeFieldElem residues. Plain ints are
  accepted as operands and reduced mod p.

Code elsewhere is written against Python operators (+, -, *, /, ==) plus
a Field object for zero/one/coercion/text, so the same construction runs
over Q or F_p unchanged.
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from fractions import Fraction

from sympy import isprime

from src.errors import FieldMismatchError, InvalidParameterError


# ──────────────────────────────────────────────
# PRIME FIELD ELEMENTS
# ──────────────────────────────────────────────

@dataclass(frozen=True, eq=False)
class PrimeFieldElem:
    """A residue in F_p. Always stored reduced to [0, p)."""

    value: int
    modulus: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.modulus)

    def _coerce(self, other):
        if isinstance(other, PrimeFieldElem):
            if other.modulus != self.modulus:
                raise FieldMismatchError(
                    f"cannot mix F_{self.modulus} and F_{other.modulus}"
                )
            return other.value
        if isinstance(other, int):
            return other % self.modulus
        if isinstance(other, Fraction) and other.denominator == 1:
            return other.numerator % self.modulus
        raise FieldMismatchError(f"cannot combine F_{self.modulus} element with {other!r}")

    def _new(self, value):
        return PrimeFieldElem(value, self.modulus)

    def __add__(self, other):
        return self._new(self.value + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return self._new(self.value - self._coerce(other))

    def __rsub__(self, other):
        return self._new(self._coerce(other) - self.value)

    def __mul__(self, other):
        return self._new(self.value * self._coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.value)

    def inverse(self):
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse in F_{self.modulus}")
        return self._new(pow(self.value, -1, self.modulus))

    def __truediv__(self, other):
        return self * self._new(self._coerce(other)).inverse()

    def __rtruediv__(self, other):
        return self._new(self._coerce(other)) * self.inverse()

    def __pow__(self, exponent):
        if exponent < 0:
            return self.inverse() ** -exponent
        return self._new(pow(self.value, exponent, self.modulus))

    def __eq__(self, other):
        try:
            return self.value == self._coerce(other)
        except FieldMismatchError:
            return NotImplemented

    def __hash__(self):
        return hash(self.value)

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"PrimeFieldElem({self.value}, {self.modulus})"

    def __str__(self):
        return f"{self.value} mod {self.modulus}"


# ──────────────────────────────────────────────
# FIELDS
# ──────────────────────────────────────────────

class Field(ABC):
    """Coercion, constants and text form for one coefficient field."""

    name = "field"

    @abstractmethod
    def __call__(self, value):
        """Coerce an int / str / Fraction / element into this field."""

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def inv(self, x):
        x = self(x)
        return self.one / x

    def is_zero(self, x):
        return x == 0

    @abstractmethod
    def format(self, x) -> str:
        """Human text form ("num/den" or "v mod p")."""

    @abstractmethod
    def plain(self, x) -> str:
        """Compact form used inside JSON files."""

    def parse(self, text):
        return self(text.strip())

    def __eq__(self, other):
        return type(self) is type(other) and self.name == other.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"<Field {self.name}>"


class RationalField(Field):
    name = "rational"

    def __call__(self, value):
        if isinstance(value, PrimeFieldElem):
            raise FieldMismatchError("prime-field element used as a rational")
        return Fraction(value)

    def format(self, x):
        return str(Fraction(x))

    def plain(self, x):
        return str(Fraction(x))


class PrimeField(Field):
    def __init__(self, modulus):
        if not isinstance(modulus, int) or modulus < 2 or not isprime(modulus):
            raise InvalidParameterError(f"modulus {modulus!r} is not prime")
        self.modulus = modulus
        self.name = f"fp:{modulus}"

    def __call__(self, value):
        if isinstance(value, PrimeFieldElem):
            if value.modulus != self.modulus:
                raise FieldMismatchError(
                    f"cannot mix F_{self.modulus} and F_{value.modulus}"
                )
            return value
        if isinstance(value, str):
            text = value.split("mod")[0].strip()
            value = Fraction(text)
        if isinstance(value, Fraction):
            num = PrimeFieldElem(value.numerator, self.modulus)
            return num / PrimeFieldElem(value.denominator, self.modulus)
        return PrimeFieldElem(int(value), self.modulus)

    def format(self, x):
        return str(self(x))

    def plain(self, x):
        return str(self(x).value)


RATIONAL = RationalField()


def field_from_spec(spec):
    """
    Parse the CLI / JSON field name.

    Args:
        spec: "rational" or "fp:<p>" (a Field instance passes through)

    Returns:
        Field
    """
    if isinstance(spec, Field):
        return spec
    text = str(spec).strip().lower()
    if text in ("rational", "q", "qq"):
        return RATIONAL
    if text.startswith("fp:"):
        try:
            return PrimeField(int(text[3:]))
        except ValueError as exc:
            raise InvalidParameterError(f"bad prime in field spec {spec!r}") from exc
    raise InvalidParameterError(f"unknown field {spec!r} (use 'rational' or 'fp:<p>')")


def field_of(x):
    """Field an existing scalar belongs to."""
    if isinstance(x, PrimeFieldElem):
        return PrimeField(x.modulus)
    return RATIONAL
