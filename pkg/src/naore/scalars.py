"""Exact ground fields: arbitrary-precision rationals and prime fields F_p.

Field elements are stored as raw values (``fractions.Fraction`` for the
rationals, ``int`` residues in ``[0, p)`` for F_p) and all arithmetic is
routed through a :class:`ScalarField`, which keeps the hot loops free of
wrapper objects.  :class:`Scalar` is the tagged boundary type used in
public signatures; it refuses to mix values from different fields.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import MismatchError

#: prime moduli are kept below 2**31 so residue arithmetic stays simple
MAX_PRIME = 2**31

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class ScalarField:
    """The rationals (``p is None``) or the prime field F_p."""

    p: int | None = None

    def __post_init__(self):
        if self.p is not None:
            if not 2 <= self.p < MAX_PRIME:
                raise ValueError(f"prime modulus out of range: {self.p}")
            if not is_prime(self.p):
                raise ValueError(f"modulus not prime: {self.p}")

    # -- properties ---------------------------------------------------------

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def zero(self):
        return _ZERO if self.p is None else 0

    @property
    def one(self):
        return _ONE if self.p is None else 1

    # -- raw-value arithmetic ------------------------------------------------

    def raw(self, value) -> Fraction | int:
        """Canonicalize an int/Fraction/raw value into this field."""
        if self.p is None:
            return Fraction(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def add(self, a, b):
        return a + b if self.p is None else (a + b) % self.p

    def sub(self, a, b):
        return a - b if self.p is None else (a - b) % self.p

    def neg(self, a):
        return -a if self.p is None else (-a) % self.p

    def mul(self, a, b):
        return a * b if self.p is None else a * b % self.p

    def inv(self, a):
        if self.p is None:
            if not a:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def render(self, a) -> str:
        return str(a)

    def scalar(self, value) -> "Scalar":
        return Scalar(self, self.raw(value))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"


_ZERO = Fraction(0)
_ONE = Fraction(1)

#: the field of rational numbers
QQ = ScalarField()


def GF(p: int) -> ScalarField:
    return ScalarField(p)


@dataclass(frozen=True)
class Scalar:
    """A field-tagged exact scalar.  Never coerces across fields."""

    field: ScalarField
    value: Fraction | int

    def _coerced(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise MismatchError(f"scalar fields differ: {self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(self.field, self.field.raw(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerced(other)
        return Scalar(self.field, self.field.add(self.value, o.value))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerced(other)
        return Scalar(self.field, self.field.sub(self.value, o.value))

    def __rsub__(self, other):
        return self._coerced(other).__sub__(self)

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        o = self._coerced(other)
        return Scalar(self.field, self.field.mul(self.value, o.value))

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerced(other)
        return Scalar(self.field, self.field.div(self.value, o.value))

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))

    def __bool__(self):
        return bool(self.value)

    def __repr__(self):
        return f"{self.field!r}({self.value})"
