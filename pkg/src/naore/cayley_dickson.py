"""Cayley-Dickson algebras over an exact scalar field.

Levels 0..5 of the doubling construction (scalars, complex-style pairs,
quaternion-like, octonion-like, sedenion-like, and one level beyond).
The product convention is fixed once and used everywhere:

    (a, b) * (c, d) = (a*c - conj(d)*b,  d*a + b*conj(c))
    conj(a, b)      = (conj(a), -b)

Level 0 multiplication is plain scalar multiplication.  Products of basis
units are always plus or minus another unit, so general products go through
a cached sign table; :func:`doubling_mul` keeps the literal recursion as the
reference path and the table is built from it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MismatchError
from .scalars import Scalar, ScalarField

MAX_LEVEL = 5


def doubling_mul(x: tuple, y: tuple, field: ScalarField) -> tuple:
    """Reference product: the doubling recursion applied to raw coordinate tuples."""
    n = len(x)
    if n == 1:
        return (field.mul(x[0], y[0]),)
    h = n // 2
    a, b = x[:h], x[h:]
    c, d = y[:h], y[h:]
    ac = doubling_mul(a, c, field)
    cj_d_b = doubling_mul(_raw_conj(d, field), b, field)
    da = doubling_mul(d, a, field)
    b_cj_c = doubling_mul(b, _raw_conj(c, field), field)
    left = tuple(field.sub(p, q) for p, q in zip(ac, cj_d_b))
    right = tuple(field.add(p, q) for p, q in zip(da, b_cj_c))
    return left + right


def _raw_conj(x: tuple, field: ScalarField) -> tuple:
    n = len(x)
    if n == 1:
        return x
    h = n // 2
    return _raw_conj(x[:h], field) + tuple(field.neg(v) for v in x[h:])


_unit_tables: dict[int, list[list[tuple[int, int]]]] = {}


def _unit_table(level: int) -> list[list[tuple[int, int]]]:
    """table[i][j] = (sign, k) with e_i * e_j = sign * e_k; signs are field-independent."""
    table = _unit_tables.get(level)
    if table is None:
        from .scalars import QQ

        n = 2**level
        units = [tuple(QQ.one if j == i else QQ.zero for j in range(n)) for i in range(n)]
        table = []
        for i in range(n):
            row = []
            for j in range(n):
                prod = doubling_mul(units[i], units[j], QQ)
                entries = [(k, v) for k, v in enumerate(prod) if v]
                if len(entries) != 1 or entries[0][1] not in (1, -1):
                    raise AssertionError("unit product is not a signed unit")
                row.append((int(entries[0][1]), entries[0][0]))
            table.append(row)
        _unit_tables[level] = table
    return table


@dataclass(frozen=True)
class CDElement:
    """An element of the level-k algebra: 2**k raw coordinates over one field."""

    field: ScalarField
    level: int
    coords: tuple

    def __post_init__(self):
        if not 0 <= self.level <= MAX_LEVEL:
            raise ValueError(f"level must be in 0..{MAX_LEVEL}, got {self.level}")
        if len(self.coords) != 2**self.level:
            raise ValueError(f"need {2 ** self.level} coordinates, got {len(self.coords)}")

    # -- constructors --------------------------------------------------------

    @staticmethod
    def zero(field: ScalarField, level: int) -> "CDElement":
        return CDElement(field, level, (field.zero,) * 2**level)

    @staticmethod
    def one(field: ScalarField, level: int) -> "CDElement":
        z = field.zero
        return CDElement(field, level, (field.one,) + (z,) * (2**level - 1))

    @staticmethod
    def unit(field: ScalarField, level: int, index: int) -> "CDElement":
        if not 0 <= index < 2**level:
            raise ValueError(f"unit index out of range: {index}")
        z = field.zero
        return CDElement(field, level, tuple(field.one if i == index else z for i in range(2**level)))

    @staticmethod
    def from_values(field: ScalarField, level: int, values) -> "CDElement":
        return CDElement(field, level, tuple(field.raw(v) for v in values))

    @staticmethod
    def from_scalar(field: ScalarField, level: int, value) -> "CDElement":
        z = field.zero
        return CDElement(field, level, (field.raw(value),) + (z,) * (2**level - 1))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "CDElement"):
        if self.field != other.field:
            raise MismatchError(f"scalar fields differ: {self.field} vs {other.field}")
        if self.level != other.level:
            raise MismatchError(f"levels differ: {self.level} vs {other.level}")

    def __add__(self, other: "CDElement") -> "CDElement":
        self._check(other)
        add = self.field.add
        return CDElement(self.field, self.level, tuple(add(a, b) for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "CDElement") -> "CDElement":
        self._check(other)
        sub = self.field.sub
        return CDElement(self.field, self.level, tuple(sub(a, b) for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "CDElement":
        neg = self.field.neg
        return CDElement(self.field, self.level, tuple(neg(a) for a in self.coords))

    def __mul__(self, other: "CDElement") -> "CDElement":
        self._check(other)
        field = self.field
        if self.level == 0:
            return CDElement(field, 0, (field.mul(self.coords[0], other.coords[0]),))
        table = _unit_table(self.level)
        acc = [field.zero] * len(self.coords)
        mul, add, sub = field.mul, field.add, field.sub
        for i, xi in enumerate(self.coords):
            if not xi:
                continue
            row = table[i]
            for j, yj in enumerate(other.coords):
                if not yj:
                    continue
                sign, k = row[j]
                term = mul(xi, yj)
                acc[k] = add(acc[k], term) if sign > 0 else sub(acc[k], term)
        return CDElement(field, self.level, tuple(acc))

    def scale(self, raw) -> "CDElement":
        """Multiply every coordinate by a raw scalar of the same field."""
        mul = self.field.mul
        return CDElement(self.field, self.level, tuple(mul(raw, a) for a in self.coords))

    def conj(self) -> "CDElement":
        return CDElement(self.field, self.level, _raw_conj(self.coords, self.field))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()


def cd_mul(x: CDElement, y: CDElement) -> CDElement:
    return x * y


def cd_conj(x: CDElement) -> CDElement:
    return x.conj()


def cd_norm(x: CDElement) -> Scalar:
    """The level-0 coordinate of x * conj(x).  All other coordinates vanish."""
    prod = x * x.conj()
    return Scalar(x.field, prod.coords[0])


def cd_commutator(x: CDElement, y: CDElement) -> CDElement:
    return x * y - y * x


def cd_associator(x: CDElement, y: CDElement, z: CDElement) -> CDElement:
    return (x * y) * z - x * (y * z)
