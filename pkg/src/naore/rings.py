"""Coefficient rings and their pointwise structural operations.

Four constructors share one element type:

* ``cd``         -- a level-k Cayley-Dickson algebra over the scalar field;
* ``poly``       -- polynomials in a central variable Y with level-k coefficients;
* ``quotient``   -- the same truncated modulo Y**m;
* ``functions``  -- tuples indexed by a finite set, pointwise operations.

Elements are immutable and canonical: polynomial payloads never carry
trailing zeros, quotient payloads have length below the modulus exponent,
and equality is payload equality.  The canonical scalar basis is enumerated
block-major (Y-degree or function index) with Cayley-Dickson unit index as
the minor key.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cayley_dickson import CDElement, cd_mul  # noqa: F401  (re-exported convenience)
from .errors import CapsRequiredError, MismatchError
from .scalars import ScalarField

KINDS = ("cd", "poly", "quotient", "functions")


@dataclass(frozen=True)
class CapProfile:
    """Explicit evidence bounds: every capped verdict names its profile."""

    x_degree: int
    y_degree: int
    rounds: int = 8

    def __post_init__(self):
        if self.x_degree < 1 or self.y_degree < 1 or self.rounds < 1:
            raise ValueError("cap profile entries must be positive")


@dataclass(frozen=True)
class RingDescriptor:
    field: ScalarField
    kind: str
    level: int = 0
    modulus: int | None = None  # quotient: truncation exponent m >= 1
    size: int | None = None  # functions: index-set size n >= 1

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown ring constructor: {self.kind}")
        if self.kind == "quotient":
            if self.modulus is None or self.modulus < 1:
                raise ValueError("quotient modulus exponent must be >= 1")
        elif self.modulus is not None:
            raise ValueError("modulus only applies to the quotient constructor")
        if self.kind == "functions":
            if self.size is None or self.size < 1:
                raise ValueError("functions index size must be >= 1")
        elif self.size is not None:
            raise ValueError("size only applies to the functions constructor")

    # -- structure ------------------------------------------------------------

    @property
    def unit_count(self) -> int:
        return 2**self.level

    @property
    def is_finite_dimensional(self) -> bool:
        return self.kind != "poly"

    def dimension(self) -> int | None:
        """Scalar dimension, or None for the polynomial constructor."""
        if self.kind == "cd":
            return self.unit_count
        if self.kind == "quotient":
            return self.modulus * self.unit_count
        if self.kind == "functions":
            return self.size * self.unit_count
        return None

    def block_count(self, y_cap: int | None = None) -> int:
        """Number of basis blocks (Y-degrees or function indices)."""
        if self.kind == "cd":
            return 1
        if self.kind == "quotient":
            return self.modulus
        if self.kind == "functions":
            return self.size
        if y_cap is None:
            raise CapsRequiredError("polynomial ring needs a Y-degree cap here")
        return y_cap + 1

    def is_associative(self) -> bool:
        """Exact: the unit triple (e1, e2, e4) fails to associate from level 3 up."""
        return self.level <= 2

    def is_commutative(self) -> bool:
        return self.level <= 1


@dataclass(frozen=True)
class RingElement:
    ring: RingDescriptor
    payload: CDElement | tuple[CDElement, ...]

    def __post_init__(self):
        ring = self.ring
        if ring.kind == "cd":
            if not isinstance(self.payload, CDElement):
                raise ValueError("cd payload must be a CDElement")
            self._check_entry(self.payload)
        else:
            if not isinstance(self.payload, tuple):
                raise ValueError(f"{ring.kind} payload must be a tuple of CDElements")
            for entry in self.payload:
                self._check_entry(entry)
            if ring.kind == "functions":
                if len(self.payload) != ring.size:
                    raise ValueError(f"functions payload must have exactly {ring.size} entries")
            else:
                if self.payload and self.payload[-1].is_zero():
                    raise ValueError("trailing zero coefficients are not canonical")
                if ring.kind == "quotient" and len(self.payload) > ring.modulus:
                    raise ValueError("quotient payload longer than the modulus exponent")

    def _check_entry(self, entry: CDElement):
        if entry.field != self.ring.field or entry.level != self.ring.level:
            raise MismatchError("payload entry does not match the descriptor")

    # -- arithmetic ------------------------------------------------------------

    def _check(self, other: "RingElement"):
        if self.ring != other.ring:
            raise MismatchError(f"ring descriptors differ: {self.ring} vs {other.ring}")

    def __add__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        ring = self.ring
        if ring.kind == "cd":
            return RingElement(ring, self.payload + other.payload)
        if ring.kind == "functions":
            return RingElement(ring, tuple(a + b for a, b in zip(self.payload, other.payload)))
        a, b = self.payload, other.payload
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, entry in enumerate(b):
            out[i] = out[i] + entry
        return RingElement(ring, _trim(out))

    def __sub__(self, other: "RingElement") -> "RingElement":
        return self + (-other)

    def __neg__(self) -> "RingElement":
        ring = self.ring
        if ring.kind == "cd":
            return RingElement(ring, -self.payload)
        return RingElement(ring, tuple(-entry for entry in self.payload))

    def __mul__(self, other: "RingElement") -> "RingElement":
        self._check(other)
        ring = self.ring
        if ring.kind == "cd":
            return RingElement(ring, self.payload * other.payload)
        if ring.kind == "functions":
            return RingElement(ring, tuple(a * b for a, b in zip(self.payload, other.payload)))
        a, b = self.payload, other.payload
        if not a or not b:
            return ring_zero(ring)
        limit = len(a) + len(b) - 1
        if ring.kind == "quotient":
            limit = min(limit, ring.modulus)
        zero = CDElement.zero(ring.field, ring.level)
        out = [zero] * limit
        for i, ai in enumerate(a):
            if ai.is_zero():
                continue
            for j, bj in enumerate(b):
                if i + j >= limit:
                    break
                if bj.is_zero():
                    continue
                out[i + j] = out[i + j] + ai * bj
        return RingElement(ring, _trim(out))

    def scale(self, raw) -> "RingElement":
        """Multiply by a raw scalar of the descriptor's field."""
        ring = self.ring
        if ring.kind == "cd":
            return RingElement(ring, self.payload.scale(raw))
        if ring.kind == "functions":
            return RingElement(ring, tuple(entry.scale(raw) for entry in self.payload))
        return RingElement(ring, _trim([entry.scale(raw) for entry in self.payload]))

    def is_zero(self) -> bool:
        if self.ring.kind == "cd":
            return not any(self.payload.coords)
        for entry in self.payload:
            if any(entry.coords):
                return False
        return True

    def __bool__(self):
        return not self.is_zero()

    def y_degree(self) -> int:
        """Y-degree for poly/quotient payloads; -1 on the zero element."""
        if self.ring.kind not in ("poly", "quotient"):
            raise ValueError("y_degree only applies to poly/quotient elements")
        return len(self.payload) - 1


def _trim(entries: list[CDElement]) -> tuple[CDElement, ...]:
    n = len(entries)
    while n and entries[n - 1].is_zero():
        n -= 1
    return tuple(entries[:n])


# -- constructors ----------------------------------------------------------------

_zero_cache: dict[RingDescriptor, RingElement] = {}
_one_cache: dict[RingDescriptor, RingElement] = {}


def ring_zero(ring: RingDescriptor) -> RingElement:
    cached = _zero_cache.get(ring)
    if cached is None:
        if ring.kind == "cd":
            cached = RingElement(ring, CDElement.zero(ring.field, ring.level))
        elif ring.kind == "functions":
            zero = CDElement.zero(ring.field, ring.level)
            cached = RingElement(ring, (zero,) * ring.size)
        else:
            cached = RingElement(ring, ())
        _zero_cache[ring] = cached
    return cached


def ring_one(ring: RingDescriptor) -> RingElement:
    cached = _one_cache.get(ring)
    if cached is None:
        one = CDElement.one(ring.field, ring.level)
        if ring.kind == "cd":
            cached = RingElement(ring, one)
        elif ring.kind == "functions":
            cached = RingElement(ring, (one,) * ring.size)
        else:
            cached = RingElement(ring, (one,))
        _one_cache[ring] = cached
    return cached


def ring_from_scalar(ring: RingDescriptor, value) -> RingElement:
    return ring_one(ring).scale(ring.field.raw(value))


def y_power(ring: RingDescriptor, degree: int, coeff: CDElement | None = None) -> RingElement:
    """coeff * Y**degree in a poly/quotient ring (reduced in the quotient)."""
    if ring.kind not in ("poly", "quotient"):
        raise ValueError("y_power only applies to poly/quotient rings")
    if coeff is None:
        coeff = CDElement.one(ring.field, ring.level)
    if ring.kind == "quotient" and degree >= ring.modulus:
        return ring_zero(ring)
    zero = CDElement.zero(ring.field, ring.level)
    return RingElement(ring, _trim([zero] * degree + [coeff]))


def indicator(ring: RingDescriptor, index: int, coeff: CDElement | None = None) -> RingElement:
    """The function supported at one index of a finite function ring."""
    if ring.kind != "functions":
        raise ValueError("indicator only applies to function rings")
    if coeff is None:
        coeff = CDElement.one(ring.field, ring.level)
    zero = CDElement.zero(ring.field, ring.level)
    return RingElement(ring, tuple(coeff if i == index else zero for i in range(ring.size)))


# -- named operation surface ------------------------------------------------------


def ring_add(a: RingElement, b: RingElement) -> RingElement:
    return a + b


def ring_neg(a: RingElement) -> RingElement:
    return -a


def ring_mul(a: RingElement, b: RingElement) -> RingElement:
    return a * b


def ring_eq(a: RingElement, b: RingElement) -> bool:
    return a == b


def commutator(r: RingElement, s: RingElement) -> RingElement:
    return r * s - s * r


def associator(r: RingElement, s: RingElement, t: RingElement) -> RingElement:
    return (r * s) * t - r * (s * t)


# -- canonical basis and coordinates ----------------------------------------------

BasisKey = tuple[int, int]  # (block, unit index); block = Y-degree or function index


def basis_keys(ring: RingDescriptor, y_cap: int | None = None) -> list[BasisKey]:
    blocks = ring.block_count(y_cap)
    return [(block, unit) for block in range(blocks) for unit in range(ring.unit_count)]


def basis_element(ring: RingDescriptor, key: BasisKey) -> RingElement:
    block, unit = key
    cd_unit = CDElement.unit(ring.field, ring.level, unit)
    if ring.kind == "cd":
        return RingElement(ring, cd_unit)
    if ring.kind == "functions":
        return indicator(ring, block, cd_unit)
    return y_power(ring, block, cd_unit)


def basis(ring: RingDescriptor, y_cap: int | None = None) -> list[RingElement]:
    """The canonical capped scalar basis, block-major then unit-minor."""
    if ring.kind == "poly" and y_cap is None:
        raise CapsRequiredError("polynomial ring basis needs a Y-degree cap")
    return [basis_element(ring, key) for key in basis_keys(ring, y_cap)]


def to_coords(elem: RingElement) -> dict[BasisKey, object]:
    """Sparse coordinates of an element over the canonical basis (raw scalars)."""
    ring = elem.ring
    out: dict[BasisKey, object] = {}
    if ring.kind == "cd":
        entries = [(0, elem.payload)]
    else:
        entries = list(enumerate(elem.payload))
    for block, cd in entries:
        for unit, value in enumerate(cd.coords):
            if value:
                out[(block, unit)] = value
    return out


def from_coords(ring: RingDescriptor, coords: dict[BasisKey, object]) -> RingElement:
    if not coords:
        return ring_zero(ring)
    blocks = 1 + max(block for block, _ in coords)
    zero = ring.field.zero
    rows = [[zero] * ring.unit_count for _ in range(blocks)]
    for (block, unit), value in coords.items():
        rows[block][unit] = ring.field.raw(value)
    cds = [CDElement(ring.field, ring.level, tuple(row)) for row in rows]
    if ring.kind == "cd":
        if blocks != 1:
            raise ValueError("cd coordinates admit a single block")
        return RingElement(ring, cds[0])
    if ring.kind == "functions":
        zero_cd = CDElement.zero(ring.field, ring.level)
        cds += [zero_cd] * (ring.size - len(cds))
        return RingElement(ring, tuple(cds))
    return RingElement(ring, _trim(cds))


# -- membership in commuter, nuclei, and center ------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    which: str
    certificate: tuple[RingElement, ...] | None
    within_caps: bool

    def __bool__(self):
        return self.member


def membership(r: RingElement, which: str, y_cap: int | None = None) -> MembershipResult:
    """Decide membership of r in C, N_l, N_m, N_r, N, or Z against the capped basis.

    The center test uses the reduction Z = C intersect N_l intersect N_m,
    so only two nucleus slots are enumerated.  A False result carries the
    violating basis tuple.  Verdicts on polynomial rings hold within caps.
    """
    ring = r.ring
    if which not in ("C", "N_l", "N_m", "N_r", "N", "Z"):
        raise ValueError(f"unknown membership query: {which}")
    capped = ring.kind == "poly"
    elems = basis(ring, y_cap)

    def commutes() -> MembershipResult | None:
        for s in elems:
            if commutator(r, s):
                return MembershipResult(False, which, (s,), capped)
        return None

    def nucleus(slot: str) -> MembershipResult | None:
        for s in elems:
            for t in elems:
                if slot == "l":
                    value = associator(r, s, t)
                elif slot == "m":
                    value = associator(s, r, t)
                else:
                    value = associator(s, t, r)
                if value:
                    return MembershipResult(False, which, (s, t), capped)
        return None

    checks: list[MembershipResult | None] = []
    if which == "C":
        checks.append(commutes())
    elif which == "N_l":
        checks.append(nucleus("l"))
    elif which == "N_m":
        checks.append(nucleus("m"))
    elif which == "N_r":
        checks.append(nucleus("r"))
    elif which == "N":
        checks.append(nucleus("l"))
        checks.append(nucleus("m"))
        checks.append(nucleus("r"))
    else:  # Z via the three-term reduction
        checks.append(commutes())
        checks.append(nucleus("l"))
        checks.append(nucleus("m"))
    for failed in checks:
        if failed is not None:
            return failed
    return MembershipResult(True, which, None, capped)
