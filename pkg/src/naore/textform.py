"""Canonical text form for scalars, ring elements, and Ore polynomials.

Rendering is strict and deterministic (golden tests freeze it); parsing is
whitespace-lenient and accepts terms in any order, then canonicalizes.

    scalar            3   -5/2   7
    cd element        1 + 2*e1 - 1/2*e3         (unit 0 is the bare scalar)
    poly/quotient     [1 + 2*e1]*Y^0 + [3]*Y^2
    functions         {1; 0; 2*e1}
    ore polynomial    ([1]*Y^1)*X^0 + (1)*X^2   (coefficients in parentheses)
"""

from __future__ import annotations

from fractions import Fraction

from .cayley_dickson import CDElement
from .errors import TextFormError
from .ore import OrePoly, OreRingHandle
from .rings import RingDescriptor, RingElement, ring_zero
from .scalars import ScalarField

# -- rendering -------------------------------------------------------------------


def render_scalar(field: ScalarField, raw) -> str:
    return field.render(raw)


def _join_signed(terms: list[tuple[bool, str]]) -> str:
    """terms = [(negative?, magnitude text)] -> 'a + b - c'."""
    if not terms:
        return "0"
    out = []
    for i, (negative, text) in enumerate(terms):
        if i == 0:
            out.append(f"-{text}" if negative else text)
        else:
            out.append(f" - {text}" if negative else f" + {text}")
    return "".join(out)


def render_cd(x: CDElement) -> str:
    terms = []
    for unit, value in enumerate(x.coords):
        if not value:
            continue
        negative = value < 0 if x.field.is_rational else False
        magnitude = x.field.render(-value if negative else value)
        terms.append((negative, magnitude if unit == 0 else f"{magnitude}*e{unit}"))
    return _join_signed(terms)


def render_ring_element(r: RingElement) -> str:
    ring = r.ring
    if ring.kind == "cd":
        return render_cd(r.payload)
    if ring.kind == "functions":
        return "{" + "; ".join(render_cd(entry) for entry in r.payload) + "}"
    terms = [(False, f"[{render_cd(entry)}]*Y^{d}") for d, entry in enumerate(r.payload) if not entry.is_zero()]
    return _join_signed(terms)


def render_ore_poly(f: OrePoly) -> str:
    terms = [
        (False, f"({render_ring_element(c)})*X^{i}")
        for i, c in enumerate(f.coeffs)
        if not c.is_zero()
    ]
    return _join_signed(terms)


# -- parsing ---------------------------------------------------------------------


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str):
        raise TextFormError(message, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def match(self, literal: str) -> bool:
        self.skip_ws()
        if self.text.startswith(literal, self.pos):
            self.pos += len(literal)
            return True
        return False

    def expect(self, literal: str):
        if not self.match(literal):
            self.error(f"expected {literal!r}")

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def parse_uint(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            self.error("expected a digit")
        return int(self.text[start : self.pos])

    def parse_sign(self) -> int:
        if self.match("-"):
            return -1
        self.match("+")
        return 1

    def parse_scalar(self, field: ScalarField):
        self.skip_ws()
        sign = -1 if self.match("-") else 1
        numerator = self.parse_uint()
        if self.match("/"):
            denominator = self.parse_uint()
            if denominator == 0:
                self.error("zero denominator")
            return field.raw(Fraction(sign * numerator, denominator))
        return field.raw(sign * numerator)


def _parse_cd_body(cur: _Cursor, field: ScalarField, level: int, stops: str) -> CDElement:
    coords = [field.zero] * (2**level)
    first = True
    while True:
        cur.skip_ws()
        if not first:
            if cur.peek() in stops or cur.at_end():
                break
            if cur.peek() not in "+-":
                cur.error("expected '+' or '-' between terms")
        sign = cur.parse_sign()
        value = cur.parse_scalar(field)
        if sign < 0:
            value = field.neg(value)
        unit = 0
        save = cur.pos
        if cur.match("*"):
            if cur.match("e"):
                unit = cur.parse_uint()
                if unit >= 2**level:
                    cur.error(f"unit index e{unit} out of range for level {level}")
            else:
                cur.pos = save
                cur.error("expected a unit 'e<k>' after '*'")
        coords[unit] = field.add(coords[unit], value)
        first = False
        cur.skip_ws()
        if cur.peek() in stops or cur.at_end():
            break
    return CDElement(field, level, tuple(coords))


def parse_cd(field: ScalarField, level: int, text: str) -> CDElement:
    cur = _Cursor(text)
    value = _parse_cd_body(cur, field, level, stops="")
    if not cur.at_end():
        cur.error("trailing input after element")
    return value


def _parse_ring_body(cur: _Cursor, ring: RingDescriptor, stops: str) -> RingElement:
    field = ring.field
    if ring.kind == "cd":
        return RingElement(ring, _parse_cd_body(cur, field, ring.level, stops))
    if ring.kind == "functions":
        cur.expect("{")
        entries = []
        for i in range(ring.size):
            if i:
                cur.expect(";")
            entries.append(_parse_cd_body(cur, field, ring.level, stops=";}"))
        cur.expect("}")
        return RingElement(ring, tuple(entries))
    # poly / quotient: signed sum of [cd]*Y^d  (a bare scalar sum also parses as Y^0)
    cur.skip_ws()
    if cur.peek() != "[":
        cd = _parse_cd_body(cur, field, ring.level, stops)
        return _mono(ring, 0, cd)
    acc = ring_zero(ring)
    first = True
    while True:
        cur.skip_ws()
        if not first:
            if cur.peek() in stops or cur.at_end():
                break
            if cur.peek() not in "+-":
                cur.error("expected '+' or '-' between terms")
        sign = cur.parse_sign()
        cur.expect("[")
        cd = _parse_cd_body(cur, field, ring.level, stops="]")
        cur.expect("]")
        cur.expect("*")
        cur.expect("Y^")
        d = cur.parse_uint()
        term = _mono(ring, d, -cd if sign < 0 else cd)
        acc = acc + term
        first = False
        cur.skip_ws()
        if cur.peek() in stops or cur.at_end():
            break
    return acc


def _mono(ring: RingDescriptor, degree: int, cd: CDElement) -> RingElement:
    from .rings import y_power

    if cd.is_zero():
        return ring_zero(ring)
    return y_power(ring, degree, cd)


def parse_ring_element(ring: RingDescriptor, text: str) -> RingElement:
    cur = _Cursor(text)
    value = _parse_ring_body(cur, ring, stops="")
    if not cur.at_end():
        cur.error("trailing input after element")
    return value


def parse_ore_poly(handle: OreRingHandle, text: str) -> OrePoly:
    cur = _Cursor(text)
    cur.skip_ws()
    acc = handle.zero()
    # bare "0"
    save = cur.pos
    if cur.match("0") and cur.at_end():
        return acc
    cur.pos = save
    first = True
    while True:
        cur.skip_ws()
        if not first:
            if cur.at_end():
                break
            if cur.peek() not in "+-":
                cur.error("expected '+' or '-' between terms")
        sign = cur.parse_sign()
        cur.expect("(")
        coeff = _parse_ring_body(cur, handle.ring, stops=")")
        cur.expect(")")
        cur.expect("*")
        cur.expect("X^")
        power = cur.parse_uint()
        if sign < 0:
            coeff = -coeff
        acc = acc + handle.monomial(coeff, power)
        first = False
        if cur.at_end():
            break
    return acc
