"""Additive maps on coefficient rings and the pi-operator calculus.

The catalog covers every map the analysis layer needs: identity, zero,
(weighted) formal derivative, scaling automorphisms ``Y -> q*Y``,
permutation pullbacks on finite function rings, kernel derivations
``r -> alpha(r) - r``, inner derivations ``r -> a*r - r*a``, and linear
combinations / compositions of catalog maps.  Every catalog map is
additive and scalar-linear by construction; additivity is nevertheless
covered by the test suite rather than assumed.

``pi(m, i, sigma, delta, b)`` is the sum of all ``C(m, i)`` compositions
of i copies of sigma and m-i copies of delta.  It is computed through the
memoized recursion

    pi(m, i, b) = pi(m-1, i, delta(b)) + pi(m-1, i-1, sigma(b))

with ``pi(0, 0) = id``; the explicit interleaving enumeration exists as a
reference oracle for small m and is cross-checked in debug mode.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from itertools import combinations

from .debugmode import debug_checks_enabled
from .errors import CapsRequiredError, MismatchError, UnsupportedMapError
from .linalg import nullspace
from .rings import (
    BasisKey,
    RingDescriptor,
    RingElement,
    basis,
    basis_element,
    basis_keys,
    ring_zero,
    to_coords,
)
from .scalars import Scalar

MAP_KINDS = (
    "identity",
    "zero",
    "derivative",
    "weighted_derivative",
    "scale_automorphism",
    "permutation_pullback",
    "kernel_derivation",
    "inner_derivation",
    "linear_combination",
    "composition",
)


@dataclass(frozen=True)
class AdditiveMap:
    """A descriptor-driven additive map on one coefficient ring."""

    ring: RingDescriptor
    kind: str
    q: object = None  # raw scalar for scale_automorphism
    weights: tuple | None = None  # raw weights k_1, k_2, ... (k_n multiplies Y^n)
    weight_rule: str | None = None  # "classical" means k_n = n
    permutation: tuple[int, ...] | None = None
    alpha: "AdditiveMap | None" = None
    element: RingElement | None = None
    terms: tuple | None = None  # ((raw scalar, AdditiveMap), ...)
    parts: tuple | None = None  # composition, rightmost applied first

    # -- factories -------------------------------------------------------------

    @staticmethod
    def identity(ring: RingDescriptor) -> "AdditiveMap":
        return AdditiveMap(ring, "identity")

    @staticmethod
    def zero(ring: RingDescriptor) -> "AdditiveMap":
        return AdditiveMap(ring, "zero")

    @staticmethod
    def derivative(ring: RingDescriptor) -> "AdditiveMap":
        _need_poly(ring, "derivative")
        return AdditiveMap(ring, "derivative")

    @staticmethod
    def weighted_derivative(ring: RingDescriptor, weights=None, rule: str | None = None) -> "AdditiveMap":
        _need_poly(ring, "weighted_derivative")
        if (weights is None) == (rule is None):
            raise ValueError("weighted_derivative takes either a weight list or a rule")
        if rule is not None:
            if rule != "classical":
                raise ValueError(f"unknown weight rule: {rule}")
            return AdditiveMap(ring, "weighted_derivative", weight_rule=rule)
        raw = tuple(ring.field.raw(_unwrap(w, ring.field)) for w in weights)
        if any(not w for w in raw):
            raise ValueError("derivative weights must be nonzero")
        return AdditiveMap(ring, "weighted_derivative", weights=raw)

    @staticmethod
    def scale_automorphism(ring: RingDescriptor, q) -> "AdditiveMap":
        _need_poly(ring, "scale_automorphism")
        raw = ring.field.raw(_unwrap(q, ring.field))
        if not raw:
            raise ValueError("scaling factor must be nonzero")
        return AdditiveMap(ring, "scale_automorphism", q=raw)

    @staticmethod
    def permutation_pullback(ring: RingDescriptor, permutation) -> "AdditiveMap":
        if ring.kind != "functions":
            raise UnsupportedMapError("permutation_pullback only acts on function rings")
        perm = tuple(int(i) for i in permutation)
        if sorted(perm) != list(range(ring.size)):
            raise ValueError(f"not a permutation of 0..{ring.size - 1}: {perm}")
        return AdditiveMap(ring, "permutation_pullback", permutation=perm)

    @staticmethod
    def kernel_derivation(alpha: "AdditiveMap") -> "AdditiveMap":
        return AdditiveMap(alpha.ring, "kernel_derivation", alpha=alpha)

    @staticmethod
    def inner_derivation(element: RingElement) -> "AdditiveMap":
        return AdditiveMap(element.ring, "inner_derivation", element=element)

    @staticmethod
    def linear_combination(pairs) -> "AdditiveMap":
        pairs = tuple(pairs)
        if not pairs:
            raise ValueError("linear_combination needs at least one term")
        ring = pairs[0][1].ring
        terms = []
        for coeff, mp in pairs:
            if mp.ring != ring:
                raise MismatchError("linear_combination terms act on different rings")
            terms.append((ring.field.raw(_unwrap(coeff, ring.field)), mp))
        return AdditiveMap(ring, "linear_combination", terms=tuple(terms))

    @staticmethod
    def composition(parts) -> "AdditiveMap":
        parts = tuple(parts)
        if not parts:
            raise ValueError("composition needs at least one map")
        ring = parts[0].ring
        for mp in parts:
            if mp.ring != ring:
                raise MismatchError("composition parts act on different rings")
        return AdditiveMap(ring, "composition", parts=parts)

    # -- behaviour ---------------------------------------------------------------

    def __call__(self, r: RingElement) -> RingElement:
        return apply_map(self, r)

    def is_structural_identity(self) -> bool:
        if self.kind == "identity":
            return True
        if self.kind == "scale_automorphism":
            return self.q == self.ring.field.one
        if self.kind == "permutation_pullback":
            return self.permutation == tuple(range(self.ring.size))
        if self.kind == "composition":
            return all(p.is_structural_identity() for p in self.parts)
        return False

    def is_structural_morphism(self) -> bool | None:
        """True when the constructor guarantees multiplicativity; None = unknown."""
        if self.kind in ("identity", "scale_automorphism", "permutation_pullback"):
            return True
        if self.kind == "composition":
            flags = [p.is_structural_morphism() for p in self.parts]
            return True if all(f is True for f in flags) else None
        return None

    def is_structural_derivation(self) -> bool | None:
        if self.kind == "zero":
            return True
        if self.kind == "derivative":
            return True
        if self.kind == "weighted_derivative" and self.weight_rule == "classical":
            return True
        if self.kind == "inner_derivation" and self.ring.is_associative():
            return True
        if self.kind == "kernel_derivation" and self.alpha.is_structural_identity():
            return True  # the zero map
        return None

    def is_structural_kernel_derivation(self) -> bool | None:
        """Both-sided linearity over the map's own kernel, when known by construction."""
        if self.is_structural_derivation():
            return True
        if self.kind == "weighted_derivative":
            return True  # nonzero central weights; kernel is the coefficient ring
        if self.kind == "kernel_derivation" and self.alpha.is_structural_morphism():
            return True
        return None


def _need_poly(ring: RingDescriptor, what: str):
    if ring.kind not in ("poly", "quotient"):
        raise UnsupportedMapError(f"{what} only acts on poly/quotient rings")


def _unwrap(value, field):
    if isinstance(value, Scalar):
        if value.field != field:
            raise MismatchError("scalar belongs to a different field")
        return value.value
    return value


def apply_map(m: AdditiveMap, r: RingElement) -> RingElement:
    """Exact image of r under the map; descriptor mismatch is a hard error."""
    if r.ring != m.ring:
        raise MismatchError("element does not live on the map's ring")
    kind = m.kind
    if kind == "identity":
        return r
    if kind == "zero":
        return ring_zero(m.ring)
    if kind in ("derivative", "weighted_derivative"):
        return _apply_derivative(m, r)
    if kind == "scale_automorphism":
        field = m.ring.field
        out = []
        power = field.one
        for i, entry in enumerate(r.payload):
            if i:
                power = field.mul(power, m.q)
            out.append(entry.scale(power))
        return RingElement(m.ring, _retrim(out))
    if kind == "permutation_pullback":
        return RingElement(m.ring, tuple(r.payload[m.permutation[i]] for i in range(m.ring.size)))
    if kind == "kernel_derivation":
        return apply_map(m.alpha, r) - r
    if kind == "inner_derivation":
        return m.element * r - r * m.element
    if kind == "linear_combination":
        acc = ring_zero(m.ring)
        for coeff, part in m.terms:
            acc = acc + apply_map(part, r).scale(coeff)
        return acc
    if kind == "composition":
        for part in reversed(m.parts):
            r = apply_map(part, r)
        return r
    raise ValueError(f"unknown map kind: {kind}")


def _apply_derivative(m: AdditiveMap, r: RingElement) -> RingElement:
    field = m.ring.field
    out = []
    for n in range(1, len(r.payload)):
        if m.kind == "derivative" or m.weight_rule == "classical":
            k_n = field.raw(n)
        else:
            if n - 1 >= len(m.weights):
                raise ValueError(f"weight list exhausted at Y-degree {n}")
            k_n = m.weights[n - 1]
        out.append(r.payload[n].scale(k_n))
    return RingElement(m.ring, _retrim(out))


def _retrim(entries):
    n = len(entries)
    while n and entries[n - 1].is_zero():
        n -= 1
    return tuple(entries[:n])


# -- the pi calculus ------------------------------------------------------------------


class PiTable:
    """Memoized pi values keyed by (m, i, basis monomial).

    Insertion is lock-protected so concurrent lookups stay safe; results are
    deterministic regardless of interleaving because every entry is a pure
    function of its key.
    """

    def __init__(self, sigma: AdditiveMap, delta: AdditiveMap):
        if sigma.ring != delta.ring:
            raise MismatchError("sigma and delta act on different rings")
        self.ring = sigma.ring
        self.sigma = sigma
        self.delta = delta
        self._cache: dict[tuple[int, int, BasisKey], RingElement] = {}
        self._lock = threading.Lock()

    def pi(self, m: int, i: int, b: RingElement) -> RingElement:
        if m < 0:
            raise ValueError("pi needs m >= 0")
        if i < 0 or i > m:
            return ring_zero(self.ring)
        if m == 0 or b.is_zero():
            return b
        coords = to_coords(b)
        one = self.ring.field.one
        if len(coords) == 1:
            (key, value), = coords.items()
            cached = self._pi_monomial(m, i, key)
            return cached if value == one else cached.scale(value)
        acc = ring_zero(self.ring)
        for key, value in sorted(coords.items()):
            acc = acc + self._pi_monomial(m, i, key).scale(value)
        return acc

    def _pi_monomial(self, m: int, i: int, key: BasisKey) -> RingElement:
        cached = self._cache.get((m, i, key))
        if cached is not None:
            return cached
        mono = basis_element(self.ring, key)
        if m == 0:
            result = mono
        else:
            result = self.pi(m - 1, i, apply_map(self.delta, mono)) + self.pi(
                m - 1, i - 1, apply_map(self.sigma, mono)
            )
        if debug_checks_enabled() and m <= 5:
            oracle = pi_by_enumeration(m, i, self.sigma, self.delta, mono)
            if oracle != result:
                raise AssertionError(f"pi recursion disagrees with enumeration at {(m, i, key)}")
        with self._lock:
            self._cache[(m, i, key)] = result
        return result


def pi(m: int, i: int, sigma: AdditiveMap, delta: AdditiveMap, b: RingElement, table: PiTable | None = None) -> RingElement:
    if table is None:
        table = PiTable(sigma, delta)
    return table.pi(m, i, b)


def pi_by_enumeration(m: int, i: int, sigma: AdditiveMap, delta: AdditiveMap, b: RingElement) -> RingElement:
    """Reference path: sum over all C(m, i) interleavings (exponential; small m only)."""
    if i < 0 or i > m:
        return ring_zero(sigma.ring)
    acc = ring_zero(sigma.ring)
    for sigma_positions in combinations(range(m), i):
        positions = set(sigma_positions)
        value = b
        for step in range(m):
            value = apply_map(sigma if step in positions else delta, value)
        acc = acc + value
    return acc


# -- classifier predicates ---------------------------------------------------------


@dataclass(frozen=True)
class ClassifierResult:
    holds: bool
    certificate: tuple[RingElement, ...] | None
    within_caps: bool

    def __bool__(self):
        return self.holds


def _capped_basis(ring: RingDescriptor, y_cap: int | None) -> list[RingElement]:
    if ring.kind == "poly" and y_cap is None:
        raise CapsRequiredError("classifier on a polynomial ring needs a Y-degree cap")
    return basis(ring, y_cap)


def is_homomorphism(sigma: AdditiveMap, y_cap: int | None = None) -> ClassifierResult:
    """sigma(ab) == sigma(a) sigma(b) on all capped basis pairs (enough by bilinearity)."""
    elems = _capped_basis(sigma.ring, y_cap)
    capped = sigma.ring.kind == "poly"
    for a in elems:
        sa = apply_map(sigma, a)
        for b in elems:
            if apply_map(sigma, a * b) != sa * apply_map(sigma, b):
                return ClassifierResult(False, (a, b), capped)
    return ClassifierResult(True, None, capped)


def is_sigma_derivation(delta: AdditiveMap, sigma: AdditiveMap, y_cap: int | None = None) -> ClassifierResult:
    """delta(ab) == sigma(a) delta(b) + delta(a) b on all capped basis pairs."""
    if delta.ring != sigma.ring:
        raise MismatchError("delta and sigma act on different rings")
    elems = _capped_basis(delta.ring, y_cap)
    capped = delta.ring.kind == "poly"
    for a in elems:
        sa = apply_map(sigma, a)
        da = apply_map(delta, a)
        for b in elems:
            if apply_map(delta, a * b) != sa * apply_map(delta, b) + da * b:
                return ClassifierResult(False, (a, b), capped)
    return ClassifierResult(True, None, capped)


def is_derivation(delta: AdditiveMap, y_cap: int | None = None) -> ClassifierResult:
    return is_sigma_derivation(delta, AdditiveMap.identity(delta.ring), y_cap)


def derivation_status(delta: AdditiveMap, y_cap: int | None = None) -> tuple[bool | None, ClassifierResult]:
    """(certified flag, capped classifier result).

    True/False are global certificates (constructor guarantee or an exact
    violating pair); None means the capped check passed but nothing beyond
    the cap is claimed.
    """
    result = is_derivation(delta, y_cap)
    structural = delta.is_structural_derivation()
    if structural is True:
        return True, result
    if not result.holds:
        return False, result  # the violating pair is a global counterexample
    return None, result


# -- kernels and kernel-derivation laws ----------------------------------------------


def sigma_delta_constants(sigma: AdditiveMap, delta: AdditiveMap, y_cap: int | None = None) -> list[RingElement]:
    """Capped basis of {a : sigma(a) = a and delta(a) = 0} by an exact nullspace."""
    ring = sigma.ring
    keys = basis_keys(ring, y_cap if ring.kind == "poly" else None)
    if ring.kind == "poly" and y_cap is None:
        raise CapsRequiredError("kernel computation on a polynomial ring needs a Y-degree cap")
    columns = []
    for key in keys:
        mono = basis_element(ring, key)
        image: dict = {}
        if not sigma.is_structural_identity():
            for ckey, value in to_coords(apply_map(sigma, mono) - mono).items():
                image[("s", ckey)] = value
        for ckey, value in to_coords(apply_map(delta, mono)).items():
            image[("d", ckey)] = value
        columns.append(image)
    rows_by_key: dict = {}
    for j, image in enumerate(columns):
        for ckey, value in image.items():
            rows_by_key.setdefault(ckey, {})[j] = value
    rows = [rows_by_key[k] for k in sorted(rows_by_key)]
    out = []
    for vec in nullspace(rows, len(keys), ring.field):
        elem = ring_zero(ring)
        for j, value in sorted(vec.items()):
            elem = elem + basis_element(ring, keys[j]).scale(value)
        out.append(elem)
    return out


@dataclass(frozen=True)
class KernelLinearityResult:
    kernel: tuple[RingElement, ...]
    right_linear: bool
    left_linear: bool
    right_certificate: tuple[RingElement, RingElement] | None
    left_certificate: tuple[RingElement, RingElement] | None
    within_caps: bool

    @property
    def is_kernel_derivation(self) -> bool:
        return self.right_linear or self.left_linear


def kernel_linearity_check(delta: AdditiveMap, sigma: AdditiveMap, y_cap: int | None = None) -> KernelLinearityResult:
    """Which sidedness of linearity over R_delta^sigma holds for sigma and delta."""
    ring = delta.ring
    kernel = sigma_delta_constants(sigma, delta, y_cap)
    elems = _capped_basis(ring, y_cap)
    capped = ring.kind == "poly"
    right_cert = left_cert = None
    for r in elems:
        dr = apply_map(delta, r)
        sr = apply_map(sigma, r)
        for s in kernel:
            if right_cert is None:
                rs = r * s
                if apply_map(delta, rs) != dr * s or apply_map(sigma, rs) != sr * s:
                    right_cert = (r, s)
            if left_cert is None:
                sl = s * r
                if apply_map(delta, sl) != s * dr or apply_map(sigma, sl) != s * sr:
                    left_cert = (s, r)
        if right_cert and left_cert:
            break
    return KernelLinearityResult(
        kernel=tuple(kernel),
        right_linear=right_cert is None,
        left_linear=left_cert is None,
        right_certificate=right_cert,
        left_certificate=left_cert,
        within_caps=capped,
    )


def kernel_derivation_identity_check(alpha: AdditiveMap, y_cap: int | None = None) -> bool:
    """On associative coefficients, the Leibniz defect of delta_alpha factors:

        delta(rs) - delta(r) s - r delta(s) == delta(r) delta(s)

    for delta = alpha - id, checked on all capped basis pairs.
    """
    ring = alpha.ring
    if not ring.is_associative():
        raise UnsupportedMapError("the defect identity is only checked over associative coefficients")
    delta = AdditiveMap.kernel_derivation(alpha)
    elems = _capped_basis(ring, y_cap)
    for r in elems:
        dr = apply_map(delta, r)
        for s in elems:
            ds = apply_map(delta, s)
            lhs = apply_map(delta, r * s) - dr * s - r * ds
            if lhs != dr * ds:
                return False
    return True
