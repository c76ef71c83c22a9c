"""Capped structure analysis: centers, ideals, and simplicity verdicts.

Every unbounded quantifier ("all r", "every ideal") is finitized through a
:class:`~naore.rings.CapProfile`; each verdict carries its caps and is graded
three ways:

* ``holds-certified``   -- backed by a structured criterion or a complete
  finite enumeration;
* ``fails-with-witness`` -- carries a machine-re-checkable witness;
* ``inconclusive-within-caps`` -- nothing beyond the evidence bound is claimed.

Grades are never conflated: enlarging caps may resolve an inconclusive
verdict but cannot flip a certified one.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import AnalysisExclusionError, UnsupportedMapError
from .linalg import Echelon, express_in_span, nullspace
from .maps import AdditiveMap, apply_map
from .ore import (
    OrePoly,
    OreRingHandle,
    degree,
    euclid_divide,
    is_monic,
    ore_mul,
)
from .rings import (
    BasisKey,
    CapProfile,
    RingDescriptor,
    RingElement,
    basis,
    from_coords,
    membership,
    ring_one,
    ring_zero,
    to_coords,
    y_power,
)


class Outcome(Enum):
    HOLDS = "holds-certified"
    FAILS = "fails-with-witness"
    INCONCLUSIVE = "inconclusive-within-caps"


@dataclass(frozen=True)
class Verdict:
    outcome: Outcome
    criterion: str
    caps: CapProfile
    witness: object = None
    detail: str = ""
    cross_checks: tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    @property
    def fails(self) -> bool:
        return self.outcome is Outcome.FAILS


@dataclass(frozen=True)
class RingIdealWitness:
    """A capped basis of a proper nonzero sigma-delta-invariant ideal of R."""

    ring: RingDescriptor
    rows: tuple[RingElement, ...]
    description: str


# -- vectorization -----------------------------------------------------------------

OreKey = tuple[int, int, int]  # (X-degree, coefficient block, unit index)


def ore_to_vec(f: OrePoly) -> dict[OreKey, object]:
    out: dict[OreKey, object] = {}
    for i, c in enumerate(f.coeffs):
        for (block, unit), value in to_coords(c).items():
            out[(i, block, unit)] = value
    return out


def ore_from_vec(handle: OreRingHandle, vec: dict[OreKey, object]) -> OrePoly:
    if not vec:
        return handle.zero()
    by_degree: dict[int, dict[BasisKey, object]] = {}
    for (i, block, unit), value in vec.items():
        by_degree.setdefault(i, {})[(block, unit)] = value
    top = max(by_degree)
    coeffs = [
        from_coords(handle.ring, by_degree.get(i, {})) if i in by_degree else ring_zero(handle.ring)
        for i in range(top + 1)
    ]
    return handle.poly(coeffs)


def _ore_exceeds_caps(f: OrePoly, caps: CapProfile) -> bool:
    if len(f.coeffs) - 1 > caps.x_degree:
        return True
    if f.handle.ring.kind == "poly":
        return any(len(c.payload) - 1 > caps.y_degree for c in f.coeffs)
    return False


# -- linear refinement -------------------------------------------------------------


def _refine(space: list, constraint, to_vec, field) -> list:
    """Cut a solution space down to the kernel of one linear constraint."""
    if not space:
        return space
    images = [to_vec(constraint(v)) for v in space]
    if not any(images):
        return space
    rows_by_key: dict = {}
    for j, image in enumerate(images):
        for key, value in image.items():
            rows_by_key.setdefault(key, {})[j] = value
    rows = [rows_by_key[k] for k in sorted(rows_by_key)]
    combos = nullspace(rows, len(space), field)
    new_space = []
    for combo in combos:
        acc = None
        for j, value in sorted(combo.items()):
            term = space[j].scale(value)
            acc = term if acc is None else acc + term
        if acc is not None:
            new_space.append(acc)
    return new_space


def _canonical_space(handle: OreRingHandle, space: list[OrePoly]) -> list[OrePoly]:
    ech = Echelon(handle.ring.field)
    for v in space:
        ech.insert(ore_to_vec(v))
    return [ore_from_vec(handle, vec) for vec in ech.vectors()]


# -- center of the Ore extension -----------------------------------------------------


def _require_center_hypotheses(handle: OreRingHandle, caps: CapProfile):
    if not handle.sigma_is_identity:
        raise UnsupportedMapError("center computation requires sigma = identity")
    y_cap = caps.y_degree if handle.ring.kind == "poly" else None
    flag, _ = handle.kernel_derivation_flag(y_cap)
    if flag is False:
        raise UnsupportedMapError("center computation requires delta linear over its kernel")


_center_cache: dict = {}


def center_basis(handle: OreRingHandle, caps: CapProfile) -> list[OrePoly]:
    """Capped basis of the center of R[X; id, delta] by one exact linear solve.

    The center of a differential polynomial ring over a kernel derivation is
    cut out by three linear conditions on c = sum c_i X^i:

      (i)   c commutes with X        (equivalently delta(c_i) = 0),
      (ii)  c commutes with every r in the capped coefficient basis,
      (iii) c associates with all capped basis pairs in all three slots.

    The solution space is refined constraint by constraint and returned in
    canonical echelon form, flagged "within caps" by the caller's profile.
    Results are memoized per (handle, caps): the computation is pure.
    """
    cached = _center_cache.get((handle, caps))
    if cached is not None:
        return list(cached)
    result = _center_basis_uncached(handle, caps)
    _center_cache[(handle, caps)] = tuple(result)
    return result


def _center_basis_uncached(handle: OreRingHandle, caps: CapProfile) -> list[OrePoly]:
    _require_center_hypotheses(handle, caps)
    ring = handle.ring
    field = ring.field
    y_cap = caps.y_degree if ring.kind == "poly" else None
    coeff_basis = basis(ring, y_cap)
    space = [handle.monomial(b, i) for i in range(caps.x_degree + 1) for b in coeff_basis]

    x = handle.x()
    space = _refine(space, lambda c: ore_mul(c, x) - ore_mul(x, c), ore_to_vec, field)
    embedded = [handle.embed(r) for r in coeff_basis]
    for r in embedded:
        space = _refine(space, lambda c, r=r: ore_mul(c, r) - ore_mul(r, c), ore_to_vec, field)
        if not space:
            return []
    for r in embedded:
        for s in embedded:
            rs = ore_mul(r, s)
            space = _refine(
                space, lambda c, r=r, s=s, rs=rs: ore_mul(ore_mul(c, r), s) - ore_mul(c, rs), ore_to_vec, field
            )
            space = _refine(
                space, lambda c, r=r, s=s: ore_mul(ore_mul(r, c), s) - ore_mul(r, ore_mul(c, s)), ore_to_vec, field
            )
            space = _refine(
                space, lambda c, r=r, s=s, rs=rs: ore_mul(rs, c) - ore_mul(r, ore_mul(s, c)), ore_to_vec, field
            )
            if not space:
                return []
    return _canonical_space(handle, space)


def central_conditions(handle: OreRingHandle, f: OrePoly, caps: CapProfile) -> bool:
    """Re-check the three center conditions for one element against capped bases."""
    ring = handle.ring
    y_cap = caps.y_degree if ring.kind == "poly" else None
    x = handle.x()
    if ore_mul(f, x) != ore_mul(x, f):
        return False
    embedded = [handle.embed(r) for r in basis(ring, y_cap)]
    for r in embedded:
        if ore_mul(f, r) != ore_mul(r, f):
            return False
    for r in embedded:
        for s in embedded:
            rs = ore_mul(r, s)
            if ore_mul(ore_mul(f, r), s) != ore_mul(f, rs):
                return False
            if ore_mul(ore_mul(r, f), s) != ore_mul(r, ore_mul(f, s)):
                return False
            if ore_mul(rs, f) != ore_mul(r, ore_mul(s, f)):
                return False
    return True


def minimal_monic_central(handle: OreRingHandle, caps: CapProfile) -> Verdict:
    """Least-degree non-constant monic element of the capped center, if any.

    Falls back to the provisional answer b = 1 (inconclusive) when the capped
    center contains no non-constant polynomial at all, which is the expected
    outcome on simple rings.
    """
    space = center_basis(handle, caps)
    field = handle.ring.field
    ech = Echelon(field, descending=True)
    for v in space:
        ech.insert(ore_to_vec(v))
    rows = [(pivot[0], ore_from_vec(handle, dict(row))) for pivot, row in ech.rows]
    degrees = sorted({d for d, _ in rows if d >= 1})
    one_coords = to_coords(ring_one(handle.ring))
    for d in degrees:
        level_rows = [poly for deg, poly in rows if deg == d]
        leads = [to_coords(poly.coeffs[d]) for poly in level_rows]
        combo = express_in_span(leads, one_coords, field)
        if combo is None:
            continue
        b = None
        for coeff, poly in zip(combo, level_rows):
            if coeff:
                term = poly.scale(coeff)
                b = term if b is None else b + term
        if b is not None and is_monic(b):
            return Verdict(
                Outcome.HOLDS,
                "center_minimal_monic",
                caps,
                witness=b,
                detail=f"monic central element of X-degree {d} within caps",
            )
    return Verdict(
        Outcome.INCONCLUSIVE,
        "center_minimal_monic",
        caps,
        witness=handle.one(),
        detail="no non-constant central element within caps; provisional answer 1",
    )


def _is_p_power(n: int, p: int) -> bool:
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def char_p_shape_check(b: OrePoly, p: int, caps: CapProfile) -> bool:
    """Positive-characteristic exponent law for a monic central element.

    Every exponent carrying a nonzero coefficient must be 0 or a power of p,
    the coefficients at p-power exponents must be delta-killed and central in
    R, and the induced operator identity

        sum_i b_i delta^(p^i)  =  (r -> c r - r c)      with c = b(0)

    must hold on the capped coefficient basis.  Constant b passes vacuously.
    """
    handle = b.handle
    if b.is_zero() or degree(b) == 0:
        return True
    ring = handle.ring
    y_cap = caps.y_degree if ring.kind == "poly" else None
    powers: list[tuple[int, RingElement]] = []
    for i, coeff in enumerate(b.coeffs):
        if coeff.is_zero() or i == 0:
            continue
        if not _is_p_power(i, p):
            return False
        powers.append((i, coeff))
    for _, coeff in powers:
        if not apply_map(handle.delta, coeff).is_zero():
            return False
        if not membership(coeff, "Z", y_cap):
            return False
    c = b.coeff(0)
    for r in basis(ring, y_cap):
        acc = ring_zero(ring)
        image = r
        last = 0
        for exponent, coeff in powers:
            for _ in range(exponent - last):
                image = apply_map(handle.delta, image)
            last = exponent
            acc = acc + coeff * image
        if acc != c * r - r * c:
            return False
    return True


# -- ideals of the Ore extension -------------------------------------------------------


class IdealBasis:
    """Echelonized capped spanning set of a two-sided ideal of S.

    Pivots strictly increase in (X-degree, coefficient-basis index) order.
    ``saturated`` records whether a full closure round added nothing;
    ``overflowed`` records that some closure product left the caps and was
    discarded (so the capped span may undershoot the true ideal).
    """

    def __init__(self, handle: OreRingHandle, caps: CapProfile):
        self.handle = handle
        self.caps = caps
        self._echelon = Echelon(handle.ring.field)
        self.saturated = False
        self.overflowed = False
        self.rounds_used = 0

    def insert(self, f: OrePoly) -> bool:
        if f.is_zero():
            return False
        if _ore_exceeds_caps(f, self.caps):
            self.overflowed = True
            return False
        return self._echelon.insert(ore_to_vec(f))

    @property
    def rows(self) -> list[OrePoly]:
        return [ore_from_vec(self.handle, vec) for vec in self._echelon.vectors()]

    def contains(self, f: OrePoly) -> bool:
        return self._echelon.contains(ore_to_vec(f))

    def contains_one(self) -> bool:
        return self.contains(self.handle.one())

    def __len__(self):
        return len(self._echelon)


def ideal_saturate(handle: OreRingHandle, generators, caps: CapProfile) -> IdealBasis:
    """Close the span of the generators under multiplication within caps.

    One round multiplies every current basis row on both sides by X and by
    every capped coefficient-basis element (enough, since X sits in the
    middle and right nucleus and multipliers split degreewise).  Products
    leaving the caps are discarded and recorded, never raised.
    """
    out = IdealBasis(handle, caps)
    for g in generators:
        out.insert(g)
    ring = handle.ring
    y_cap = caps.y_degree if ring.kind == "poly" else None
    multipliers = [handle.embed(r) for r in basis(ring, y_cap)]
    x = handle.x()
    for round_index in range(caps.rounds):
        grew = False
        for f in out.rows:
            images = [ore_mul(x, f), ore_mul(f, x)]
            for r in multipliers:
                images.append(ore_mul(r, f))
                images.append(ore_mul(f, r))
            for image in images:
                grew = out.insert(image) or grew
        out.rounds_used = round_index + 1
        if not grew:
            out.saturated = True
            break
    return out


def minimal_monic_generator(ideal: IdealBasis) -> Verdict:
    """Monic least-degree generator of a saturated capped ideal, fully re-checked.

    Succeeds only when ring-one is an exact combination of the minimal-degree
    leading coefficients, the resulting monic element passes all center
    conditions, and every basis row leaves remainder zero under division.
    """
    handle = ideal.handle
    caps = ideal.caps
    if not ideal.saturated:
        return Verdict(
            Outcome.INCONCLUSIVE, "ideal_monic_generator", caps, detail="saturation hit the round limit"
        )
    rows = ideal.rows
    if not rows:
        return Verdict(Outcome.INCONCLUSIVE, "ideal_monic_generator", caps, detail="empty capped ideal")
    field = handle.ring.field
    ech = Echelon(field, descending=True)
    for v in rows:
        ech.insert(ore_to_vec(v))
    graded = [(pivot[0], ore_from_vec(handle, dict(row))) for pivot, row in ech.rows]
    m = min(d for d, _ in graded)
    level_rows = [poly for d, poly in graded if d == m]
    leads = [to_coords(poly.coeffs[m]) for poly in level_rows]
    combo = express_in_span(leads, to_coords(ring_one(handle.ring)), field)
    if combo is None:
        return Verdict(
            Outcome.INCONCLUSIVE,
            "ideal_monic_generator",
            caps,
            detail="ring one is not in the capped span of minimal-degree leading coefficients",
        )
    generator = None
    for coeff, poly in zip(combo, level_rows):
        if coeff:
            term = poly.scale(coeff)
            generator = term if generator is None else generator + term
    if generator is None or not is_monic(generator):
        return Verdict(Outcome.INCONCLUSIVE, "ideal_monic_generator", caps, detail="no monic combination found")
    if not central_conditions(handle, generator, caps):
        return Verdict(
            Outcome.INCONCLUSIVE,
            "ideal_monic_generator",
            caps,
            witness=generator,
            detail="minimal monic element fails the center conditions within caps",
        )
    for row in rows:
        _, remainder = euclid_divide(row, generator)
        if not remainder.is_zero():
            return Verdict(
                Outcome.INCONCLUSIVE,
                "ideal_monic_generator",
                caps,
                witness=generator,
                detail="a basis row does not reduce to zero against the generator",
            )
    return Verdict(
        Outcome.HOLDS,
        "ideal_monic_generator",
        caps,
        witness=generator,
        detail=f"monic central generator of X-degree {m}; all rows reduce to zero",
    )


# -- invariant ideals of the coefficient ring -------------------------------------------


def invariant_ideal_closure(
    ring: RingDescriptor,
    sigma: AdditiveMap,
    delta: AdditiveMap,
    seeds,
    y_cap: int | None,
    rounds: int = 12,
):
    """Close seeds under two-sided multiplication, sigma, and delta (capped).

    Returns (rows, saturated, overflowed).  On finite-dimensional rings no
    product can overflow, so a saturated closure is a genuine invariant ideal.
    """
    field = ring.field
    ech = Echelon(field)
    overflowed = False

    def exceeds(v: RingElement) -> bool:
        return ring.kind == "poly" and len(v.payload) - 1 > y_cap

    def insert(v: RingElement) -> bool:
        nonlocal overflowed
        if v.is_zero():
            return False
        if exceeds(v):
            overflowed = True
            return False
        return ech.insert(to_coords(v))

    for seed in seeds:
        insert(seed)
    multipliers = basis(ring, y_cap)
    saturated = False
    for _ in range(rounds):
        grew = False
        for vec in ech.vectors():
            v = from_coords(ring, vec)
            images = [apply_map(sigma, v), apply_map(delta, v)]
            for r in multipliers:
                images.append(r * v)
                images.append(v * r)
            for image in images:
                grew = insert(image) or grew
        if not grew:
            saturated = True
            break
    rows = [from_coords(ring, vec) for vec in ech.vectors()]
    return rows, saturated, overflowed


def _coefficient_ring_certified_simple(ring: RingDescriptor) -> bool | None:
    """Simplicity of the Cayley-Dickson coefficient algebra, where certified.

    Over the rationals the norm form is a sum of squares, so x * conj(x) is a
    nonzero scalar for x != 0 and the ideal generated by any nonzero element
    contains 1; taken through level 3 where the composition law also holds.
    Prime-field levels above 0 can split and are left undecided here.
    """
    if ring.field.is_rational and ring.level <= 3:
        return True
    if not ring.field.is_rational and ring.level == 0:
        return True
    return None


def _lattice_admissible(ring: RingDescriptor) -> bool:
    return _coefficient_ring_certified_simple(
        RingDescriptor(ring.field, "cd", ring.level)
    ) is True


def _finite_lattice_witness(handle: OreRingHandle) -> RingIdealWitness | None:
    """First proper nonzero sigma-delta-invariant candidate ideal, if any.

    Candidates exhaust the ideal lattice when the coefficient algebra divides
    (truncated rings: the chain (Y^j); function rings: index-subset ideals).
    """
    ring = handle.ring
    field = ring.field
    sigma, delta = handle.sigma, handle.delta
    candidates: list[tuple[str, list[RingElement]]] = []
    if ring.kind == "quotient":
        for j in range(1, ring.modulus):
            rows = [b for b in basis(ring) if b.y_degree() >= j]
            candidates.append((f"(Y^{j})", rows))
    elif ring.kind == "functions":
        for mask in range(1, 2**ring.size - 1):
            subset = [i for i in range(ring.size) if mask & (1 << i)]
            rows = [b for b in basis(ring) if to_coords(b) and next(iter(to_coords(b)))[0] in subset]
            candidates.append((f"functions supported on {subset}", rows))
    for label, rows in candidates:
        ech = Echelon(field)
        for row in rows:
            ech.insert(to_coords(row))
        invariant = True
        for row in rows:
            if not ech.contains(to_coords(apply_map(sigma, row))):
                invariant = False
                break
            if not ech.contains(to_coords(apply_map(delta, row))):
                invariant = False
                break
        if invariant:
            return RingIdealWitness(ring, tuple(rows), label)
    return None


# -- structured families ---------------------------------------------------------------


def _weyl_family(handle: OreRingHandle) -> str | None:
    """'classical' for the weighted-derivative family with rule k_n = n, else None."""
    if handle.ring.kind != "poly" or not handle.sigma_is_identity:
        return None
    d = handle.delta
    if d.kind == "derivative" or (d.kind == "weighted_derivative" and d.weight_rule == "classical"):
        return "classical"
    if d.kind == "weighted_derivative":
        return "explicit"
    return None


def _quantum_family(handle: OreRingHandle):
    """The scaling factor q for delta = (Y -> qY pullback) - id on a polynomial ring."""
    if handle.ring.kind != "poly" or not handle.sigma_is_identity:
        return None
    d = handle.delta
    if d.kind == "kernel_derivation" and d.alpha.kind == "scale_automorphism":
        return d.alpha.q
    return None


def _dynamics_family(handle: OreRingHandle):
    if handle.ring.kind != "functions" or not handle.sigma_is_identity:
        return None
    d = handle.delta
    if d.kind == "kernel_derivation" and d.alpha.kind == "permutation_pullback":
        return d.alpha.permutation
    return None


def _root_of_unity_order(field, q) -> int | None:
    """Multiplicative order of q, or None when q is not a root of unity.

    The only rational roots of unity are 1 and -1; over F_p the order is
    computed from the divisors of p - 1.
    """
    if field.is_rational:
        if q == 1:
            return 1
        if q == -1:
            return 2
        return None
    p = field.p
    q = q % p
    order = 1
    value = q
    while value != 1:
        value = value * q % p
        order += 1
        if order > p:  # unreachable for prime p; guards against bad input
            raise AssertionError("order computation failed")
    return order


def _permutation_orbits(perm: tuple[int, ...]) -> list[list[int]]:
    seen = [False] * len(perm)
    orbits = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        orbit = []
        i = start
        while not seen[i]:
            seen[i] = True
            orbit.append(i)
            i = perm[i]
        orbits.append(sorted(orbit))
    return orbits


def _validated_ring_witness(handle: OreRingHandle, seeds, caps: CapProfile, description: str) -> RingIdealWitness:
    """Build a capped invariant-ideal witness and mechanically re-check it."""
    ring = handle.ring
    y_cap = caps.y_degree if ring.kind == "poly" else None
    rows, saturated, _ = invariant_ideal_closure(ring, handle.sigma, handle.delta, seeds, y_cap, caps.rounds)
    ech = Echelon(ring.field)
    for row in rows:
        ech.insert(to_coords(row))
    if ech.contains(to_coords(ring_one(ring))):
        raise AssertionError(f"witness ideal {description} contains ring one within caps")
    for row in rows:
        image = apply_map(handle.delta, row)
        if not (image.is_zero() or ech.contains(to_coords(image))):
            raise AssertionError(f"witness ideal {description} is not delta-invariant within caps")
    return RingIdealWitness(ring, tuple(rows), description)


def delta_simplicity_probe(handle: OreRingHandle, caps: CapProfile) -> Verdict:
    """Three-stage sigma-delta-simplicity decision for the coefficient ring.

    Stage 1 applies the structured criteria for the shipped families
    (weighted-derivative polynomial rings, scaling deformations, finite
    dynamical function rings).  Stage 2 enumerates the full invariant-ideal
    lattice of finite-dimensional coefficient rings.  Stage 3 returns an
    inconclusive verdict bounded by the caps.
    """
    ring = handle.ring
    if ring.kind == "functions" and ring.level >= 4:
        raise AnalysisExclusionError(
            "function rings over level-4+ coefficients are excluded from simplicity analysis "
            "(zero divisors invalidate the norm argument)"
        )
    char = ring.field.characteristic

    family = _weyl_family(handle)
    if family == "classical":
        base_simple = _coefficient_ring_certified_simple(RingDescriptor(ring.field, "cd", ring.level))
        if char == 0 and base_simple:
            return Verdict(
                Outcome.HOLDS,
                "weyl_weighted_derivative",
                caps,
                detail="classical weights n are nonzero central scalars in characteristic 0",
            )
        if char > 0:
            witness = _validated_ring_witness(
                handle, [y_power(ring, char)], caps, f"ideal generated by Y^{char}"
            )
            return Verdict(
                Outcome.FAILS,
                "weyl_char_p_derivative",
                caps,
                witness=witness,
                detail=f"the derivative kills Y^{char} in characteristic {char}",
            )

    q = _quantum_family(handle)
    if q is not None:
        order = _root_of_unity_order(ring.field, q)
        if order is not None:
            witness = _validated_ring_witness(handle, [y_power(ring, order)], caps, f"ideal generated by Y^{order}")
            return Verdict(
                Outcome.FAILS,
                "quantum_root_of_unity",
                caps,
                witness=witness,
                detail=f"q has multiplicative order {order}",
            )
        base_simple = _coefficient_ring_certified_simple(RingDescriptor(ring.field, "cd", ring.level))
        if base_simple:
            return Verdict(
                Outcome.HOLDS,
                "quantum_not_root_of_unity",
                caps,
                detail="the scaling factor is not a root of unity",
            )

    perm = _dynamics_family(handle)
    if perm is not None:
        orbits = _permutation_orbits(perm)
        if len(orbits) > 1:
            from .rings import indicator

            orbit = orbits[0]
            seeds = [indicator(ring, i) for i in orbit]
            witness = _validated_ring_witness(handle, seeds, caps, f"functions supported on orbit {orbit}")
            return Verdict(
                Outcome.FAILS,
                "dynamics_multiple_orbits",
                caps,
                witness=witness,
                detail=f"the permutation has {len(orbits)} orbits",
            )
        if _lattice_admissible(ring):
            lattice = _finite_lattice_witness(handle)
            if lattice is not None:  # cannot happen for a single cycle
                return Verdict(Outcome.FAILS, "finite_invariant_ideal", caps, witness=lattice)
            return Verdict(
                Outcome.HOLDS,
                "dynamics_single_cycle",
                caps,
                detail="single orbit; exhaustive index-subset ideal enumeration found no invariant ideal",
                cross_checks=("finite_ideal_lattice",),
            )

    if ring.is_finite_dimensional:
        witness = _finite_lattice_witness(handle)
        if witness is not None:
            return Verdict(Outcome.FAILS, "finite_invariant_ideal", caps, witness=witness)
        if ring.kind in ("quotient", "functions") and _lattice_admissible(ring):
            return Verdict(
                Outcome.HOLDS,
                "finite_ideal_lattice",
                caps,
                detail="no proper nonzero invariant ideal in the complete finite lattice",
            )
        if ring.kind == "cd" and _coefficient_ring_certified_simple(ring):
            return Verdict(
                Outcome.HOLDS,
                "finite_ideal_lattice",
                caps,
                detail="the coefficient algebra has no proper nonzero ideals",
            )

    return Verdict(
        Outcome.INCONCLUSIVE,
        "capped_evidence",
        caps,
        detail="no structured criterion applies and the ring is not finite-dimensional",
    )


# -- the lifted witness of non-simplicity ------------------------------------------------


def lift_invariant_ideal(handle: OreRingHandle, witness: RingIdealWitness, caps: CapProfile) -> IdealBasis:
    """Lift a sigma-delta-invariant ideal J of R to the capped ideal sum J X^i of S.

    The lift is re-validated: closed under both-sided multiplication by X and
    by every capped coefficient-basis element (within caps), and it excludes
    ring one.
    """
    out = IdealBasis(handle, caps)
    for j in witness.rows:
        for i in range(caps.x_degree + 1):
            out.insert(handle.monomial(j, i))
    y_cap = caps.y_degree if handle.ring.kind == "poly" else None
    multipliers = [handle.embed(r) for r in basis(handle.ring, y_cap)]
    x = handle.x()
    for f in out.rows:
        images = [ore_mul(x, f), ore_mul(f, x)]
        for r in multipliers:
            images.append(ore_mul(r, f))
            images.append(ore_mul(f, r))
        for image in images:
            if _ore_exceeds_caps(image, caps):
                continue
            if not out.contains(image):
                raise AssertionError("lifted ideal is not multiplicatively closed within caps")
    if out.contains_one():
        raise AssertionError("lifted ideal contains ring one")
    return out


# -- simplicity --------------------------------------------------------------------------


def simplicity_verdict(handle: OreRingHandle, caps: CapProfile) -> Verdict:
    """Simplicity decision tree for differential polynomial rings (sigma = id).

    Order: a failed delta-simplicity probe refutes simplicity with a lifted
    ideal witness; a non-constant monic central element refutes it with the
    principal ideal it generates; otherwise the certified simple routes are
    tried (associative coefficients with a certified non-derivation;
    commutative characteristic-0 coefficients with a certified nonzero
    derivation; the structured families).  What remains is inconclusive,
    graded "simple up to evidence caps".
    """
    if not handle.sigma_is_identity:
        raise UnsupportedMapError("the simplicity verdict requires sigma = identity")
    ring = handle.ring
    char = ring.field.characteristic
    y_cap = caps.y_degree if ring.kind == "poly" else None

    probe = delta_simplicity_probe(handle, caps)
    if probe.fails:
        lifted = lift_invariant_ideal(handle, probe.witness, caps)
        return Verdict(
            Outcome.FAILS,
            "delta_invariant_ideal_lift",
            caps,
            witness=(probe.witness, lifted),
            detail=f"{probe.detail}; the lifted ideal re-validates and excludes one",
            cross_checks=(probe.criterion,),
        )

    try:
        central = minimal_monic_central(handle, caps)
    except UnsupportedMapError:
        # delta is certified not linear over its kernel; the center
        # characterization is unavailable but other routes may still decide
        central = Verdict(Outcome.INCONCLUSIVE, "center_minimal_monic", caps, witness=handle.one())
    simple_routes: list[str] = []
    if probe.holds:
        derivation_flag, derivation_result = handle.delta_derivation_flag(y_cap)
        if ring.is_associative() and char == 0 and derivation_flag is False:
            simple_routes.append("associative_nonderivation")
        if (
            char == 0
            and ring.is_commutative()
            and derivation_flag is True
            and any(not apply_map(handle.delta, r).is_zero() for r in basis(ring, y_cap))
        ):
            simple_routes.append("char0_commutative_outer_derivation")
        if _weyl_family(handle) == "classical" and char == 0 and _coefficient_ring_certified_simple(
            RingDescriptor(ring.field, "cd", ring.level)
        ):
            simple_routes.append("weyl_weighted_derivative")
        q = _quantum_family(handle)
        if (
            q is not None
            and char == 0
            and _root_of_unity_order(ring.field, q) is None
            and _coefficient_ring_certified_simple(RingDescriptor(ring.field, "cd", ring.level))
        ):
            simple_routes.append("quantum_not_root_of_unity")

    if central.holds:
        if simple_routes:
            raise AssertionError("certified-simple route coexists with a non-constant central element")
        b = central.witness
        principal = ideal_saturate(handle, [b], caps)
        if principal.contains_one():
            raise AssertionError("principal ideal of a non-constant monic central element contains one")
        detail = "a non-constant monic central element generates a proper ideal"
        if ring.kind == "poly":
            detail += " (centrality verified within caps)"
        return Verdict(
            Outcome.FAILS,
            "nonconstant_central_generator",
            caps,
            witness=(b, principal),
            detail=detail,
            cross_checks=(probe.criterion,) if probe.holds else (),
        )

    if simple_routes:
        cross: list[str] = []
        for tag in list(simple_routes[1:]) + [probe.criterion]:
            if tag != simple_routes[0] and tag not in cross:
                cross.append(tag)
        return Verdict(
            Outcome.HOLDS,
            simple_routes[0],
            caps,
            detail="delta-simple coefficients and a certified simple route",
            cross_checks=tuple(cross),
        )

    return Verdict(
        Outcome.INCONCLUSIVE,
        "capped_evidence",
        caps,
        detail=(
            "simple up to evidence caps: delta-simplicity "
            + ("certified" if probe.holds else "undecided")
            + ", no non-constant central element within caps"
        ),
        cross_checks=(probe.criterion,),
    )


# -- the fixed subfield of the coefficient center ----------------------------------------


def center_field_check(handle: OreRingHandle, caps: CapProfile) -> Verdict:
    """Is Z(R)_delta^sigma a field?  Computed on the capped basis.

    Finite-dimensional rings get a complete decision by solving z*w = 1 for
    each basis element z of the subring and re-checking that w stays inside.
    On polynomial rings a non-constant member rules out invertibility by the
    degree law when the coefficients have no zero divisors; otherwise the
    verdict is inconclusive.
    """
    ring = handle.ring
    field = ring.field
    y_cap = caps.y_degree if ring.kind == "poly" else None
    space = [b for b in basis(ring, y_cap)]
    space = _refine(space, lambda z: apply_map(handle.sigma, z) - z, to_coords, field)
    space = _refine(space, lambda z: apply_map(handle.delta, z), to_coords, field)
    coeff_basis = basis(ring, y_cap)
    for r in coeff_basis:
        space = _refine(space, lambda z, r=r: z * r - r * z, to_coords, field)
        if not space:
            break
    for r in coeff_basis:
        for s in coeff_basis:
            space = _refine(space, lambda z, r=r, s=s: (z * r) * s - z * (r * s), to_coords, field)
            space = _refine(space, lambda z, r=r, s=s: (r * z) * s - r * (z * s), to_coords, field)
            space = _refine(space, lambda z, r=r, s=s: (r * s) * z - r * (s * z), to_coords, field)
            if not space:
                break
        if not space:
            break
    ech = Echelon(field)
    for v in space:
        ech.insert(to_coords(v))
    members = [from_coords(ring, vec) for vec in ech.vectors()]
    if not members:
        return Verdict(Outcome.FAILS, "kernel_center_field", caps, detail="the subring is zero")

    if ring.kind == "poly":
        nonconstant = next((z for z in members if z.y_degree() >= 1), None)
        if nonconstant is not None:
            if _lattice_admissible(ring):
                return Verdict(
                    Outcome.FAILS,
                    "kernel_center_field",
                    caps,
                    witness=nonconstant,
                    detail="a non-constant member cannot be invertible (degree law, no zero divisors)",
                )
            return Verdict(
                Outcome.INCONCLUSIVE,
                "kernel_center_field",
                caps,
                witness=nonconstant,
                detail="non-constant member over coefficients with possible zero divisors",
            )

    # invert every basis member by a linear solve inside the capped space
    keys = [to_coords(b) for b in coeff_basis]
    for z in members:
        columns = [to_coords(z * b) for b in coeff_basis]
        combo = express_in_span(columns, to_coords(ring_one(ring)), field)
        if combo is None:
            if ring.is_finite_dimensional:
                return Verdict(
                    Outcome.FAILS,
                    "kernel_center_field",
                    caps,
                    witness=z,
                    detail="a nonzero member has no inverse in the ring",
                )
            return Verdict(
                Outcome.INCONCLUSIVE,
                "kernel_center_field",
                caps,
                witness=z,
                detail="no inverse within caps",
            )
        inverse_vec: dict = {}
        for coeff, bvec in zip(combo, keys):
            if not coeff:
                continue
            for key, value in bvec.items():
                acc = field.add(inverse_vec.get(key, field.zero), field.mul(coeff, value))
                if acc:
                    inverse_vec[key] = acc
                else:
                    inverse_vec.pop(key, None)
        if not ech.contains(inverse_vec):
            return Verdict(
                Outcome.FAILS,
                "kernel_center_field",
                caps,
                witness=z,
                detail="an inverse exists but leaves the subring",
            )
    if ring.kind == "poly":
        # members beyond the cap cannot be ruled out on an infinite basis
        return Verdict(
            Outcome.INCONCLUSIVE,
            "kernel_center_field",
            caps,
            detail="field within caps: every capped member is invertible inside the subring",
        )
    return Verdict(
        Outcome.HOLDS,
        "kernel_center_field",
        caps,
        detail="every nonzero capped member is invertible inside the subring",
    )
