"""Constructors for the shipped example families.

* ``weyl_handle``          -- T[Y][X; id, d/dY] with classical or listed weights;
* ``quotient_weyl_handle`` -- the truncated positive-characteristic variant;
* ``quantum_handle``       -- T[Y][X; id, delta] with delta = (Y -> qY pullback) - id;
* ``dynamics_handle``      -- functions on a finite set twisted by a permutation
                              pullback kernel derivation;
* ``constant_handle``      -- a Cayley-Dickson coefficient ring with delta = 0.
"""

from __future__ import annotations

from importlib import resources

from .maps import AdditiveMap
from .ore import OreRingHandle
from .rings import CapProfile, RingDescriptor
from .scalars import GF, QQ, ScalarField


def weyl_handle(field: ScalarField = QQ, level: int = 0, weights=None) -> OreRingHandle:
    ring = RingDescriptor(field, "poly", level)
    if weights is None:
        delta = AdditiveMap.derivative(ring)
    else:
        delta = AdditiveMap.weighted_derivative(ring, weights=weights)
    return OreRingHandle(ring, AdditiveMap.identity(ring), delta)


def quotient_weyl_handle(p: int, exponent: int | None = None, level: int = 0) -> OreRingHandle:
    ring = RingDescriptor(GF(p), "quotient", level, modulus=exponent if exponent is not None else p)
    return OreRingHandle(ring, AdditiveMap.identity(ring), AdditiveMap.derivative(ring))


def quantum_handle(q, field: ScalarField = QQ, level: int = 0) -> OreRingHandle:
    ring = RingDescriptor(field, "poly", level)
    alpha = AdditiveMap.scale_automorphism(ring, q)
    return OreRingHandle(ring, AdditiveMap.identity(ring), AdditiveMap.kernel_derivation(alpha))


def dynamics_handle(permutation, field: ScalarField = QQ, level: int = 0) -> OreRingHandle:
    ring = RingDescriptor(field, "functions", level, size=len(tuple(permutation)))
    alpha = AdditiveMap.permutation_pullback(ring, permutation)
    return OreRingHandle(ring, AdditiveMap.identity(ring), AdditiveMap.kernel_derivation(alpha))


def shift_permutation(n: int) -> tuple[int, ...]:
    """The single n-cycle i -> i + 1 (mod n)."""
    return tuple((i + 1) % n for i in range(n))


def constant_handle(field: ScalarField = QQ, level: int = 0) -> OreRingHandle:
    ring = RingDescriptor(field, "cd", level)
    return OreRingHandle(ring, AdditiveMap.identity(ring), AdditiveMap.zero(ring))


#: shipped spec files: name -> (resource file, one-line description)
EXAMPLE_SPECS: dict[str, str] = {
    "weyl-char0-rational": "rational Weyl ring QQ[Y][X; id, d/dY]",
    "weyl-char0-octonion": "octonion-coefficient Weyl ring over QQ",
    "weyl-fp2": "F_2[Y][X; id, d/dY], the characteristic-2 failure case",
    "weyl-fp3": "F_3[Y][X; id, d/dY], the characteristic-3 failure case",
    "quotient-weyl-fp2": "F_2[Y]/(Y^2) with the induced derivative",
    "quotient-weyl-fp3": "F_3[Y]/(Y^3) with the induced derivative",
    "quantum-q2": "scaling deformation with q = 2 over QQ[Y]",
    "quantum-q-minus1": "scaling deformation with q = -1 (a root of unity)",
    "dynamics-cycle": "functions on Z/4 with the shift, a minimal system",
    "dynamics-two-cycles": "functions on Z/4 with two 2-cycles",
}


def example_spec_text(name: str) -> str:
    if name not in EXAMPLE_SPECS:
        raise KeyError(f"unknown example spec: {name}")
    return resources.files("naore.specs").joinpath(f"{name}.orespec").read_text()


def default_caps(kind: str) -> CapProfile:
    if kind in ("quotient", "functions", "cd"):
        return CapProfile(4, 2, 8)
    return CapProfile(6, 6, 8)
