"""naore: exact arithmetic and structure analysis for non-associative Ore extensions.

The package implements the differential/skew polynomial rings R[X; sigma, delta]
over not-necessarily-associative coefficient rings built from Cayley-Dickson
algebras: exact multiplication, monic Euclidean division, left/right
coefficient conversion, an axiom harness, and degree-capped center, ideal,
and simplicity analysis with certified, witnessed, or explicitly inconclusive
verdicts.  All values are immutable; every operation is a pure function.
"""

from .cayley_dickson import CDElement, cd_associator, cd_commutator, cd_conj, cd_mul, cd_norm
from .debugmode import set_debug_checks
from .errors import (
    AnalysisExclusionError,
    CapsRequiredError,
    MismatchError,
    NaoreError,
    SpecFileError,
    TextFormError,
    UnsupportedMapError,
)
from .maps import (
    AdditiveMap,
    PiTable,
    apply_map,
    is_derivation,
    is_homomorphism,
    is_sigma_derivation,
    kernel_derivation_identity_check,
    kernel_linearity_check,
    pi,
    pi_by_enumeration,
    sigma_delta_constants,
)
from .ore import (
    NEG_INF,
    OrePoly,
    OreRingHandle,
    associativity_verdict,
    axiom_suite,
    degree,
    euclid_divide,
    exhaustive_associator_search,
    from_right_coeffs,
    is_monic,
    leading_coeff,
    ore_associator,
    ore_commutator,
    ore_mul,
    to_right_coeffs,
)
from .analysis import (
    CapProfile,
    IdealBasis,
    Outcome,
    RingIdealWitness,
    Verdict,
    center_basis,
    center_field_check,
    char_p_shape_check,
    delta_simplicity_probe,
    ideal_saturate,
    lift_invariant_ideal,
    minimal_monic_central,
    minimal_monic_generator,
    simplicity_verdict,
)
from .families import (
    constant_handle,
    dynamics_handle,
    quantum_handle,
    quotient_weyl_handle,
    shift_permutation,
    weyl_handle,
)
from .rings import (
    MembershipResult,
    RingDescriptor,
    RingElement,
    associator,
    basis,
    commutator,
    indicator,
    membership,
    ring_add,
    ring_eq,
    ring_from_scalar,
    ring_mul,
    ring_neg,
    ring_one,
    ring_zero,
    y_power,
)
from .scalars import GF, QQ, Scalar, ScalarField, is_prime
from .specfile import RingSpecFile, Task, parse_spec, render_spec
from .report import Report, render_structured, render_text, run
from .textform import (
    parse_cd,
    parse_ore_poly,
    parse_ring_element,
    render_cd,
    render_ore_poly,
    render_ring_element,
)

__version__ = "0.1.0"
