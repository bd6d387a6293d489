"""Exact lattice arithmetic for K3 surfaces: Mukai lattices, Mukai vectors,
Fourier-Mukai partners via isotropic quotients, the transcendental-lattice
criterion for derived equivalence, discriminant gluing, and an
n-Koszulity test for graded algebras."""

from .errors import (
    DegenerateLatticeError,
    DivisibilityError,
    GlueError,
    InsufficientDataError,
    LatticeError,
    NonIntegralGlueError,
    SearchExhaustedError,
    UnnormalizableError,
    UnsupportedSignatureError,
)
from .k3 import (
    EquivalenceDecision,
    HodgeIsometry,
    K3SurfaceData,
    assemble_mukai_isometry,
    check_glue_compatible,
    derived_equivalent,
    fm_partner_filter,
    hodge_isometries,
    search_extension,
    singular_k3,
    validate_surface,
)
from .koszul import GradedAlgebra, b_modules, is_n_koszul, koszul_complex_matrices, relations
from .lattice import (
    DiscriminantGroup,
    GlueData,
    IntegralLattice,
    Isometry,
    direct_sum,
    discriminant,
    e8_minus,
    hyperbolic_U,
    induced_disc_action,
    isometries,
    orthogonal_complement,
    overlattice_from_glue,
    pair,
    quotient_by_isotropic,
    rescale,
    short_vectors,
)
from .mukai import (
    KunnethClass,
    MukaiLattice,
    MukaiVector,
    SheafData,
    companion,
    cohomological_transform,
    dual_class,
    euler_characteristic,
    moduli_partner,
    mukai_pairing,
    mukai_vector,
    normalize_rank,
    swap,
    twist,
    vector_dual,
)

__version__ = "0.1.0"
