"""Mod-2 cohomology rings of Stiefel-type manifolds and their invariants.

The package computes the cohomology rings of real, complex and
quaternionic Stiefel manifolds, of their projective quotients, and of the
flip Stiefel manifolds, as finite graded Z2-algebras.  On top of the ring
engine it evaluates upper characteristic ranks, exact cup lengths with
catalog bounds, Steenrod-square actions, spectral-sequence consistency
checks, and feasibility of unit-quaternion equivariant maps via index
ideals.
"""

from .errors import (
    DegreeMismatch,
    DimensionCapExceeded,
    InvalidParameters,
    MixedPresentations,
    NoIndex,
    TopoinvError,
    UndeterminedSquare,
    UnsupportedPresentation,
    WorkCapExceeded,
)
from .parity import (
    IndexFamily,
    NIndex,
    ParityRow,
    binom_divides,
    binom_parity,
    n_index,
    parity_row,
)
from .gralg import (
    SQ_UNDETERMINED,
    SQ_ZERO,
    AlgebraPresentation,
    CupMode,
    CupResult,
    Element,
    SimpleGenerator,
    Trunc,
    cup_length,
    element_from_dict,
    element_to_dict,
    mul,
    poincare,
    presentation_from_dict,
    presentation_to_dict,
    steenrod_sq,
    top_degree,
)
from .spaces import Family, SSReport, SpaceId, catalog, dimension, presentation, serre_verify
from .invariants import (
    CupReport,
    DIM_MINUS_INDEX_BOUND,
    RankResult,
    cup_bound_dim_minus_index,
    cup_bound_korbas,
    cup_bound_nt,
    cup_report,
    ucharrank_projective_CH,
    ucharrank_projective_real,
    ucharrank_stiefel,
)
from .equivariant import (
    FeasibilityVerdict,
    GSpace,
    IndexIdeal,
    IntegralIndexComponent,
    Sphere,
    StiefelH,
    SymplecticGroup,
    feasibility,
    ideal_contains,
    index_sphere,
    index_stiefel_integral_component,
    index_stiefel_mod2,
    parse_gspace,
)

__version__ = "0.1.0"
