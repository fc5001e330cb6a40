"""Linearity defects of graded modules over standard graded algebras.

Exact Groebner-basis computations over ``QQ`` and ``GF(p)``: minimal free
resolutions, Betti tables, linear parts of minimal complexes, linearity
defects with certified statuses, Koszul and componentwise-linear tests, and
the injective linearity defect over Gorenstein rings.
"""

from .complexes import (
    BettiTable,
    FreeComplex,
    ResolutionPrefix,
    betti_table,
    dual_into_ring,
    has_i_linear_resolution,
    homology_module,
    koszul_complex,
    minimal_resolution,
    regularity,
    syzygy_module,
    tensor,
    truncate_above,
)
from .errors import (
    DegenerateInputError,
    LindefectError,
    NonHomogeneousError,
    ParseError,
    PreconditionError,
    UnsupportedError,
    UsageError,
)
from .field import Field, FieldElement
from .graded import (
    GradedAlgebra,
    GradedFreeModule,
    GradedModule,
    has_minimal_degree,
    is_cohen_macaulay,
    make_algebra,
    numerical_profile,
)
from .groebner import GroebnerBasis, ModuleOrder, groebner, kernel, minimal_generators, normal_form
from .linearity import (
    CwLinearReport,
    KoszulStatus,
    LdResult,
    base_change,
    component_submodule,
    injective_linearity_defect,
    is_componentwise_linear,
    is_gorenstein,
    is_koszul_algebra,
    koszul_depth,
    linear_part,
    linearity_defect,
    linearity_defect_of_complex,
)
from .poly import Monomial, MonomialOrder, PolyRing, Polynomial

__version__ = "0.1.0"
