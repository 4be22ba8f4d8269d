"""Exact computation with degree-truncated tropical ideals.

Everything is built on the min-plus semiring over exact rationals: no
floating point appears anywhere in the core, because ties between terms
are what define the geometry.  All public objects are immutable after
construction and every operation is a pure function, safe for concurrent
use on shared data.
"""

from .semiring import INF, Trop, dot, tsum, weight_sigma
from .polynomials import (TropPoly, least_coefficients, poly_from_roots,
                          tropical_roots)
from .matroids import (OrdMatroid, VMatroid, check_valuated_exchange, circuits,
                       coloop_extension, contract, dual, fundamental_circuit,
                       initial_matroid, is_vector)
from .ideals import (AffineTruncIdeal, ClassicalInput, QPoly, TruncIdeal,
                     Valuation, affine_point_ideal, affine_unit_ideal,
                     boolean_image, check_compatibility, compare, contains,
                     hilbert, homogenize_ideal, initial_ideal,
                     nonrealizable_ideal, point_ideal, tropicalize)
from .polyhedra import (Cell, PolyComplex, feasible_dim, normal_complex,
                        quotient_lineality, refine)
from .groebner import (Certificate, GroebnerComplex, VarietySubcomplex,
                       groebner_complex, groebner_poly, nullstellensatz,
                       tropical_basis, variety, variety_supports_equal)
from .errors import (DegenerateInputError, DimensionError, InputError,
                     InvalidMatroidError, InvariantViolationError,
                     LabelCollisionError, OutOfRangeError, ParseError,
                     PreconditionError, SizeGuardError, TropidealError)

__version__ = "0.1.0"

__all__ = [
    "INF", "Trop", "dot", "tsum", "weight_sigma",
    "TropPoly", "least_coefficients", "tropical_roots", "poly_from_roots",
    "OrdMatroid", "VMatroid", "check_valuated_exchange", "circuits",
    "coloop_extension", "contract", "dual", "fundamental_circuit",
    "initial_matroid", "is_vector",
    "AffineTruncIdeal", "ClassicalInput", "QPoly", "TruncIdeal", "Valuation",
    "affine_point_ideal", "affine_unit_ideal", "boolean_image",
    "check_compatibility", "compare", "contains", "hilbert",
    "homogenize_ideal", "initial_ideal", "nonrealizable_ideal", "point_ideal",
    "tropicalize",
    "Cell", "PolyComplex", "feasible_dim", "normal_complex",
    "quotient_lineality", "refine",
    "Certificate", "GroebnerComplex", "VarietySubcomplex", "groebner_complex",
    "groebner_poly", "nullstellensatz", "tropical_basis", "variety",
    "variety_supports_equal",
    "DegenerateInputError", "DimensionError", "InputError",
    "InvalidMatroidError", "InvariantViolationError", "LabelCollisionError",
    "OutOfRangeError", "ParseError", "PreconditionError", "SizeGuardError",
    "TropidealError",
    "__version__",
]
