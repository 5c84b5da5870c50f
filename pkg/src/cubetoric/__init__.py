"""Exact GF(2) cohomology of quasitoric manifolds over the cube.

The package constructs manifold models from characteristic matrices over
the n-cube, presents their mod-2 cohomology rings with decidable normal
forms, computes total and dual Stiefel-Whitney classes along independent
routes, and certifies lower bounds for totally skew embeddings, with
combinatorial parity oracles cross-checking the whole pipeline.
"""

__version__ = "0.1.0"

from .cube import (
    CharacteristicMatrix,
    CubeCombinatorics,
    ValidationReport,
    binary_groups,
    cube,
    lambda_MI,
    lambda_Q,
    random_characteristic_matrix,
    validate,
)
from .errors import (
    CubetoricError,
    EngineDefectError,
    InvalidMatrixError,
    ReductionGuardError,
)
from .gf2poly import (
    Gf2Polynomial,
    Monomial,
    graded_component,
    mono_mul,
    poly_add,
    poly_mul,
    render_poly,
)
from .manifolds import (
    BoundReport,
    GradedClass,
    ManifoldModel,
    SigmaTable,
    build,
    dual_sw,
    family_model,
    sigma_from_class,
    sigma_table,
    skew_lower_bound,
    top_dual_degree,
    total_sw,
)
from .oracle import (
    ParityWitness,
    alpha,
    binom_parity,
    binom_parity_bruteforce,
    cross_check_sigma,
)
from .quotient import (
    GroebnerBasis,
    QuotientRing,
    RelationSet,
    StandardBasis,
    buchberger,
    normal_form,
    series_inverse,
    standard_monomials,
)

__all__ = [
    "__version__",
    "CharacteristicMatrix",
    "CubeCombinatorics",
    "ValidationReport",
    "binary_groups",
    "cube",
    "lambda_MI",
    "lambda_Q",
    "random_characteristic_matrix",
    "validate",
    "CubetoricError",
    "EngineDefectError",
    "InvalidMatrixError",
    "ReductionGuardError",
    "Gf2Polynomial",
    "Monomial",
    "graded_component",
    "mono_mul",
    "poly_add",
    "poly_mul",
    "render_poly",
    "BoundReport",
    "GradedClass",
    "ManifoldModel",
    "SigmaTable",
    "build",
    "dual_sw",
    "family_model",
    "sigma_from_class",
    "sigma_table",
    "skew_lower_bound",
    "top_dual_degree",
    "total_sw",
    "ParityWitness",
    "alpha",
    "binom_parity",
    "binom_parity_bruteforce",
    "cross_check_sigma",
    "GroebnerBasis",
    "QuotientRing",
    "RelationSet",
    "StandardBasis",
    "buchberger",
    "normal_form",
    "series_inverse",
    "standard_monomials",
]
