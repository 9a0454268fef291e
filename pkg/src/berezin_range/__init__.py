"""Berezin transforms and range geometry on the weighted Hardy space."""

__version__ = "0.1.0"

from .space import (  # noqa: F401
    DiskPoint,
    InvariantError,
    PowerSeries,
    SpaceParams,
    kernel_norm_sq,
    kernel_taylor_coeff,
    kernel_value,
    monomial_norm_sq,
    normalized_kernel_value,
)
from .operators import (  # noqa: F401
    BlaschkeFactor,
    BlaschkeProduct,
    DiagonalMonomialSum,
    GeneralFiniteRank,
    GeometricDiagonal,
    Multiplication,
    OperatorSpec,
    Polynomial,
    RankOneMonomial,
    ScaledProjection,
    Symbol,
    berezin_transform,
    evaluate_symbol,
    radial_profile,
    radial_profile_derivative,
)
from .closed_form import (  # noqa: F401
    ClosedDisc,
    ClosedInterval,
    CriticalPoint,
    HalfOpenInterval,
    ImageSet,
    OpenDisc,
    RangeDescription,
    Ray,
    critical_radius,
    gamma_limit_curve,
    predict_range,
    rank_one_norm_bound,
    scalar_max_search,
)
from .series_oracle import (  # noqa: F401
    berezin_via_series,
    inner_product_series,
    tail_bound,
    truncated_kernel,
)
from .geometry import (  # noqa: F401
    ConvexityReport,
    RangeCloud,
    SampleGrid,
    boundary_modulus_check,
    convex_hull,
    convexity_classify,
    real_part_membership,
    sample_range,
    symmetry_check,
)
from .dsl import ParseError, parse_operator_spec, render_operator_spec  # noqa: F401
