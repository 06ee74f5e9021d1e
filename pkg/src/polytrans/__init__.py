"""Iterated complex-weight polygon transformations and their inverse design."""
from .design import (
    DesignResult,
    DesignStatus,
    LambdaRegion,
    RegionKind,
    SpectralScaling,
    aux_weights,
    competing_mus,
    design_general,
    design_triangle,
    direct_dominance,
    dominance_margin,
    lambda_region,
    quadrangle_case_lambda,
    region_contains,
    search_lambda,
    verify_target_eigen,
)
from .errors import (
    ConvergenceFailure,
    DegeneratePolygon,
    DegenerateSpectrum,
    DuplicateConsecutiveVertices,
    InvalidPolygon,
    NoZeroWeight,
    PolyTransError,
    SizeMismatch,
    TargetEigenvalueCollision,
    ZeroCompetingEigenvalue,
    ZeroWeightInProduct,
)
from .geometry import centroid, normalize_shape, shape_distance, translate_to_anchor
from .spectral import (
    CharPoly,
    EigenPair,
    Spectrum,
    char_poly,
    char_poly_oracle,
    eigenvalues_case1,
    eigenvalues_general,
    eigenvector_case1,
    spectrum,
)
from .transform import (
    Trajectory,
    TransitionMatrix,
    apply_step,
    build_transition,
    fitted_decay_rate,
    iterate,
    lambda_theta_weight,
)

__version__ = "0.1.0"
