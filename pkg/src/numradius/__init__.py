"""Numerical radius and numerical range of 2x2 complex matrices."""

from .engine import (
    Candidate,
    EngineConfig,
    Method,
    RadiusResult,
    candidate_filter,
    distance_to_boundary_extremes,
    numerical_radius,
)
from .geometry import (
    Conic,
    EllipseParams,
    RangeShape,
    boundary_point,
    classify,
    conic_from_ellipse,
    ellipse_from_matrix,
)
from .linalg import (
    Matrix2,
    eigenvalues2,
    lambda_max_hermitian2,
    operator_norm2,
    real_roots_cubic,
    real_roots_quadratic,
)
from .oracle import OracleResult, radius_angle_sweep, radius_boundary_sampling

__all__ = [
    "Candidate",
    "Conic",
    "EllipseParams",
    "EngineConfig",
    "Matrix2",
    "Method",
    "OracleResult",
    "RadiusResult",
    "RangeShape",
    "boundary_point",
    "candidate_filter",
    "classify",
    "conic_from_ellipse",
    "distance_to_boundary_extremes",
    "eigenvalues2",
    "ellipse_from_matrix",
    "lambda_max_hermitian2",
    "numerical_radius",
    "operator_norm2",
    "radius_angle_sweep",
    "radius_boundary_sampling",
    "real_roots_cubic",
    "real_roots_quadratic",
]
