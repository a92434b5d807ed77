"""Numerical radius of a 2x2 complex matrix.

Degenerate ranges (point, segment, disk) and ellipses centered at the origin
have exact answers. Everything else goes through the conic pencil on the
Frobenius-normalized matrix; when that route cannot certify its answer the
angle-sweep oracle takes over and the result says so.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Optional

from .geometry import (
    GEO_EPS,
    Conic,
    DegenerateShapeError,
    EllipseParams,
    RangeShape,
    classify,
    conic_from_ellipse,
    ellipse_from_matrix,
)
from .linalg import MatrixLike, as_matrix2, operator_norm2
from .oracle import boundary_min_distance, radius_angle_sweep, support_point
from .pencil import (
    SPLIT_TOL,
    DegenerateIntersection,
    PencilError,
    SplitDiagnostics,
    SplitError,
    adjugate3,
    extract_p,
    intersect_line_conic,
    pencil_real_eigenvalue,
    split_degenerate,
    tangency_conic,
)


class Method(str, enum.Enum):
    POINT = "PointFast"
    SEGMENT = "SegmentFast"
    DISK = "DiskFast"
    CENTERED = "CenteredFast"
    PENCIL = "Pencil"
    ORACLE = "OracleFallback"


@dataclass(frozen=True)
class EngineConfig:
    geo_eps: float = GEO_EPS
    centered_eps: float = 1e-12
    on_conic_tol: float = 1e-8
    norm_slack: float = 1e-9
    split_tol: float = SPLIT_TOL
    oracle_grid: int = 4096
    oracle_tol: float = 1e-10


DEFAULT_CONFIG = EngineConfig()


@dataclass(frozen=True)
class Candidate:
    x: float
    y: float
    distance: float
    residual: float


@dataclass(frozen=True)
class RadiusResult:
    w: float
    far_point: tuple[float, float]
    near_point: tuple[float, float]
    method: Method
    candidates: tuple[Candidate, ...] = ()
    diagnostics: Optional[SplitDiagnostics] = None
    fallback_reason: Optional[str] = None

    @property
    def near(self) -> float:
        return math.hypot(*self.near_point)


def candidate_filter(
    points,
    normA: float,
    G: Conic,
    scale: float = 1.0,
    on_conic_tol: float = 1e-8,
    norm_slack: float = 1e-9,
) -> list[Candidate]:
    """Keep points that are real, on the ellipse, and inside the norm bound."""
    kept = []
    for x, y in points:
        if not (math.isfinite(x) and math.isfinite(y)):
            continue
        res = abs(G(x, y))
        dist = math.hypot(x, y)
        if res <= on_conic_tol * scale and dist <= normA + norm_slack * scale:
            kept.append(Candidate(x, y, dist, res))
    return kept


def _xy(z: complex) -> tuple[float, float]:
    return (z.real, z.imag)


def _point_on(z: complex, toward: complex, r: float) -> complex:
    """The point r away from z in the direction of ``toward`` (real axis if ``toward`` is 0)."""
    u = toward / abs(toward) if toward != 0 else 1.0
    return z + r * u


def _segment_result(E: EllipseParams) -> RadiusResult:
    l1, l2 = E.lam1, E.lam2
    far = l1 if abs(l1) >= abs(l2) else l2
    d = l2 - l1
    t = min(1.0, max(0.0, (-(l1 * d.conjugate())).real / abs(d) ** 2)) if d != 0 else 0.0
    return RadiusResult(
        w=abs(far), far_point=_xy(far), near_point=_xy(l1 + t * d), method=Method.SEGMENT
    )


def _disk_result(E: EllipseParams) -> RadiusResult:
    m, r = E.center, E.b
    far = _point_on(m, m, r)
    near = _point_on(m, -m, r)
    return RadiusResult(
        w=abs(m) + r, far_point=_xy(far), near_point=_xy(near), method=Method.DISK
    )


def _centered_result(E: EllipseParams) -> RadiusResult:
    axis = complex(math.cos(E.phi), math.sin(E.phi))
    far = E.center + E.a * axis
    near = E.center + E.b * 1j * axis
    return RadiusResult(w=E.a, far_point=_xy(far), near_point=_xy(near), method=Method.CENTERED)


def _pencil_result(A, frob: float, cfg: EngineConfig):
    """Run the pencil on A / ||A||_F; return a result or the reason it was rejected."""
    An = A.scaled(1.0 / frob)
    E = ellipse_from_matrix(An)
    try:
        G = conic_from_ellipse(E)
    except DegenerateShapeError as exc:
        return f"conic: {exc}"
    H = tangency_conic(G)
    Gs, Hs = G.normalized(), H.normalized()
    norm_n = operator_norm2(An)

    try:
        lambdas = pencil_real_eigenvalue(Hs, Gs)
    except PencilError as exc:
        return f"pencil: {exc}"

    points: list[tuple[float, float]] = []
    best_diag: Optional[SplitDiagnostics] = None
    Gm, Hm = Gs.matrix.tolist(), Hs.matrix.tolist()
    for lam in lambdas:
        C = [[Hm[i][j] - lam * Gm[i][j] for j in range(3)] for i in range(3)]
        try:
            J = adjugate3(C).tolist()
            p, _ = extract_p(J, tol=cfg.split_tol)
            l1, l2, diag = split_degenerate(C, p, lambda0=lam, tol=cfg.split_tol, J=J)
        except SplitError:
            continue
        for line in (l1, l2):
            try:
                points.extend(intersect_line_conic(line, Gs))
            except DegenerateIntersection:
                continue
        if best_diag is None or diag.rank_residual < best_diag.rank_residual:
            best_diag = diag
    if best_diag is None:
        return "no pencil eigenvalue gave an accepted split"

    cands = candidate_filter(
        points, norm_n, G, on_conic_tol=cfg.on_conic_tol, norm_slack=cfg.norm_slack
    )
    if not cands:
        return "no intersection point survived the filter"
    far = max(cands, key=lambda c: c.distance)
    near = min(cands, key=lambda c: c.distance)
    w = far.distance
    slack = cfg.norm_slack
    rho = max(abs(E.lam1), abs(E.lam2))
    if w < 0.5 * norm_n - slack or w < rho - slack:
        return "pencil radius violates the norm or spectral bound"
    # the range contains the disk of radius b about m and lies in the one of radius a
    if w < abs(E.center) + E.b - slack or w > abs(E.center) + E.a + slack:
        return "pencil radius inconsistent with the ellipse axes"

    scaled = tuple(Candidate(c.x * frob, c.y * frob, c.distance * frob, c.residual) for c in cands)
    return RadiusResult(
        w=w * frob,
        far_point=(far.x * frob, far.y * frob),
        near_point=(near.x * frob, near.y * frob),
        method=Method.PENCIL,
        candidates=scaled,
        diagnostics=best_diag,
    )


def _oracle_result(A, E: EllipseParams, reason: str, cfg: EngineConfig) -> RadiusResult:
    orc = radius_angle_sweep(A, grid=cfg.oracle_grid, tol=cfg.oracle_tol)
    far = support_point(A, orc.theta_star)
    near_d, t = boundary_min_distance(E, samples=cfg.oracle_grid, tol=cfg.oracle_tol)
    axis = complex(math.cos(E.phi), math.sin(E.phi))
    near = E.center + axis * complex(E.a * math.cos(t), E.b * math.sin(t))
    return RadiusResult(
        w=orc.w,
        far_point=_xy(far),
        near_point=_xy(near),
        method=Method.ORACLE,
        fallback_reason=reason,
    )


def numerical_radius(A: MatrixLike, config: EngineConfig = DEFAULT_CONFIG) -> RadiusResult:
    """w(A) = max |z| over the numerical range of a 2x2 complex matrix."""
    A = as_matrix2(A)
    frob = A.frobenius
    scale = max(1.0, frob)
    E = ellipse_from_matrix(A)
    shape = classify(E, scale, config.geo_eps)

    if shape is not RangeShape.ELLIPSE:
        # |m| + b and the spectral radius both bound w from below and one of
        # them is exact for each ideal shape; near-threshold b or c stays visible
        flat = max(abs(E.lam1), abs(E.lam2)) >= abs(E.center) + E.b
        res = _segment_result(E) if flat else _disk_result(E)
        if shape is RangeShape.POINT:
            return replace(res, method=Method.POINT)
        return res
    if abs(E.center) <= config.centered_eps * scale:
        return _centered_result(E)

    out = _pencil_result(A, frob, config)
    if isinstance(out, RadiusResult):
        return out
    return _oracle_result(A, E, out, config)


def distance_to_boundary_extremes(A: MatrixLike, config: EngineConfig = DEFAULT_CONFIG) -> tuple[float, float]:
    """(smallest, largest) distance from the origin to the boundary curve of W(A)."""
    res = numerical_radius(A, config)
    return res.near, res.w
