"""Geometry of the numerical range of a 2x2 matrix.

The range is a filled ellipse with the eigenvalues as foci and minor axis
sqrt(tr(A*A) - |l1|^2 - |l2|^2). It can collapse to a disk, a segment or
a point; the conic machinery only applies to the proper ellipse.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .linalg import MatrixLike, as_matrix2, half_split

GEO_EPS = 1e-10


class DegenerateShapeError(ValueError):
    pass


class RangeShape(enum.Enum):
    POINT = "Point"
    SEGMENT = "Segment"
    DISK = "Disk"
    ELLIPSE = "Ellipse"


@dataclass(frozen=True)
class EllipseParams:
    center: complex
    a: float
    b: float
    c: float
    phi: float
    lam1: complex
    lam2: complex
    off_mag: float

    def snapped(self, shape: RangeShape) -> "EllipseParams":
        """Zero out the axes a degenerate ``shape`` says are negligible."""
        if shape is RangeShape.POINT:
            return replace(self, a=0.0, b=0.0, c=0.0, phi=0.0)
        if shape is RangeShape.SEGMENT:
            return replace(self, a=self.c, b=0.0)
        if shape is RangeShape.DISK:
            return replace(self, a=self.b, c=0.0, phi=0.0)
        return self


@dataclass(frozen=True)
class Conic:
    """qA x^2 + 2 qB xy + qC y^2 + 2 qD x + 2 qE y + qF = 0."""

    qA: float
    qB: float
    qC: float
    qD: float
    qE: float
    qF: float

    @classmethod
    def from_matrix(cls, M) -> "Conic":
        M = np.asarray(M, dtype=float)
        S = 0.5 * (M + M.T)
        return cls(S[0, 0], S[0, 1], S[1, 1], S[0, 2], S[1, 2], S[2, 2])

    @property
    def matrix(self) -> np.ndarray:
        return np.array(
            [
                [self.qA, self.qB, self.qD],
                [self.qB, self.qC, self.qE],
                [self.qD, self.qE, self.qF],
            ]
        )

    @property
    def coeffs(self) -> tuple[float, float, float, float, float, float]:
        return self.qA, self.qB, self.qC, self.qD, self.qE, self.qF

    def __call__(self, x, y):
        return (
            self.qA * x * x
            + 2.0 * self.qB * x * y
            + self.qC * y * y
            + 2.0 * self.qD * x
            + 2.0 * self.qE * y
            + self.qF
        )

    def scaled(self, k: float) -> "Conic":
        return Conic(*(k * q for q in self.coeffs))

    def normalized(self) -> "Conic":
        """Same curve, largest coefficient magnitude 1."""
        big = max(abs(q) for q in self.coeffs)
        return self.scaled(1.0 / big) if big > 0.0 else self


def _off_diagonal_sq(A, s: complex) -> float:
    # |l3|^2 from the commutator identity ||A*A - AA*||_F^2 / 2 = x (x + 4|s|^2),
    # which avoids the cancellation in tr(A*A) - |l1|^2 - |l2|^2.
    alpha = 0.5 * (A.a11 - A.a22)
    beta, gamma = A.a12, A.a21
    diag = (abs(gamma) - abs(beta)) * (abs(gamma) + abs(beta))
    cross = alpha.conjugate() * beta - alpha * gamma.conjugate()
    n = diag * diag + 4.0 * abs(cross) ** 2
    s2 = abs(s) ** 2
    denom = 2.0 * s2 + math.sqrt(4.0 * s2 * s2 + n)
    return n / denom if denom > 0.0 else 0.0


def ellipse_from_matrix(A: MatrixLike) -> EllipseParams:
    A = as_matrix2(A)
    scale = max(1.0, A.frobenius)
    mid, s = half_split(A)
    lam1, lam2 = mid + s, mid - s
    c = abs(s)
    off_mag = math.sqrt(_off_diagonal_sq(A, s))
    b = 0.5 * off_mag
    a = math.hypot(b, c)
    if c <= GEO_EPS * scale:
        phi = 0.0
    else:
        d = lam2 - lam1
        phi = math.atan2(d.imag, d.real)
        if phi <= -math.pi:
            phi += 2.0 * math.pi
    return EllipseParams(center=mid, a=a, b=b, c=c, phi=phi, lam1=lam1, lam2=lam2, off_mag=off_mag)


def classify(E: EllipseParams, scale: float, eps: float = GEO_EPS) -> RangeShape:
    tol = eps * scale
    flat = E.b <= tol
    round_ = E.c <= tol
    if flat and round_:
        return RangeShape.POINT
    if flat:
        return RangeShape.SEGMENT
    if round_:
        return RangeShape.DISK
    return RangeShape.ELLIPSE


def conic_from_ellipse(E: EllipseParams) -> Conic:
    if not (E.a > E.b > 0.0):
        raise DegenerateShapeError(f"not a proper ellipse (a={E.a!r}, b={E.b!r})")
    cp, sp = math.cos(E.phi), math.sin(E.phi)
    ia2, ib2 = 1.0 / E.a**2, 1.0 / E.b**2
    k, l = E.center.real, E.center.imag
    qA = cp * cp * ia2 + sp * sp * ib2
    qB = sp * cp * (ia2 - ib2)
    qC = sp * sp * ia2 + cp * cp * ib2
    qD = -qA * k - qB * l
    qE = -qB * k - qC * l
    qF = ((cp * k + sp * l) / E.a) ** 2 + ((cp * l - sp * k) / E.b) ** 2 - 1.0
    return Conic(qA, qB, qC, qD, qE, qF)


def boundary_points(E: EllipseParams, t):
    """Vectorized boundary parametrization m + Rot(phi) (a cos t, b sin t)."""
    t = np.asarray(t, dtype=float)
    u, v = E.a * np.cos(t), E.b * np.sin(t)
    cp, sp = math.cos(E.phi), math.sin(E.phi)
    return E.center.real + cp * u - sp * v, E.center.imag + sp * u + cp * v


def boundary_point(E: EllipseParams, t: float) -> tuple[float, float]:
    u, v = E.a * math.cos(t), E.b * math.sin(t)
    cp, sp = math.cos(E.phi), math.sin(E.phi)
    return E.center.real + cp * u - sp * v, E.center.imag + sp * u + cp * v
