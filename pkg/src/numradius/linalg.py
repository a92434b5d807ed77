"""Closed-form kernels for 2x2 complex matrices and low-degree real polynomials."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

# Relative threshold under which a leading polynomial coefficient is treated as zero.
LEADING_EPS = 1e-13
# Depressed-cubic coefficients this small (after scaling roots to O(1)) mean a triple root.
TRIPLE_EPS = 64 * 2.0**-52


class IndeterminatePolynomial(ValueError):
    """Raised when every coefficient of a polynomial vanishes."""


class NotHermitianError(ValueError):
    pass


def _finite(z: complex) -> bool:
    return math.isfinite(z.real) and math.isfinite(z.imag)


@dataclass(frozen=True)
class Matrix2:
    """A 2x2 complex matrix [[a11, a12], [a21, a22]] with finite entries."""

    a11: complex
    a12: complex
    a21: complex
    a22: complex

    def __post_init__(self) -> None:
        for name in ("a11", "a12", "a21", "a22"):
            z = complex(getattr(self, name))
            if not _finite(z):
                raise ValueError(f"matrix entry {name} is not finite: {z!r}")
            object.__setattr__(self, name, z)

    @classmethod
    def from_array(cls, arr) -> "Matrix2":
        a = np.asarray(arr, dtype=complex)
        if a.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
        return cls(complex(a[0, 0]), complex(a[0, 1]), complex(a[1, 0]), complex(a[1, 1]))

    def to_numpy(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=complex)

    def adjoint(self) -> "Matrix2":
        c = complex.conjugate
        return Matrix2(c(self.a11), c(self.a21), c(self.a12), c(self.a22))

    def scaled(self, gamma: complex) -> "Matrix2":
        return Matrix2(gamma * self.a11, gamma * self.a12, gamma * self.a21, gamma * self.a22)

    def shifted(self, gamma: complex) -> "Matrix2":
        """Return A + gamma*I."""
        return Matrix2(self.a11 + gamma, self.a12, self.a21, self.a22 + gamma)

    @property
    def trace(self) -> complex:
        return self.a11 + self.a22

    @property
    def det(self) -> complex:
        return self.a11 * self.a22 - self.a12 * self.a21

    @property
    def frobenius(self) -> float:
        return math.hypot(abs(self.a11), abs(self.a12), abs(self.a21), abs(self.a22))

    def entries(self) -> tuple[complex, complex, complex, complex]:
        return self.a11, self.a12, self.a21, self.a22


MatrixLike = Union[Matrix2, Sequence[Sequence[complex]], np.ndarray]


def as_matrix2(A: MatrixLike) -> Matrix2:
    if isinstance(A, Matrix2):
        return A
    return Matrix2.from_array(A)


def csqrt(z: complex) -> complex:
    """Principal square root; purely imaginary results get a positive imaginary part."""
    s = cmath.sqrt(z)
    if s.real == 0.0 and s.imag < 0.0:
        s = complex(0.0, -s.imag)
    return s


def half_split(A: Matrix2) -> tuple[complex, complex]:
    """Return (mid, s) with eigenvalues mid +/- s.

    ``s`` is the principal root of ((a11 - a22)/2)**2 + a12*a21, which equals
    (tr/2)**2 - det without the cancellation of forming both terms separately.
    """
    mid = 0.5 * (A.a11 + A.a22)
    alpha = 0.5 * (A.a11 - A.a22)
    return mid, csqrt(alpha * alpha + A.a12 * A.a21)


def eigenvalues2(A: MatrixLike) -> tuple[complex, complex]:
    """Both eigenvalues of ``A``, ordered lexicographically by (real, imag)."""
    A = as_matrix2(A)
    mid, s = half_split(A)
    lo, hi = sorted((mid - s, mid + s), key=lambda z: (z.real, z.imag))
    return lo, hi


def operator_norm2(A: MatrixLike) -> float:
    """Largest singular value of ``A``.

    sqrt(s^2 - 4|det|^2) is the eigenvalue gap of A*A, taken here from its
    entries so that nearly equal singular values do not cancel.
    """
    A = as_matrix2(A)
    p = abs(A.a11) ** 2 + abs(A.a21) ** 2
    t = abs(A.a12) ** 2 + abs(A.a22) ** 2
    r = A.a11.conjugate() * A.a12 + A.a21.conjugate() * A.a22
    gap = math.hypot(p - t, 2.0 * abs(r))
    return math.sqrt(0.5 * (p + t + gap))


def lambda_max_hermitian2(H: MatrixLike, tol: float = 1e-12) -> float:
    """Larger eigenvalue of a Hermitian 2x2 matrix.

    The input is symmetrized first; a departure from Hermitian symmetry larger
    than ``tol * max(1, ||H||_F)`` raises :class:`NotHermitianError`.
    """
    H = as_matrix2(H)
    bound = tol * max(1.0, H.frobenius)
    skew = max(abs(H.a11.imag), abs(H.a22.imag), abs(H.a12 - H.a21.conjugate()))
    if skew > bound:
        raise NotHermitianError(f"matrix is not Hermitian (deviation {skew:.3e})")
    h11, h22 = H.a11.real, H.a22.real
    h12 = 0.5 * (H.a12 + H.a21.conjugate())
    return 0.5 * (h11 + h22) + math.hypot(0.5 * (h11 - h22), abs(h12))


def real_roots_quadratic(c2: float, c1: float, c0: float) -> list[float]:
    """Real roots of c2*x**2 + c1*x + c0, ascending, a double root reported once."""
    big = max(abs(c2), abs(c1), abs(c0))
    if big == 0.0:
        raise IndeterminatePolynomial("all coefficients are zero")
    if abs(c2) <= LEADING_EPS * big:
        if abs(c1) <= LEADING_EPS * big:
            return []
        return [-c0 / c1]
    disc = c1 * c1 - 4.0 * c2 * c0
    if disc < 0.0:
        # roundoff on a tangent line; genuine complex pairs are far below this
        if disc < -1e-12 * (c1 * c1 + 4.0 * abs(c2 * c0)):
            return []
        disc = 0.0
    if disc == 0.0:
        return [-c1 / (2.0 * c2)]
    q = -0.5 * (c1 + math.copysign(math.sqrt(disc), c1))
    return sorted((q / c2, c0 / q))


def _horner(coeffs: Sequence[float], x: float) -> tuple[float, float]:
    p, dp = 0.0, 0.0
    for c in coeffs:
        dp = dp * x + p
        p = p * x + c
    return p, dp


def _roundoff_bound(coeffs, x: float) -> float:
    """A bound on the rounding error of Horner evaluation at ``x``."""
    ax, acc = abs(x), 0.0
    for c in coeffs:
        acc = acc * ax + abs(c)
    return 8.0 * len(coeffs) * 2.0**-53 * acc


def _polish(coeffs, x: float) -> float:
    """One Newton step, kept only if it lowers the residual."""
    px, dpx = _horner(coeffs, x)
    if dpx != 0.0:
        y = x - px / dpx
        if abs(_horner(coeffs, y)[0]) < abs(px):
            return y
    return x


def _deflate(coeffs, r: float) -> tuple[float, float, float]:
    """The quadratic cofactor of the cubic after dividing out (x - r)."""
    c3, c2, c1, c0 = coeffs
    # sum and product of the other two roots bound their size within a factor 2
    s = -c2 / c3 - r
    prod = c1 / c3 - r * s
    if r != 0.0 and abs(r) >= max(abs(s), math.sqrt(abs(prod))):
        # backward recurrence from the constant term; stable for a dominant root
        k0 = -c0 / r
        k1 = (k0 - c1) / r
        return c3, k1, k0
    k1 = c2 + c3 * r
    return c3, k1, c1 + k1 * r


def real_roots_cubic(c3: float, c2: float, c1: float, c0: float) -> list[float]:
    """Real roots of c3*x**3 + c2*x**2 + c1*x + c0, ascending.

    Falls back to the quadratic solver when ``c3`` is negligible. One root
    comes from Cardano or the trigonometric form, the others from the
    deflated quadratic, so widely spread roots keep their relative accuracy.
    Each root gets one Newton step, kept only if it lowers the residual.
    Roots that agree to 1e-10 relative are reported once.
    """
    big = max(abs(c3), abs(c2), abs(c1), abs(c0))
    if big == 0.0:
        raise IndeterminatePolynomial("all coefficients are zero")
    if abs(c3) <= LEADING_EPS * big:
        return real_roots_quadratic(c2, c1, c0)

    coeffs = (c3, c2, c1, c0)
    a, b, c = c2 / c3, c1 / c3, c0 / c3
    # x = scale * y puts every root of the monic cubic in y within |y| <= 2
    scale = max(abs(a), math.sqrt(abs(b)), abs(c) ** (1.0 / 3.0))
    if scale == 0.0:
        return [0.0]
    a, b, c = a / scale, b / scale / scale, c / scale / scale / scale
    monic = (1.0, a, b, c)
    shift = a / 3.0
    p = b - a * shift
    q = 2.0 * shift**3 - b * shift + c
    if abs(p) <= TRIPLE_EPS and abs(q) <= TRIPLE_EPS:
        # roundoff-level spread around a triple root; report it once
        return [_polish(coeffs, -shift * scale)]
    disc = (0.5 * q) ** 2 + (p / 3.0) ** 3
    if p >= 0.0 or disc > 0.0:
        u3 = -0.5 * q - math.copysign(math.sqrt(max(disc, 0.0)), q)
        u = math.copysign(abs(u3) ** (1.0 / 3.0), u3)
        y0 = (u - p / (3.0 * u) if u != 0.0 else 0.0) - shift
    else:
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * r)
        theta = math.acos(min(1.0, max(-1.0, arg))) / 3.0
        y0 = max((r * math.cos(theta - 2.0 * math.pi * k / 3.0) - shift for k in range(3)), key=abs)

    k2, k1, k0 = _deflate(monic, y0)
    rest = real_roots_quadratic(k2, k1, k0)
    if not rest:
        # deflation noise can turn a double root into a tiny complex pair;
        # keep the vertex when the cubic vanishes there to working precision
        yv = -0.5 * k1 / k2
        if abs(_horner(monic, yv)[0]) <= _roundoff_bound(monic, yv):
            rest = [yv]

    roots = sorted(_polish(coeffs, scale * y) for y in [y0, *rest])

    merged: list[float] = []
    for x in roots:
        if merged and abs(x - merged[-1]) <= 1e-10 * max(1.0, abs(x)):
            continue
        merged.append(x)
    return merged
