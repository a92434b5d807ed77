"""Projective machinery: tangency conic, pencil degeneration, line splitting.

Points where a circle about the origin touches the ellipse G satisfy both G
and the tangency conic H. Those points are the base points of the pencil
H - lam*G, so each singular member is a pair of lines through them.

3x3 kernels work on nested lists of floats; numpy's per-call overhead
dominates at this size. Public functions accept any array-like and return
numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Conic
from .linalg import IndeterminatePolynomial, real_roots_cubic, real_roots_quadratic

SPLIT_TOL = 1e-6
SINGULAR_EPS = 1e-32

Rows = list  # list[list[float]], 3x3


class PencilError(ValueError):
    pass


class SplitError(ValueError):
    pass


class DegenerateIntersection(ValueError):
    pass


@dataclass(frozen=True)
class HomLine:
    """The line l*x + n*y + q = 0, scaled so max(|l|, |n|, |q|) == 1."""

    l: float
    n: float
    q: float

    @classmethod
    def from_vector(cls, v) -> "HomLine":
        l, n, q = (float(x) for x in v)
        big = max(abs(l), abs(n), abs(q))
        if big == 0.0 or not math.isfinite(big):
            raise SplitError("zero line vector")
        return cls(l / big, n / big, q / big)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.l, self.n, self.q])

    def __call__(self, x, y):
        return self.l * x + self.n * y + self.q


@dataclass(frozen=True)
class SplitDiagnostics:
    lambda0: float
    alpha: float
    rank_residual: float
    pp_residual: float
    sign_flip: int


def _rows(M) -> Rows:
    if isinstance(M, list):
        return M
    return np.asarray(M, dtype=float).tolist()


def _conic_rows(G: Conic) -> Rows:
    return [[G.qA, G.qB, G.qD], [G.qB, G.qC, G.qE], [G.qD, G.qE, G.qF]]


def _fro2(M: Rows) -> float:
    return sum(x * x for r in M for x in r)


def _adj(C: Rows) -> Rows:
    # Cayley-Hamilton: adj(C) = C^2 - tr(C) C + e2 I, e2 = (tr(C)^2 - tr(C^2)) / 2
    (a, b, c), (d, e, f), (g, h, i) = C
    s00 = a * a + b * d + c * g
    s01 = a * b + b * e + c * h
    s02 = a * c + b * f + c * i
    s10 = d * a + e * d + f * g
    s11 = d * b + e * e + f * h
    s12 = d * c + e * f + f * i
    s20 = g * a + h * d + i * g
    s21 = g * b + h * e + i * h
    s22 = g * c + h * f + i * i
    t1 = a + e + i
    e2 = 0.5 * (t1 * t1 - (s00 + s11 + s22))
    return [
        [s00 - t1 * a + e2, s01 - t1 * b, s02 - t1 * c],
        [s10 - t1 * d, s11 - t1 * e + e2, s12 - t1 * f],
        [s20 - t1 * g, s21 - t1 * h, s22 - t1 * i + e2],
    ]


def _det(M: Rows) -> float:
    return (
        M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
        - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
        + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])
    )


def _inner(X: Rows, Y: Rows) -> float:
    return sum(X[i][j] * Y[i][j] for i in range(3) for j in range(3))


def tangency_conic(G: Conic) -> Conic:
    """The conic B x^2 + (C-A) xy - B y^2 + E x - D y = 0 of common tangents with circles about 0."""
    return Conic(G.qB, 0.5 * (G.qC - G.qA), -G.qB, 0.5 * G.qE, -0.5 * G.qD, 0.0)


def adjugate3(C) -> np.ndarray:
    """Adjugate via Cayley-Hamilton: C^2 - tr(C) C + e2 I, e2 = (tr(C)^2 - tr(C^2)) / 2."""
    return np.array(_adj(_rows(C)))


def pencil_real_eigenvalue(H: Conic, G: Conic) -> list[float]:
    """All real roots of det(H - lam G) = 0, ascending."""
    Hm, Gm = _conic_rows(H), _conic_rows(G)
    det_g = _det(Gm)
    # a normalized ellipse conic has det ~ -b^4/a^2; the filters downstream judge thin ones
    if not abs(det_g) > SINGULAR_EPS * _fro2(Gm) ** 1.5:
        raise PencilError("G is singular; the pencil has no cubic")
    # det(X + tY) = det X + t tr(adj(X) Y) + t^2 tr(X adj(Y)) + t^3 det Y, with X = H, Y = -G
    c3 = -det_g
    c2 = _inner(_adj(Gm), Hm)
    c1 = -_inner(_adj(Hm), Gm)
    c0 = _det(Hm)
    try:
        roots = real_roots_cubic(c3, c2, c1, c0)
    except IndeterminatePolynomial as exc:  # unreachable with det G != 0
        raise PencilError(str(exc)) from exc
    if not roots:
        raise PencilError("cubic returned no real root")
    return roots


def degenerate_member(H: Conic, G: Conic, lam: float) -> np.ndarray:
    """The singular pencil member H - lam*G."""
    Hm, Gm = _conic_rows(H), _conic_rows(G)
    return np.array([[Hm[i][j] - lam * Gm[i][j] for j in range(3)] for i in range(3)])


def _gram_gap(J: Rows, p, sigma: int) -> float:
    return math.sqrt(sum((sigma * J[i][j] - p[i] * p[j]) ** 2 for i in range(3) for j in range(3)))


def extract_p(J, tol: float = SPLIT_TOL) -> tuple[np.ndarray, int]:
    """Factor a rank-1 symmetric J as sigma * J = p p^T.

    The pivot is the diagonal entry of largest magnitude; sigma makes it
    positive. Raises :class:`SplitError` when J vanishes or is not of that form.
    """
    J = _rows(J)
    j_norm = math.sqrt(_fro2(J))
    if j_norm == 0.0 or not math.isfinite(j_norm):
        raise SplitError("adjugate vanishes: the conic is a double line")
    i = max(range(3), key=lambda k: abs(J[k][k]))
    if J[i][i] == 0.0:
        raise SplitError("adjugate has a zero diagonal; not a rank-1 Gram matrix")
    sigma = 1 if J[i][i] > 0.0 else -1
    pivot = math.sqrt(sigma * J[i][i])
    p = [sigma * J[i][k] / pivot for k in range(3)]
    p[i] = pivot
    if _gram_gap(J, p, sigma) > tol * j_norm:
        raise SplitError("adjugate is not rank one to tolerance")
    return np.array(p), sigma


def _cross(p) -> Rows:
    p1, p2, p3 = p
    return [[0.0, p3, -p2], [-p3, 0.0, p1], [p2, -p1, 0.0]]


def cross_matrix(p) -> np.ndarray:
    return np.array(_cross([float(x) for x in p]))


def _rank_residual(K: Rows) -> float:
    """Largest 2x2 minor over the squared Frobenius norm."""
    k2 = _fro2(K)
    if k2 == 0.0:
        return math.inf
    return max(abs(x) for r in _adj(K) for x in r) / k2


def _norm2(r) -> float:
    return r[0] * r[0] + r[1] * r[1] + r[2] * r[2]


def split_degenerate(
    C, p, *, lambda0: float = math.nan, tol: float = SPLIT_TOL, J=None
) -> tuple[HomLine, HomLine, SplitDiagnostics]:
    """Split a rank-2 symmetric conic matrix into its two lines.

    ``alpha`` is picked among the radical candidates so that C - alpha*P has
    the smallest largest 2x2 minor; the rows of that rank-1 matrix give one
    line and its columns the other. ``J`` may pass in a precomputed adjugate of C.
    """
    C = _rows(C)
    p = [float(x) for x in p]
    c_norm2 = _fro2(C)
    p_norm = math.sqrt(_norm2(p))
    if p_norm == 0.0:
        raise SplitError("intersection point p vanishes")
    P = _cross(p)

    # (radicand, pivot component) for e(4), e(5), e(6)
    radicals = (
        (C[0][1] ** 2 - C[0][0] * C[1][1], p[2]),
        (C[1][2] ** 2 - C[1][1] * C[2][2], p[0]),
        (C[0][2] ** 2 - C[0][0] * C[2][2], p[1]),
    )
    best = None
    tried: list[float] = []
    for radicand, pivot in radicals:
        if abs(pivot) <= 1e-12 * p_norm:
            continue
        if radicand < 0.0:
            if radicand < -1e-10 * c_norm2:
                continue
            radicand = 0.0
        root = math.sqrt(radicand) / pivot
        for alpha in (root, -root):
            if any(abs(alpha - seen) <= 1e-14 * abs(alpha) for seen in tried):
                continue
            tried.append(alpha)
            K = [[C[i][j] - alpha * P[i][j] for j in range(3)] for i in range(3)]
            res = _rank_residual(K)
            if best is None or res < best[0]:
                best = (res, alpha, K)
    if best is None:
        raise SplitError("no admissible alpha candidate")
    res, alpha, K = best
    if not res <= tol:
        raise SplitError(f"rank residual {res:.3e} exceeds {tol:.1e}")

    row = max(K, key=_norm2)
    col = max(([K[0][j], K[1][j], K[2][j]] for j in range(3)), key=_norm2)

    J = _adj(C) if J is None else _rows(J)
    j_norm = math.sqrt(_fro2(J))
    gaps = {s: _gram_gap(J, p, s) for s in (1, -1)}
    sigma = min(gaps, key=gaps.get)
    pp_res = gaps[sigma] / j_norm if j_norm > 0.0 else math.inf
    diag = SplitDiagnostics(
        lambda0=lambda0, alpha=alpha, rank_residual=res, pp_residual=pp_res, sign_flip=sigma
    )
    return HomLine.from_vector(row), HomLine.from_vector(col), diag


def intersect_line_conic(L: HomLine, G: Conic) -> list[tuple[float, float]]:
    """Real intersection points of a line and a conic.

    The line is walked from its foot point nearest the origin along its unit
    direction, so no coordinate of the normal is ever divided by.
    """
    nn = math.hypot(L.l, L.n)
    if nn <= 1e-14 * max(1.0, abs(L.q)):
        raise DegenerateIntersection("line at infinity has no affine points")
    x0, y0 = -L.q * L.l / (nn * nn), -L.q * L.n / (nn * nn)
    dx, dy = -L.n / nn, L.l / nn
    # G(x0 + t dx, y0 + t dy) = k2 t^2 + k1 t + k0
    k2 = G.qA * dx * dx + 2.0 * G.qB * dx * dy + G.qC * dy * dy
    k1 = 2.0 * (
        dx * (G.qA * x0 + G.qB * y0 + G.qD) + dy * (G.qB * x0 + G.qC * y0 + G.qE)
    )
    k0 = G(x0, y0)
    try:
        ts = real_roots_quadratic(k2, k1, k0)
    except IndeterminatePolynomial as exc:
        raise DegenerateIntersection("line lies entirely on the conic") from exc
    return [(x0 + t * dx, y0 + t * dy) for t in ts]

