"""Independent ground truth for w(A).

The angle sweep maximizes the support function
f(theta) = lambda_max((e^{-i theta} A + e^{i theta} A*) / 2), whose maximum is
w(A) for any convex range. The boundary sweep maximizes |z(t)| along the
parametrized ellipse. Neither touches the conic pencil.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .geometry import EllipseParams
from .linalg import Matrix2, MatrixLike, as_matrix2, lambda_max_hermitian2

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class OracleResult:
    w: float
    theta_star: float
    evals: int
    refined: bool


def golden_max(f: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float, int]:
    """Maximize a unimodal ``f`` on [lo, hi] until the bracket is shorter than ``tol``.

    Returns (x, f(x), number of evaluations).
    """
    c = hi - INV_PHI * (hi - lo)
    d = lo + INV_PHI * (hi - lo)
    fc, fd = f(c), f(d)
    evals = 2
    while hi - lo > tol:
        if fc >= fd:
            hi, d, fd = d, c, fc
            c = hi - INV_PHI * (hi - lo)
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            d = lo + INV_PHI * (hi - lo)
            fd = f(d)
        evals += 1
    return (c, fc, evals) if fc >= fd else (d, fd, evals)


def _periodic_max(
    f_vec: Callable[[np.ndarray], np.ndarray],
    f: Callable[[float], float],
    grid: int,
    tol: float,
    peaks: int = 3,
) -> tuple[float, float, int]:
    ts = np.arange(grid) * (TWO_PI / grid)
    vals = f_vec(ts)
    left, right = np.roll(vals, 1), np.roll(vals, -1)
    local = np.flatnonzero((vals >= left) & (vals >= right))
    if local.size == 0:
        local = np.array([int(np.argmax(vals))])
    order = local[np.argsort(-vals[local], kind="stable")][:peaks]
    step = TWO_PI / grid
    k0 = int(order[0])
    best_t, best_f, evals = float(ts[k0]), float(vals[k0]), grid
    for k in order:
        t0 = float(ts[k])
        t, ft, n = golden_max(f, t0 - step, t0 + step, tol)
        evals += n
        if ft > best_f:
            best_t, best_f = t, ft
    return best_t % TWO_PI, best_f, evals


def _support_values(A: Matrix2, thetas: np.ndarray) -> np.ndarray:
    # lambda_max of the Hermitian part of e^{-i theta} A, vectorized over theta
    rot = np.exp(-1j * thetas)
    h11 = (rot * A.a11).real
    h22 = (rot * A.a22).real
    h12 = 0.5 * (rot * A.a12 + np.conj(rot) * A.a21.conjugate())
    return 0.5 * (h11 + h22) + np.hypot(0.5 * (h11 - h22), np.abs(h12))


def hermitian_part(A: Matrix2, theta: float) -> Matrix2:
    rot = cmath.exp(-1j * theta)
    B = A.scaled(rot)
    Bh = B.adjoint()
    return Matrix2(
        0.5 * (B.a11 + Bh.a11), 0.5 * (B.a12 + Bh.a12), 0.5 * (B.a21 + Bh.a21), 0.5 * (B.a22 + Bh.a22)
    )


def support_function(A: MatrixLike, theta: float) -> float:
    return lambda_max_hermitian2(hermitian_part(as_matrix2(A), theta))


def radius_angle_sweep(A: MatrixLike, grid: int = 4096, tol: float = 1e-10) -> OracleResult:
    if grid < 64:
        raise ValueError("grid must be at least 64")
    if not tol > 0.0:
        raise ValueError("tol must be positive")
    A = as_matrix2(A)
    theta, w, evals = _periodic_max(
        lambda ts: _support_values(A, ts),
        lambda t: float(_support_values(A, np.array([t]))[0]),
        grid,
        tol,
    )
    return OracleResult(w=w, theta_star=theta, evals=evals, refined=True)


def support_point(A: MatrixLike, theta: float) -> complex:
    """<Ax, x> for the unit x maximizing Re(e^{-i theta} <Ax, x>).

    For theta = arg of the farthest point this recovers that point, which ties
    boundary answers back to the quadratic-form definition of the range.
    """
    A = as_matrix2(A)
    K = hermitian_part(A, theta)
    _, vecs = np.linalg.eigh(K.to_numpy())
    x = vecs[:, -1]
    return complex(np.vdot(x, A.to_numpy() @ x))


def _boundary_modulus(E: EllipseParams):
    rot = cmath.exp(1j * E.phi)

    def vec(ts: np.ndarray) -> np.ndarray:
        return np.abs(E.center + rot * (E.a * np.cos(ts) + 1j * E.b * np.sin(ts)))

    def one(t: float) -> float:
        return abs(E.center + rot * complex(E.a * math.cos(t), E.b * math.sin(t)))

    return vec, one


def radius_boundary_sampling(E: EllipseParams, samples: int = 4096, tol: float = 1e-10) -> float:
    if samples < 16:
        raise ValueError("samples must be at least 16")
    vec, one = _boundary_modulus(E)
    return _periodic_max(vec, one, samples, tol)[1]


def boundary_min_distance(E: EllipseParams, samples: int = 4096, tol: float = 1e-10) -> tuple[float, float]:
    """Minimum of |z(t)| over the boundary curve; returns (distance, t)."""
    if samples < 16:
        raise ValueError("samples must be at least 16")
    vec, one = _boundary_modulus(E)
    t, neg, _ = _periodic_max(lambda ts: -vec(ts), lambda t: -one(t), samples, tol)
    return -neg, t
