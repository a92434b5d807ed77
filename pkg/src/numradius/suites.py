"""Seeded matrix families used by the tests, the bench and the sweep script.

Each generator takes a numpy Generator and a count and returns an array of
shape (n, 2, 2).
"""

from __future__ import annotations

import numpy as np


def _cplx(rng, *shape):
    return rng.random(shape) + 1j * rng.random(shape)


def _centered(rng, *shape):
    return rng.uniform(-1, 1, shape) + 1j * rng.uniform(-1, 1, shape)


def random_unitary(rng, n: int) -> np.ndarray:
    """Haar-distributed 2x2 unitaries via QR of a complex Gaussian."""
    Z = rng.standard_normal((n, 2, 2)) + 1j * rng.standard_normal((n, 2, 2))
    Q, R = np.linalg.qr(Z)
    d = np.diagonal(R, axis1=1, axis2=2)
    return Q * (d / np.abs(d))[:, None, :]


def _triangular(lam1, lam2, off):
    n = lam1.shape[0]
    T = np.zeros((n, 2, 2), dtype=complex)
    T[:, 0, 0], T[:, 1, 1], T[:, 0, 1] = lam1, lam2, off
    return T


def _rotate(rng, T):
    U = random_unitary(rng, T.shape[0])
    return U @ T @ np.conj(np.swapaxes(U, 1, 2))


def _polar(rng, n, mag):
    return mag * np.exp(2j * np.pi * rng.random(n))


def unit_square(rng, n):
    return _cplx(rng, n, 2, 2)


def centered_square(rng, n):
    return _centered(rng, n, 2, 2)


def tiny_offdiag(rng, n):
    return _rotate(rng, _triangular(_centered(rng, n), _centered(rng, n), _polar(rng, n, 1e-8)))


def tiny_gap(rng, n):
    lam = _centered(rng, n)
    return _rotate(rng, _triangular(lam, lam + _polar(rng, n, 1e-8), _centered(rng, n)))


def tiny_center(rng, n):
    d = _centered(rng, n)
    m = _polar(rng, n, 1e-8)
    return _rotate(rng, _triangular(m + d, m - d, _centered(rng, n)))


def huge(rng, n):
    return 1e6 * _cplx(rng, n, 2, 2)


def tiny(rng, n):
    return 1e-6 * _cplx(rng, n, 2, 2)


SUITES = {
    "unit_square": unit_square,
    "centered": centered_square,
    "tiny_offdiag": tiny_offdiag,
    "tiny_gap": tiny_gap,
    "tiny_center": tiny_center,
    "scale_1e6": huge,
    "scale_1e-6": tiny,
}
