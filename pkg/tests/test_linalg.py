import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from numradius.linalg import (
    IndeterminatePolynomial,
    Matrix2,
    NotHermitianError,
    csqrt,
    eigenvalues2,
    lambda_max_hermitian2,
    operator_norm2,
    real_roots_cubic,
    real_roots_quadratic,
)

from conftest import matrices, scale_of

coeff = st.floats(min_value=-100.0, max_value=100.0, allow_nan=False)


def test_matrix_rejects_non_finite():
    with pytest.raises(ValueError):
        Matrix2(1, math.nan, 0, 0)
    with pytest.raises(ValueError):
        Matrix2(1, 0, complex(0, math.inf), 0)
    with pytest.raises(ValueError):
        Matrix2.from_array(np.zeros((3, 3)))


@pytest.mark.parametrize(
    "A, expected",
    [
        ([[1, 0], [0, 2]], (1, 2)),
        ([[0, 1], [0, 0]], (0, 0)),
        ([[0, 1], [-1, 0]], (-1j, 1j)),
    ],
)
def test_eigenvalue_examples(A, expected):
    got = eigenvalues2(A)
    assert got[0] == pytest.approx(expected[0], abs=1e-15)
    assert got[1] == pytest.approx(expected[1], abs=1e-15)


def test_principal_sqrt_branch():
    assert csqrt(-4) == 2j
    assert csqrt(complex(-4, -0.0)) == 2j
    assert csqrt(4) == 2


@given(matrices)
def test_eigenvalue_sum_and_product(A):
    l1, l2 = eigenvalues2(A)
    tol = 1e-12 * (1 + A.frobenius)
    assert abs(l1 + l2 - A.trace) <= tol
    # the product carries one more factor of the scale
    assert abs(l1 * l2 - A.det) <= tol * (1 + A.frobenius)


@given(matrices)
def test_eigenvalues_match_numpy(A):
    ours = sorted(eigenvalues2(A), key=lambda z: (z.real, z.imag))
    assert ours == list(eigenvalues2(A))
    theirs = np.linalg.eigvals(A.to_numpy())
    for z in ours:
        assert min(abs(z - t) for t in theirs) <= 1e-6 * scale_of(A)


@pytest.mark.parametrize(
    "A, expected",
    [([[1, 0], [0, 1]], 1.0), ([[0, 2], [0, 0]], 2.0), ([[1, 1], [0, 0]], math.sqrt(2))],
)
def test_operator_norm_examples(A, expected):
    assert operator_norm2(A) == pytest.approx(expected, abs=1e-15)


def test_operator_norm_dominates_sampled_vectors(rng):
    for _ in range(20):
        A = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
        x = rng.standard_normal((2, 10_000)) + 1j * rng.standard_normal((2, 10_000))
        x /= np.linalg.norm(x, axis=0)
        sampled = np.linalg.norm(A @ x, axis=0).max()
        norm = operator_norm2(A)
        assert sampled <= norm + 1e-9
        assert norm - sampled <= 1e-6 * max(1.0, norm) + 1e-2 * norm  # coarse sampling from below
        assert norm == pytest.approx(np.linalg.norm(A, 2), rel=1e-12)


@given(matrices)
def test_operator_norm_matches_svd(A):
    assert operator_norm2(A) == pytest.approx(np.linalg.norm(A.to_numpy(), 2), rel=1e-9, abs=1e-12)


@pytest.mark.parametrize(
    "H, expected",
    [
        ([[1, 0], [0, 0]], 1.0),
        ([[1, 0.5], [0.5, 0]], (1 + math.sqrt(2)) / 2),
        ([[0, 1j], [-1j, 0]], 1.0),
    ],
)
def test_lambda_max_examples(H, expected):
    assert lambda_max_hermitian2(H) == pytest.approx(expected, abs=1e-15)


def test_lambda_max_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        lambda_max_hermitian2([[0, 1], [0, 0]])


@given(matrices, st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)))
def test_lambda_max_bounds_rayleigh_quotient(A, v):
    H = 0.5 * (A.to_numpy() + A.to_numpy().conj().T)
    x = np.array([complex(v[0], v[1]), complex(v[2], v[3])])
    if np.linalg.norm(x) < 1e-6:
        return
    x /= np.linalg.norm(x)
    rq = float(np.vdot(x, H @ x).real)
    assert lambda_max_hermitian2(H) >= rq - 1e-12 * scale_of(A)


def test_cubic_examples():
    assert real_roots_cubic(1, 0, -1, 0) == pytest.approx([-1, 0, 1], abs=1e-15)
    assert real_roots_cubic(4, 0, -2.25, 0) == pytest.approx([-0.75, 0, 0.75], abs=1e-15)
    assert real_roots_cubic(1, 0, 1, 0) == pytest.approx([0.0], abs=1e-15)


def test_cubic_degrades_to_lower_degree():
    assert real_roots_cubic(1e-20, 1, 0, -1) == pytest.approx([-1, 1])
    assert real_roots_cubic(0, 0, 2, -1) == pytest.approx([0.5])
    with pytest.raises(IndeterminatePolynomial):
        real_roots_cubic(0, 0, 0, 0)


def test_cubic_triple_root():
    # (x - 1)^3
    assert real_roots_cubic(1, -3, 3, -1) == pytest.approx([1.0], abs=1e-6)


def test_quadratic_examples():
    assert real_roots_quadratic(1, 0, -1) == [-1.0, 1.0]
    assert real_roots_quadratic(1, 0, 1) == []
    assert real_roots_quadratic(1, -2, 1) == [1.0]
    with pytest.raises(IndeterminatePolynomial):
        real_roots_quadratic(0, 0, 0)


def test_quadratic_is_cancellation_safe():
    roots = real_roots_quadratic(1, -1e8, 1)
    assert roots[0] == pytest.approx(1e-8, rel=1e-14)
    assert roots[1] == pytest.approx(1e8, rel=1e-14)


def _residual_ok(coeffs, r):
    big = max(1.0, max(abs(c) for c in coeffs))
    return abs(np.polyval(coeffs, r)) <= 1e-9 * big * max(1.0, abs(r)) ** (len(coeffs) - 1)


@given(coeff, coeff, coeff, coeff)
def test_cubic_root_residuals(c3, c2, c1, c0):
    if max(abs(c3), abs(c2), abs(c1)) == 0.0:
        return
    roots = real_roots_cubic(c3, c2, c1, c0)
    assert roots == sorted(roots)
    for r in roots:
        assert _residual_ok([c3, c2, c1, c0], r)


@given(coeff, coeff, coeff)
def test_quadratic_root_residuals(c2, c1, c0):
    if max(abs(c2), abs(c1)) == 0.0:
        return
    roots = real_roots_quadratic(c2, c1, c0)
    assert roots == sorted(roots)
    for r in roots:
        assert _residual_ok([c2, c1, c0], r)


@given(st.lists(st.floats(-50, 50), min_size=3, max_size=3))
def test_cubic_finds_all_planted_roots(planted):
    # roots closer than the merge radius are legitimately reported once
    c = np.poly(planted)
    roots = real_roots_cubic(*c)
    for r in planted:
        assert min(abs(r - x) for x in roots) <= 1e-5 * max(1.0, abs(r))
