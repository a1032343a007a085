import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hitchin_bracket.errors import NotHyperbolic, Singular
from hitchin_bracket.linalg import (
    as_matrix,
    hyp_decompose,
    is_traceless,
    matrix_exp,
    project_traceless,
    spectral_projection,
    trace_form,
)
from hitchin_bracket.sampling import random_hyp, random_traceless


def elementary_basis(n):
    """A basis of sl(n): off-diagonal units and E_kk - E_nn."""
    out = []
    for r in range(n):
        for c in range(n):
            if r != c:
                E = np.zeros((n, n))
                E[r, c] = 1.0
                out.append(E)
    for k in range(n - 1):
        E = np.zeros((n, n))
        E[k, k], E[n - 1, n - 1] = 1.0, -1.0
        out.append(E)
    return out


def test_as_matrix_rejects_bad_input():
    with pytest.raises(ValueError):
        as_matrix([[1.0, 2.0, 3.0]])
    with pytest.raises(ValueError):
        as_matrix([[1.0, np.nan], [0.0, 1.0]])
    with pytest.raises(ValueError):
        as_matrix(np.eye(13))
    with pytest.raises(ValueError):
        as_matrix([[1.0]])


def test_trace_form_examples(rng):
    assert trace_form(np.eye(2), np.eye(2)) == 2.0
    J = np.diag([1.0, -1.0])
    assert trace_form(J, J) == 2.0
    X, Y = rng.normal(size=(3, 3)), rng.normal(size=(3, 3))
    assert trace_form(X, Y) == trace_form(Y, X)
    assert trace_form(X, Y) == pytest.approx(np.trace(X @ Y), abs=1e-14)


def test_trace_form_dimension_mismatch():
    with pytest.raises(ValueError):
        trace_form(np.eye(2), np.eye(3))


def test_project_traceless_examples(rng):
    np.testing.assert_array_equal(project_traceless(np.eye(2)), np.zeros((2, 2)))
    np.testing.assert_allclose(project_traceless(np.diag([2.0, 0.5])), np.diag([0.75, -0.75]))
    A = rng.normal(size=(4, 4))
    assert abs(np.trace(project_traceless(A))) <= 1e-12


def test_project_traceless_is_orthogonal_and_idempotent(rng):
    for n in (2, 3, 5):
        A = rng.normal(size=(n, n))
        P = project_traceless(A)
        np.testing.assert_allclose(project_traceless(P), P, atol=1e-14)
        assert is_traceless(P)
        for E in elementary_basis(n):
            assert abs(trace_form(A - P, E)) <= 1e-13
            assert trace_form(P, E) == pytest.approx(trace_form(A, E), abs=1e-13)


def test_trace_form_nondegenerate_on_traceless(rng):
    for _ in range(100):
        n = int(rng.integers(2, 7))
        X = random_traceless(n, rng)
        assert max(abs(trace_form(X, E)) for E in elementary_basis(n)) > 0


def test_hyp_decompose_diagonal():
    D = hyp_decompose(np.diag([2.0, 0.5]))
    np.testing.assert_allclose(D.eigenvalues, [2.0, 0.5])
    np.testing.assert_allclose(D.right_vector(1), [1.0, 0.0])
    np.testing.assert_allclose(D.left_covector(1), [1.0, 0.0])


def _charpoly_roots_by_bisection(A, brackets):
    def f(lam):
        return np.linalg.det(A - lam * np.eye(A.shape[0]))

    roots = []
    for lo, hi in brackets:
        assert f(lo) * f(hi) < 0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if f(lo) * f(mid) <= 0:
                hi = mid
            else:
                lo = mid
        roots.append(0.5 * (lo + hi))
    return roots


def test_hyp_decompose_upper_triangular_against_root_finding_oracle():
    A = np.array([[2.0, 1.0], [0.0, 0.5]])
    lam1, lam2 = _charpoly_roots_by_bisection(A, [(1.0, 3.0), (0.1, 0.9)])
    # eigenvector of a 2x2 for lam: (b, lam - a); dual basis by explicit inverse
    v1 = np.array([A[0, 1], lam1 - A[0, 0]])
    v2 = np.array([A[0, 1], lam2 - A[0, 0]])
    if np.linalg.norm(v1) < 1e-12:
        v1 = np.array([lam1 - A[1, 1], A[1, 0]])
    R = np.column_stack([v1 / np.linalg.norm(v1), v2 / np.linalg.norm(v2)])
    cov1 = np.linalg.inv(R)[0]

    D = hyp_decompose(A)
    np.testing.assert_allclose(D.eigenvalues, [lam1, lam2], atol=1e-12)
    np.testing.assert_allclose(D.eigenvalues, [2.0, 0.5], atol=1e-14)
    np.testing.assert_allclose(D.right_vector(1), [1.0, 0.0], atol=1e-14)
    np.testing.assert_allclose(D.left_covector(1), [1.0, 2.0 / 3.0], atol=1e-14)
    # proportional to (3, 2)
    assert D.left_covector(1)[0] * 2 == pytest.approx(D.left_covector(1)[1] * 3)
    np.testing.assert_allclose(D.left_covector(1), cov1, atol=1e-12)


def test_hyp_decompose_rejections():
    c = math.cos(math.pi / 4)
    with pytest.raises(NotHyperbolic):
        hyp_decompose([[c, -c], [c, c]])
    with pytest.raises(NotHyperbolic):
        hyp_decompose(np.diag([2.0, -2.0, 0.25]))
    with pytest.raises(Singular):
        hyp_decompose([[1.0, 2.0], [2.0, 4.0]])


def test_hyp_decompose_sign_normalization(rng):
    for _ in range(20):
        D = hyp_decompose(random_hyp(4, rng))
        for k in range(4):
            v = D.right[:, k]
            assert np.linalg.norm(v) == pytest.approx(1.0)
            first = v[np.flatnonzero(np.abs(v) > 1e-12)[0]]
            assert first > 0


def test_decomposition_is_immutable():
    D = hyp_decompose(np.diag([3.0, 1.0, 1 / 3]))
    with pytest.raises(ValueError):
        D.eigenvalues[0] = 1.0


@pytest.mark.parametrize("n", [2, 3, 4, 6, 9, 12])
def test_decomposition_invariants(rng, n):
    for _ in range(10):
        A = random_hyp(n, rng)
        D = hyp_decompose(A)
        mods = np.abs(D.eigenvalues)
        assert np.all(np.diff(mods) < 0)
        np.testing.assert_allclose(D.left @ D.right, np.eye(n), atol=1e-10)
        np.testing.assert_allclose(D.reconstruct(), A, atol=1e-9 * np.linalg.norm(A))
        projections = [spectral_projection(D, i) for i in range(1, n + 1)]
        np.testing.assert_allclose(sum(projections), np.eye(n), atol=1e-10)
        for i, P in enumerate(projections, start=1):
            scale = max(1.0, np.linalg.norm(P))
            np.testing.assert_allclose(P @ P, P, atol=1e-10 * scale ** 2)
            np.testing.assert_allclose(A @ P, D.eigenvalues[i - 1] * P, atol=1e-9 * np.linalg.norm(A) * scale)
            assert np.trace(P) == pytest.approx(1.0, abs=1e-10)
            for j, Q in enumerate(projections, start=1):
                if i != j:
                    np.testing.assert_allclose(P @ Q, 0.0, atol=1e-10 * scale * max(1.0, np.linalg.norm(Q)))


def test_spectral_projection_examples():
    np.testing.assert_allclose(spectral_projection(hyp_decompose(np.diag([2.0, 0.5])), 1),
                               [[1.0, 0.0], [0.0, 0.0]])
    P = spectral_projection(hyp_decompose([[2.0, 1.0], [0.0, 0.5]]), 1)
    np.testing.assert_allclose(P, [[1.0, 2.0 / 3.0], [0.0, 0.0]], atol=1e-14)
    np.testing.assert_allclose(P @ P, P, atol=1e-14)


def test_spectral_projection_index_range():
    D = hyp_decompose(np.diag([2.0, 0.5]))
    with pytest.raises(IndexError):
        spectral_projection(D, 0)
    with pytest.raises(IndexError):
        spectral_projection(D, 3)


def test_matrix_exp_examples():
    X = np.array([[0.3, -1.2], [0.7, -0.3]])
    np.testing.assert_array_equal(matrix_exp(X, 0.0), np.eye(2))
    np.testing.assert_allclose(matrix_exp(np.diag([1.0, -1.0]), math.log(2)), np.diag([2.0, 0.5]))
    np.testing.assert_allclose(matrix_exp([[0.0, 1.0], [0.0, 0.0]], 3.0), [[1.0, 3.0], [0.0, 1.0]])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(-2, 2), st.floats(-2, 2), st.integers(2, 5))
def test_matrix_exp_one_parameter_group(seed, s, t, n):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(n, n))
    X *= 2.0 / max(np.linalg.norm(X, 2), 2.0)
    lhs = matrix_exp(X, s + t)
    rhs = matrix_exp(X, s) @ matrix_exp(X, t)
    np.testing.assert_allclose(lhs, rhs, atol=1e-10 * max(1.0, np.abs(lhs).max()))
