import numpy as np
import pytest
from conftest import random_matrix, seeds
from hypothesis import given
from hypothesis import strategies as st

from eprigidity.errors import ConvergenceError, DimensionError, SingularMatrixError
from eprigidity.linalg import (
    as_matrix,
    batched_det,
    det,
    fix_phase,
    hessenberg,
    lu_factor,
    matmul,
    null_space_dim,
    solve,
    two_norm,
    vector_angle,
)


def test_as_matrix_rejects_bad_shapes():
    with pytest.raises(DimensionError):
        as_matrix(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        as_matrix([[np.nan, 0], [0, 1]])


def test_matmul_dimension_mismatch():
    with pytest.raises(DimensionError):
        matmul(np.eye(2), np.eye(3))


@given(seeds, st.integers(1, 10))
def test_two_norm_matches_svd(seed, m):
    x = random_matrix(m, seed)
    assert abs(two_norm(x) - np.linalg.norm(x, 2)) <= 1e-10 * np.linalg.norm(x, 2)


def test_two_norm_zero_and_rank_one():
    assert two_norm(np.zeros((3, 3))) == 0.0
    u = np.array([1, 2, 2j])
    assert two_norm(np.outer(u, u.conj())) == pytest.approx(9.0, rel=1e-12)


def test_two_norm_cap():
    x = random_matrix(6, 1)
    with pytest.raises(ConvergenceError):
        two_norm(x, tol=0.0, maxiter=3)


@given(seeds, st.integers(1, 10))
def test_solve_backward_error(seed, m):
    a = random_matrix(m, seed)
    if np.linalg.cond(a) > 1e6:
        return
    b = random_matrix(m, seed + 1)[:, 0]
    x = solve(a, b)
    lhs = np.linalg.norm(a @ x - b)
    assert lhs <= 1e-12 * (np.linalg.norm(a, 2) * np.linalg.norm(x) + np.linalg.norm(b))


def test_singular_pivot_reported():
    a = np.array([[1, 2], [2, 4]], dtype=complex)
    with pytest.raises(SingularMatrixError) as exc:
        lu_factor(a)
    assert exc.value.index == 1


@given(seeds, st.integers(1, 8))
def test_det_and_batched_det(seed, m):
    a = random_matrix(m, seed)
    ref = np.linalg.det(a)
    assert abs(det(a) - ref) <= 1e-11 * max(1.0, abs(ref)) * np.linalg.norm(a) ** m
    stack = np.stack([a, 2 * a])
    d = batched_det(stack)
    assert abs(d[1] - 2**m * d[0]) <= 1e-10 * abs(2**m * d[0]) + 1e-300


def test_det_singular_is_zero():
    assert det(np.ones((3, 3))) == 0


@given(seeds, st.integers(1, 10))
def test_hessenberg_similarity(seed, m):
    a = random_matrix(m, seed)
    q, h = hessenberg(a)
    assert np.allclose(np.tril(h, -2), 0, atol=1e-13)
    assert np.linalg.norm(q @ h @ q.conj().T - a) <= 1e-13 * np.linalg.norm(a) * m
    assert np.linalg.norm(q.conj().T @ q - np.eye(m)) <= 1e-13 * m


def test_hessenberg_keeps_hessenberg_input():
    h0 = np.triu(random_matrix(5, 3), -1)
    q, h = hessenberg(h0)
    assert np.array_equal(q, np.eye(5))
    assert np.array_equal(h, h0)


def test_fix_phase_and_angle():
    v = np.array([0.1, -2j, 0.5])
    w = fix_phase(v)
    k = np.argmax(abs(w))
    assert w[k].imag == 0 and w[k].real > 0
    assert vector_angle(v, 3j * v) < 1e-15
    assert vector_angle([1, 0], [0, 1]) == pytest.approx(np.pi / 2)


def test_null_space_dim():
    assert null_space_dim(np.zeros((3, 3))) == 3
    assert null_space_dim(np.diag([1.0, 0.0, 2.0])) == 1
    assert null_space_dim(np.eye(3)) == 0
