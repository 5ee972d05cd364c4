import mpmath
import numpy as np
import pytest
from conftest import random_matrix

from eprigidity.adjugate import adjugate
from eprigidity.charpoly import faddeev_leverrier
from eprigidity.linalg import det
from eprigidity.oracle import (
    OracleCapError,
    oracle_adjugate,
    oracle_charpoly,
    oracle_det,
    oracle_eigen,
    oracle_eigen_numpy,
    wide_matrix_to_numpy,
)


def test_oracle_small_closed_forms():
    assert oracle_det([[1, 2], [3, 4]]) == -2
    assert wide_matrix_to_numpy(oracle_adjugate([[1, 2], [3, 4]])).tolist() == [[4, -2], [-3, 1]]
    assert [complex(c) for c in oracle_charpoly(np.diag([1.0, 2.0, 3.0]))] == [1, -6, 11, -6]


def test_oracle_caps():
    with pytest.raises(OracleCapError):
        oracle_det(np.eye(11))
    with pytest.raises(OracleCapError):
        oracle_eigen(np.eye(17))


def test_oracle_eigen_vectors():
    h = random_matrix(5, 3)
    vals, rights, lefts = oracle_eigen(h)
    with mpmath.workdps(40):
        m = mpmath.matrix([[mpmath.mpc(complex(x)) for x in row] for row in h])
        for w, r, l in zip(vals, rights, lefts):
            rv = mpmath.matrix(r)
            assert mpmath.norm(m * rv - w * rv) < mpmath.mpf(10) ** -30
            lv = mpmath.matrix(l)
            assert mpmath.norm(lv.H * m - w * lv.H) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("seed", range(5))
def test_main_path_against_oracle(seed):
    h = random_matrix(6, seed)
    assert abs(det(h) - complex(oracle_det(h))) < 1e-12 * np.linalg.norm(h) ** 6
    ref = wide_matrix_to_numpy(oracle_adjugate(h))
    assert np.abs(adjugate(h).adj - ref).max() < 1e-11 * np.linalg.norm(h) ** 5
    cp = np.array([complex(c) for c in oracle_charpoly(h)])
    assert np.abs(faddeev_leverrier(h).coeffs - cp).max() < 1e-11 * np.linalg.norm(h) ** 6
    vals = oracle_eigen_numpy(h)[0]
    ours = np.linalg.eigvals(h)
    assert max(min(abs(ours - v)) for v in vals) < 1e-12
