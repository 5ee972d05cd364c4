import numpy as np
import pytest
from conftest import random_matrix, seeds
from hypothesis import given
from hypothesis import strategies as st

from eprigidity.charpoly import faddeev_leverrier
from eprigidity.ep import (
    analyze_cluster,
    build_cluster,
    cluster_eigenvalues,
    ep_minor,
    ep_report,
    ep_vectors,
    equipartition_check,
    overlap_relation_check,
    reorder,
    schur,
    secular_shift,
    xi,
    xi_triple,
)
from eprigidity.errors import IdentityError, NotDefectiveError, VanishingTraceError
from eprigidity.models import example_3x3, example_4x4, jordan_block, random_near_ep
from eprigidity.spectral import eigensystem


@given(seeds, st.integers(1, 12))
def test_schur_form(seed, m):
    h = random_matrix(m, seed)
    f = schur(h)
    assert f.residual(h) <= 1e-13 * m
    assert np.linalg.norm(f.q.conj().T @ f.q - np.eye(m)) <= 1e-13 * m
    assert np.allclose(np.tril(f.t, -1), 0)


def test_schur_reorder_moves_selection_first():
    h = random_matrix(6, 3)
    f = schur(h)
    target = f.t[4, 4]
    g = reorder(f, [4])
    assert abs(g.t[0, 0] - target) < 1e-12
    assert g.residual(h) < 1e-12


def test_schur_triangular_input_untouched():
    t = np.triu(random_matrix(5, 2))
    f = schur(t)
    assert np.array_equal(f.q, np.eye(5))


def test_cluster_eigenvalues():
    groups = cluster_eigenvalues([0, 1e-4, 1, 2, 2 + 1e-5], 1e-3)
    assert sorted(map(sorted, groups)) == [[0, 1], [2], [3, 4]]
    with pytest.raises(ValueError):
        cluster_eigenvalues([0, 1], 0)


@given(seeds, st.integers(2, 8))
def test_xi_triple_identity(seed, n):
    rng = np.random.default_rng(seed)
    t = np.triu(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)), 1)
    norm, prod, mnr = xi_triple(t, n, 0.0)
    assert abs(norm - prod) <= 1e-10 * prod
    assert abs(mnr - prod) <= 1e-10 * prod


def test_xi_raises_off_ep():
    with pytest.raises(IdentityError):
        xi(np.array([[0, 1], [2, 0]]), 2, 0.0)


def test_jordan_xi_is_one():
    assert xi(jordan_block(4).h_at_ep, 4, 0.0) == pytest.approx(1.0)


def test_ep_vectors_self_orthogonal():
    r, l = ep_vectors(jordan_block(3).h_at_ep, 0.0)
    assert np.allclose(abs(r), [1, 0, 0]) and np.allclose(abs(l), [0, 0, 1])
    with pytest.raises(NotDefectiveError):
        ep_vectors(np.diag([0.0, 1.0]), 0.0)


def test_two_ep_vectors_and_minors():
    mod = example_4x4()
    g = mod.golden
    for w, rk, lk, ak in ((0.0, "r_12", "lrow_12", "A_12"), (7.0, "r_34", "lrow_34", "A_34")):
        r, l = ep_vectors(mod.h_at_ep, w)
        r_ref = g[rk] / np.linalg.norm(g[rk])
        l_ref = np.conj(g[lk]) / np.linalg.norm(g[lk])
        assert abs(abs(np.vdot(r_ref, r)) - 1) < 1e-12
        assert abs(abs(np.vdot(l_ref, l)) - 1) < 1e-12
        assert ep_minor(mod.h_at_ep, w, r, l) == pytest.approx(g[ak], rel=1e-10)


def test_ep_minor_basis_independent():
    mod = random_near_ep(6, 3, seed=8)
    r, l = ep_vectors(mod.h_at_ep, mod.omega_ep)
    a = ep_minor(mod.h_at_ep, mod.omega_ep, r, l)
    b = ep_minor(mod.h_at_ep, mod.omega_ep, r, l, completion=[5, 3, 1, 0, 2, 4])
    assert a == pytest.approx(b, rel=1e-10)


def test_truncated_minor_equals_xi():
    mod = jordan_block(3)
    mod.h_at_ep[0, 1] = 2.0
    r, l = ep_vectors(mod.h_at_ep, 0.0)
    assert ep_minor(mod.h_at_ep, 0.0, r, l) == pytest.approx(xi(mod.h_at_ep, 3, 0.0))


def _cluster(mod, eps):
    h = mod.at(eps)
    es = eigensystem(h)
    vals = np.array(es.values)
    idx = sorted(np.argsort(abs(vals - mod.omega_ep))[: mod.order])
    return es, build_cluster(h, idx, es.values, h_at_ep=mod.h_at_ep)


def test_three_state_prediction():
    mod = example_3x3(2, 1, 3, 4)
    es, cl = _cluster(mod, 1e-8)
    rep = analyze_cluster(es, cl)
    assert len(cl.spectators) == 1
    for s in rep.states:
        assert abs(s.ratio_general - 1) < 1e-3


def test_equipartition_jordan_exact():
    es, cl = _cluster(jordan_block(3), 1e-6)
    for i in cl.indices:
        p = es.pairs[i]
        assert equipartition_check(cl, p.right, p.left, p.value).deviation < 1e-8


def test_equipartition_shrinks_with_spectators():
    mod = random_near_ep(6, 2, seed=3)
    devs = []
    for eps in (1e-4, 1e-6, 1e-8):
        es, cl = _cluster(mod, eps)
        devs.append(analyze_cluster(es, cl).equipartition_deviation)
    assert devs[0] > devs[1] > devs[2]


def test_equipartition_rejects_foreign_value():
    es, cl = _cluster(jordan_block(2), 1e-6)
    p = es.pairs[0]
    with pytest.raises(ValueError):
        equipartition_check(cl, p.right, p.left, value=5.0)


def test_overlap_relation_truncated():
    mod = random_near_ep(3, 3, seed=1)
    devs = []
    for eps in (1e-4, 1e-6, 1e-8):
        es, cl = _cluster(mod, eps)
        assert cl.truncated
        p = es.pairs[cl.indices[0]]
        devs.append(abs(overlap_relation_check(cl, p.right, p.left) - 1))
    assert devs[0] > devs[1] > devs[2]
    assert devs[2] < 1e-2


def test_secular_shift_jordan():
    pred = secular_shift(jordan_block(2).h_at_ep, jordan_block(2).h_prime, 1e-6, 0.0, 2)
    assert sorted(p.real for p in pred) == pytest.approx([-1e-3, 1e-3])


def test_secular_shift_two_ep_closed_form():
    mod = example_4x4()
    eps = 1e-6
    pred = secular_shift(mod.h_at_ep, mod.h_prime, eps, 0.0, 2)
    delta = np.sqrt(complex(eps * 1 * (4 * 6 - 5 * 7))) / 7
    assert min(abs(p - delta) for p in pred) < 1e-15


def test_secular_shift_vanishing_trace():
    with pytest.raises(VanishingTraceError):
        secular_shift(jordan_block(2).h_at_ep, np.array([[0, 1], [0, 0]]), 1e-6, 0.0, 2)


def test_report_two_clusters():
    mod = example_4x4()
    rep = ep_report(mod.at(1e-6), h_at_ep=mod.h_at_ep)
    assert sorted(c.cluster.order for c in rep.clusters) == [2, 2]
    for c in rep.clusters:
        assert not c.cluster.truncated
        assert c.general_deviation < 1e-2


def test_report_skips_semisimple():
    rep = ep_report(np.diag([1.0, 1.0, 3.0]))
    assert rep.clusters == [] and len(rep.skipped) == 1


def test_report_auto_mode_on_exact_ep():
    rep = ep_report(example_4x4().h_at_ep)
    assert len(rep.clusters) == 2
    assert all(c.cluster.auto for c in rep.clusters)
