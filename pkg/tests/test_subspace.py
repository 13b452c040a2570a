import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relspec import subspace as ss

from oracles import exact_intersection_dim, exact_rank, lstsq_intersection_dim


def randc(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def test_span_collinear():
    U = ss.span([np.array([1, 0]), np.array([2, 0])])
    assert U.dim == 1
    assert np.allclose(np.abs(U.frame[:, 0]), [1, 0])


def test_span_empty_needs_ambient():
    assert ss.span([], ambient_dim=3).dim == 0
    with pytest.raises(ValueError):
        ss.span([])


def test_span_mismatched_lengths():
    with pytest.raises(ValueError):
        ss.span([np.ones(2), np.ones(3)])


def test_ambient_zero_rejected():
    with pytest.raises(ValueError):
        ss.zero(0)
    with pytest.raises(ValueError):
        ss.from_columns(np.zeros((0, 2)))


@pytest.mark.parametrize("seed", range(20))
def test_span_rank_matches_exact_oracle(seed):
    rng = np.random.default_rng(seed)
    n, k = rng.integers(2, 7, size=2)
    r = rng.integers(1, min(n, k) + 1)
    # integer matrix of known-ish rank; the oracle decides exactly
    M = rng.integers(-3, 4, size=(n, r)) @ rng.integers(-3, 4, size=(r, k))
    U = ss.span(list(M.T.astype(float)))
    assert U.dim == exact_rank(M.tolist())


def test_five_random_vectors_in_c3():
    rng = np.random.default_rng(0)
    assert ss.span(list(randc(rng, 5, 3))).dim == 3


def test_coordinate_planes():
    xy = ss.span([np.eye(3)[0], np.eye(3)[1]])
    yz = ss.span([np.eye(3)[1], np.eye(3)[2]])
    I = ss.intersect(xy, yz)
    assert I.dim == 1
    assert I.contains(np.array([0, 1, 0]))


def test_intersect_idempotent():
    rng = np.random.default_rng(1)
    U = ss.from_columns(randc(rng, 5, 3))
    assert ss.intersect(U, U).equals(U)


@pytest.mark.parametrize("seed", range(10))
def test_random_intersection_generic_dim(seed):
    rng = np.random.default_rng(seed)
    U = ss.from_columns(randc(rng, 6, 4))
    V = ss.from_columns(randc(rng, 6, 3))
    I = ss.intersect(U, V)
    assert I.dim == 1 == lstsq_intersection_dim(U.frame, V.frame)
    assert I.is_subspace_of(U) and I.is_subspace_of(V)


@pytest.mark.parametrize("seed", range(10))
def test_intersection_exact_integer_inputs(seed):
    rng = np.random.default_rng(100 + seed)
    n = 6
    shared = rng.integers(-2, 3, size=(n, 2))
    U = np.hstack([shared, rng.integers(-2, 3, size=(n, 1))])
    V = np.hstack([shared, rng.integers(-2, 3, size=(n, 2))])
    got = ss.intersect(ss.from_columns(U.astype(float)), ss.from_columns(V.astype(float))).dim
    assert got == exact_intersection_dim(U.tolist(), V.tolist())


def test_sum_axes_and_zero():
    x, y = ss.span([np.eye(2)[0]]), ss.span([np.eye(2)[1]])
    assert ss.sum_(x, y).dim == 2
    assert ss.sum_(x, ss.zero(2)).equals(x)


def test_sum_random_generic():
    rng = np.random.default_rng(3)
    U = ss.from_columns(randc(rng, 5, 2))
    V = ss.from_columns(randc(rng, 5, 2))
    W = ss.sum_(U, V)
    assert W.dim == 4
    assert U.is_subspace_of(W) and V.is_subspace_of(W)


def test_complement_basics():
    x = ss.span([np.eye(2)[0]])
    assert ss.complement(x).equals(ss.span([np.eye(2)[1]]))
    assert ss.complement(ss.full(4)).dim == 0
    assert ss.complement(ss.zero(4)).dim == 4


@pytest.mark.parametrize("seed", range(50))
def test_double_complement(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 7))
    k = int(rng.integers(0, n + 1))
    U = ss.from_columns(randc(rng, n, k)) if k else ss.zero(n)
    C = ss.complement(U)
    assert U.dim + C.dim == n
    assert ss.intersect(U, C).dim == 0
    CC = ss.complement(C)
    assert CC.is_subspace_of(U) and U.is_subspace_of(CC)


def test_ambient_mismatch():
    with pytest.raises(ValueError):
        ss.intersect(ss.full(2), ss.full(3))
    with pytest.raises(ValueError):
        ss.sum_(ss.full(2), ss.full(3))


def test_projector_properties():
    rng = np.random.default_rng(5)
    U = ss.from_columns(randc(rng, 6, 3))
    Pm = U.projector()
    assert np.linalg.norm(Pm @ Pm - Pm) < 100 * U.tol
    assert np.linalg.norm(Pm - Pm.conj().T) < 100 * U.tol
    assert np.linalg.norm(U.frame.conj().T @ U.frame - np.eye(3)) < 10 * U.tol


def test_contains_consistent_with_span():
    rng = np.random.default_rng(6)
    vs = randc(rng, 2, 5)
    U = ss.span(list(vs))
    assert U.contains(vs[0] - 2j * vs[1])
    assert not U.contains(randc(rng, 5))


def test_respan_idempotent():
    rng = np.random.default_rng(7)
    U = ss.from_columns(randc(rng, 5, 3))
    assert ss.span(list(U.frame.T)).equals(U)


def test_relative_tolerance_is_scale_invariant():
    rng = np.random.default_rng(8)
    M = randc(rng, 4, 2) @ randc(rng, 2, 3)
    assert ss.from_columns(M).dim == ss.from_columns(1e-8 * M).dim == 2


def test_principal_angles_and_gap():
    e = np.eye(3)
    U = ss.span([e[0]])
    t = 0.3
    V = ss.span([np.cos(t) * e[0] + np.sin(t) * e[1]])
    assert np.allclose(ss.principal_angles(U, V), [t])
    assert np.isclose(ss.gap(U, V), np.sin(t))


def test_env_tolerance(monkeypatch):
    monkeypatch.setenv("RELSPEC_TOL", "1e-3")
    assert ss.default_tol() == 1e-3
    M = np.array([[1.0, 0.0], [0.0, 1e-4]])
    assert ss.from_columns(M).dim == 1
    monkeypatch.delenv("RELSPEC_TOL")
    assert ss.from_columns(M).dim == 2


def test_subspace_immutable():
    U = ss.full(2)
    with pytest.raises(ValueError):
        U.frame[0, 0] = 5


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7), st.integers(0, 7), st.integers(0, 7), st.integers(0, 2**31 - 1))
def test_dimension_formula(n, p, q, seed):
    rng = np.random.default_rng(seed)
    p, q = min(p, n), min(q, n)
    U = ss.from_columns(randc(rng, n, p)) if p else ss.zero(n)
    V = ss.from_columns(randc(rng, n, q)) if q else ss.zero(n)
    assert ss.intersect(U, V).dim + ss.sum_(U, V).dim == U.dim + V.dim
