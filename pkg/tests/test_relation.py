import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relspec import relation as rel
from relspec import subspace as ss
from relspec.relation import INF, FredholmData
from relspec.verify import gen_relation

from oracles import min_nonzero_singular_value, sample_sup_norm

PROFILES = ("operator", "pencil", "with_mv_part", "low_rank_kernel")


def randc(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def dims(T):
    return tuple(s.dim for s in rel.parts(T))


def purely_multivalued(m=1, n=1):
    gens = [np.concatenate([np.zeros(n), e]) for e in np.eye(m)]
    return rel.from_generators(gens, n, m)


def test_identity_parts():
    T = rel.build("operator_matrix", np.eye(3))
    assert dims(T) == (3, 3, 0, 0)


def test_identity_graph_is_diagonal():
    T = rel.from_matrix(np.eye(2))
    assert T.graph.contains(np.array([1, 2, 1, 2], dtype=complex))


def test_zero_matrix_parts():
    assert dims(rel.from_matrix(np.zeros((2, 2)))) == (2, 0, 2, 0)


def test_purely_multivalued_two_paths():
    G = rel.build("graph_generators", [np.array([0.0, 1.0])], 1, 1)
    Pn = rel.build("pencil", (np.array([[1.0]]), np.array([[0.0]])))
    assert dims(G) == (0, 1, 0, 1)
    assert G.graph.equals(Pn.graph)


def test_build_shape_errors():
    with pytest.raises(ValueError):
        rel.build("pencil", (np.ones((2, 3)), np.ones((2, 2))))
    with pytest.raises(ValueError):
        rel.build("graph_generators", [np.ones(3)], 1, 1)
    with pytest.raises(ValueError):
        rel.build("operator_matrix", np.ones((2, 3)), 2, 2)
    with pytest.raises(ValueError):
        rel.build("bogus", None)


@pytest.mark.parametrize("seed", range(100))
def test_graph_dimension_identities(seed):
    rng = np.random.default_rng(seed)
    n, m = rng.integers(1, 6, size=2)
    T = gen_relation(seed, (int(n), int(m)), PROFILES[seed % 4])
    d, r, k, mv = dims(T)
    assert T.graph.dim == k + r == d + mv


def test_random_graph_dim3_in_c2_c3():
    rng = np.random.default_rng(0)
    T = rel.from_generators(list(randc(rng, 3, 5)), 2, 3)
    d, r, k, mv = dims(T)
    assert T.graph.dim == 3 == d + mv == k + r


@pytest.mark.parametrize("seed", range(50))
def test_inverse_swaps_parts(seed):
    T = gen_relation(seed, (4, 3), PROFILES[seed % 4])
    Ti = rel.inverse(T)
    p, q = rel.parts(T), rel.parts(Ti)
    assert q.domain.equals(p.range) and q.range.equals(p.domain)
    assert q.kernel.equals(p.mv_part) and q.mv_part.equals(p.kernel)
    assert rel.inverse(Ti).graph.equals(T.graph)


def test_inverse_of_identity_and_zero():
    assert rel.inverse(rel.identity(3)).graph.equals(rel.identity(3).graph)
    Z = rel.inverse(rel.from_matrix(np.zeros((2, 2))))
    assert dims(Z) == (0, 2, 0, 2)


def test_conjugate_self_adjoint():
    rng = np.random.default_rng(1)
    A = randc(rng, 3, 3)
    H = A + A.conj().T
    assert rel.conjugate(rel.from_matrix(H)).graph.equals(rel.from_matrix(H).graph)


def test_conjugate_of_matrix_is_hermitian_transpose():
    rng = np.random.default_rng(2)
    A = randc(rng, 3, 4)
    C = rel.conjugate(rel.from_matrix(A))
    assert (C.dim_x, C.dim_y) == (3, 4)
    assert C.graph.equals(rel.from_matrix(A.conj().T).graph)


def test_conjugate_of_purely_multivalued():
    T = purely_multivalued(m=2, n=3)
    C = rel.conjugate(T)
    fT, fC = rel.fredholm_data(T), rel.fredholm_data(C)
    assert fC.alpha == fT.beta == 0
    assert fC.beta == fT.alpha == 0
    # D(T') = T(0)^perp = 0, so T' is purely multivalued with T'(0) = X
    assert rel.parts(C).mv_part.dim == T.dim_x - rel.parts(T).domain.dim == 3


@pytest.mark.parametrize("seed", range(60))
def test_conjugate_duality_and_involution(seed):
    T = gen_relation(seed, (3, 4), PROFILES[seed % 4])
    C = rel.conjugate(T)
    fT, fC = rel.fredholm_data(T), rel.fredholm_data(C)
    assert (fC.alpha, fC.beta) == (fT.beta, fT.alpha)
    assert rel.parts(C).mv_part.dim == T.dim_x - rel.parts(T).domain.dim
    assert rel.conjugate(C).graph.equals(T.graph)


def test_shift_examples():
    n = 3
    L = rel.shift(rel.identity(n), 1)
    assert rel.parts(L).kernel.dim == n
    rng = np.random.default_rng(3)
    T = gen_relation(rng, 4, "with_mv_part")
    assert dims(rel.shift(T, 0)) == dims(T)
    assert rel.shift(T, 2 - 1j).graph.dim == T.graph.dim
    with pytest.raises(ValueError):
        rel.shift(rel.from_matrix(np.ones((2, 3))), 1)


def test_shift_keeps_dim_for_tiny_scale():
    T = purely_multivalued(2, 2)
    assert rel.scale(T, 1e-14).graph.dim == T.graph.dim


def test_kappa_constant_under_shift():
    rng = np.random.default_rng(4)
    for prof in PROFILES:
        T = gen_relation(rng, 4, prof)
        for lam in randc(rng, 5):
            assert rel.kappa(rel.shift(T, lam)) == T.graph.dim - 4
            fd = rel.fredholm_data(rel.shift(T, lam))
            assert fd.alpha - fd.beta == T.graph.dim - 4


def test_add_examples():
    rng = np.random.default_rng(5)
    A = randc(rng, 3, 3)
    T = rel.from_matrix(A)
    Z = rel.from_matrix(np.zeros((3, 3)))
    assert rel.add(T, Z).graph.equals(T.graph)
    assert rel.add(T, rel.from_matrix(-A)).graph.equals(Z.graph)


def test_add_restricts_domain():
    T = rel.from_generators([np.array([1, 0, 1, 0.0])], 2, 2)
    S = rel.from_matrix(np.eye(2))
    TS = rel.add(T, S)
    assert rel.parts(TS).domain.equals(rel.parts(T).domain)


@pytest.mark.parametrize("seed", range(30))
def test_add_associative_full_domain(seed):
    rng = np.random.default_rng(seed)
    T, S, R = (gen_relation(rng, 3, p) for p in ("operator", "with_mv_part", "operator"))
    lhs = rel.add(rel.add(T, S), R)
    rhs = rel.add(T, rel.add(S, R))
    assert lhs.graph.equals(rhs.graph)


def test_compose_examples():
    rng = np.random.default_rng(6)
    T = gen_relation(rng, (3, 4), "with_mv_part")
    assert rel.compose(rel.identity(4), T).graph.equals(T.graph)
    A = randc(rng, 3, 3)
    TA = rel.from_matrix(A)
    assert rel.compose(rel.inverse(TA), TA).graph.equals(rel.identity(3).graph)
    with pytest.raises(ValueError):
        rel.compose(rel.identity(2), rel.identity(3))


def test_compose_with_purely_multivalued_and_zero():
    # regression: an all-roundoff frame must not become a subspace
    T = purely_multivalued(m=5, n=6)
    S = rel.from_matrix(np.zeros((6, 5)))
    ST = rel.compose(S, T)
    assert ST.graph.dim == 0


def test_operator_part_matrix():
    rng = np.random.default_rng(7)
    A = randc(rng, 3, 4)
    assert np.allclose(rel.operator_part(rel.from_matrix(A)).standard, A)


def test_operator_part_purely_multivalued():
    op = rel.operator_part(purely_multivalued(2, 2))
    assert op.domain.dim == 0 and op.coords.shape == (2, 0)


@pytest.mark.parametrize("seed", range(20))
def test_operator_part_well_defined(seed):
    rng = np.random.default_rng(seed)
    T = gen_relation(rng, 4, "with_mv_part")
    p = rel.parts(T)
    if p.domain.dim == 0:
        return
    # two different graph vectors with the same x-part
    c = randc(rng, T.graph.dim)
    g1 = T.graph.frame @ c
    g2 = g1 + np.concatenate([np.zeros(4), p.mv_part.frame @ randc(rng, p.mv_part.dim)])
    assert T.graph.contains(g2, 1e-9)
    Q = np.eye(4) - p.mv_part.projector()
    op = rel.operator_part(T).standard
    for g in (g1, g2):
        assert np.linalg.norm(Q @ g[4:] - op @ g[:4]) < 1e-9


def test_norm_examples():
    assert math.isclose(rel.rel_norm(rel.identity(2)), 1.0)
    assert math.isclose(rel.rel_norm(rel.from_matrix(np.diag([3.0, 4.0]))), 4.0)
    assert rel.rel_norm(purely_multivalued(2, 2)) == 0.0


def test_norm_with_multivalued_direction_sampling_oracle():
    rng = np.random.default_rng(8)
    A = randc(rng, 2, 2)
    T = rel.from_generators(list(np.vstack([np.eye(2), A]).T) + [np.array([0, 0, 1, 0])], 2, 2)
    assert T.graph.contains(np.concatenate([[0, 0], [1, 0]]))
    PA = np.diag([0, 1]) @ A
    want = np.linalg.norm(PA, 2)
    assert math.isclose(rel.rel_norm(T), want, rel_tol=1e-12)
    assert abs(sample_sup_norm(PA, 100_000, rng) - rel.rel_norm(T)) < 1e-3 * want


def test_min_modulus_examples():
    assert math.isclose(rel.min_modulus(rel.identity(3)), 1.0)
    assert rel.min_modulus(rel.from_matrix(np.zeros((2, 2)))) == INF


@pytest.mark.parametrize("seed", range(100))
def test_min_modulus_inverse_norm_duality(seed):
    rng = np.random.default_rng(seed)
    T = gen_relation(rng, (int(rng.integers(1, 6)), int(rng.integers(1, 6))), PROFILES[seed % 4])
    g = rel.min_modulus(T)
    if g == INF:
        return
    assert abs(g * rel.rel_norm(rel.inverse(T)) - 1) < 1e-8


@pytest.mark.parametrize("seed", range(20))
def test_min_modulus_eigvalsh_oracle(seed):
    rng = np.random.default_rng(seed)
    A = randc(rng, 4, 2) @ randc(rng, 2, 5)
    assert math.isclose(rel.min_modulus(rel.from_matrix(A)), min_nonzero_singular_value(A),
                        rel_tol=1e-8)


@pytest.mark.parametrize("A", [np.eye(2), np.diag([2.0, 3.0])])
def test_graph_gamma_estimate(A):
    T = rel.from_matrix(A)
    g = rel.min_modulus(T)
    est = rel.graph_norm_gamma_estimate(T, 100_000)
    assert est.samples == 100_000
    assert abs(est.estimate - g / (1 + g)) <= 0.05 * g / (1 + g)


def test_graph_gamma_conventions():
    assert rel.graph_norm_gamma_estimate(rel.from_matrix(np.zeros((2, 2))), 1000).estimate == INF
    with pytest.raises(ValueError):
        rel.graph_norm_gamma_estimate(rel.identity(2), 10)
    with pytest.raises(ValueError):
        rel.graph_norm_gamma_estimate(purely_multivalued(2, 2), 1000)


def test_fredholm_data_conventions():
    assert FredholmData.from_counts(INF, 2).kappa == INF
    assert FredholmData.from_counts(1, INF).kappa == -INF
    assert FredholmData.from_counts(INF, INF).fredholm_class == rel.NOT_SEMI_FREDHOLM
    assert FredholmData.from_counts(INF, 0).fredholm_class == rel.PHI_MINUS_ONLY
    assert FredholmData.from_counts(0, INF).fredholm_class == rel.PHI_PLUS_ONLY
    fd = FredholmData.from_counts(2, 1)
    assert fd.kappa == 1 and fd.is_fredholm
    assert FredholmData.from_counts(INF, 1).to_dict()["kappa"] == "inf"


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 6), st.integers(1, 6), st.sampled_from(PROFILES), st.integers(0, 2**31 - 1))
def test_property_dimension_identities(n, m, profile, seed):
    T = gen_relation(seed, (n, m), profile)
    d, r, k, mv = dims(T)
    assert T.graph.dim == k + r == d + mv
    assert rel.kappa(T) == k - (m - r)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 5), st.sampled_from(PROFILES), st.integers(0, 2**31 - 1))
def test_property_profile_contracts(n, profile, seed):
    T = gen_relation(seed, n, profile)
    if profile == "with_mv_part":
        assert rel.parts(T).mv_part.dim >= 1
    if profile == "low_rank_kernel":
        assert rel.alpha(T) >= 1
    assert gen_relation(seed, n, profile).graph.equals(T.graph, atol=0)


def test_ss_module_used_for_parts():
    # parts are proper Subspace objects in the right ambient spaces
    p = rel.parts(rel.from_matrix(np.ones((2, 3))))
    assert isinstance(p.domain, ss.Subspace)
    assert (p.domain.ambient_dim, p.range.ambient_dim) == (3, 2)
