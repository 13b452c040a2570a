"""Seeded instance generators and one property suite per result.

Each suite runs independent trials; trial ``i`` draws from the stream
``np.random.default_rng([seed, i])`` so results do not depend on the order
or parallelism of execution.  Failures carry JSON encodings of their inputs
(relation / model schemas of :mod:`relspec.io`) for replay.
"""

from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from relspec import io as rio
from relspec import relation as rel
from relspec import spectra
from relspec import subspace as ss
from relspec.banded import model as bm
from relspec.banded.model import LAURENT, TOEPLITZ, BandedModel
from relspec.banded.region import FLAGS, essential_region
from relspec.banded.symbol import LaurentSymbol, winding

PROFILES = ("operator", "pencil", "with_mv_part", "low_rank_kernel")
MAX_DIM = 12


@dataclass
class SuiteReport:
    suite_name: str
    seed: int
    trials: int
    failures: list = field(default_factory=list)
    max_residual: float = 0.0
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self):
        return {
            "suite_name": self.suite_name,
            "seed": self.seed,
            "trials": self.trials,
            "passed": self.passed,
            "failures": self.failures,
            "max_residual": self.max_residual,
            "notes": self.notes,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


@dataclass
class Trial:
    ok: bool
    residual: float = 0.0
    inputs: dict = field(default_factory=dict)
    detail: str = ""
    note: str = ""


# -- generators ----------------------------------------------------------------

def _rng(seed):
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def _randc(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def _dims(dims):
    if np.isscalar(dims):
        n = m = int(dims)
    else:
        n, m = (int(d) for d in dims)
    if not (1 <= n <= MAX_DIM and 1 <= m <= MAX_DIM):
        raise ValueError(f"dims must lie in [1, {MAX_DIM}], got {dims}")
    return n, m


def gen_relation(seed, dims, profile="operator") -> rel.Relation:
    """Reproducible random relation ``C^n -> C^m``; ``dims`` is ``n`` or ``(n, m)``.

    ``with_mv_part`` guarantees ``dim T(0) >= 1`` and ``low_rank_kernel``
    guarantees ``alpha(T) >= 1``.
    """
    n, m = _dims(dims)
    rng = _rng(seed)
    if profile == "operator":
        return rel.from_matrix(_randc(rng, m, n))
    if profile == "pencil":
        p = int(rng.integers(1, n + m + 1))
        return rel.from_pencil(_randc(rng, m, p), _randc(rng, n, p))
    if profile == "with_mv_part":
        d = int(rng.integers(1, m + 1))
        r = int(rng.integers(0, n + 1))
        gens = np.hstack([
            np.vstack([_randc(rng, n, r), _randc(rng, m, r)]),
            np.vstack([np.zeros((n, d)), _randc(rng, m, d)]),
        ])
        return rel.from_generators(list(gens.T), n, m)
    if profile == "low_rank_kernel":
        k = int(rng.integers(0, n))
        return rel.from_matrix(_randc(rng, m, k) @ _randc(rng, k, n))
    raise ValueError(f"unknown profile {profile!r}")


def gen_small_perturbation(T: rel.Relation, seed) -> rel.Relation:
    """``S`` with ``D(S) = X``, ``S(0) ⊆ T(0)`` and ``||S|| <= 0.9 min(gamma(T), 1)``."""
    rng = _rng(seed)
    n, m = T.dim_x, T.dim_y
    mv = rel.parts(T).mv_part
    s = int(rng.integers(0, mv.dim + 1))
    S0 = mv.frame @ _randc(rng, mv.dim, s) if s else np.zeros((m, 0))
    S0 = ss.from_columns(S0) if s else ss.zero(m)
    C = _randc(rng, m, n)
    C = C - S0.project(C)
    target = 0.9 * min(rel.min_modulus(T), 1.0) * rng.uniform(0.1, 1.0)
    norm = np.linalg.norm(C, 2)
    if norm > 0:
        C = C * (target / norm)
    gens = np.hstack([np.vstack([np.eye(n), C]),
                      np.vstack([np.zeros((n, S0.dim)), S0.frame])])
    return rel.from_generators(list(gens.T), n, m)


def perturbation_hypotheses(T, S) -> dict:
    pT, pS = rel.parts(T), rel.parts(S)
    return {
        "domain": pT.domain.is_subspace_of(pS.domain),
        "mv_part": pS.mv_part.is_subspace_of(pT.mv_part),
        "norm": rel.rel_norm(S) < rel.min_modulus(T),
    }


def _random_profile(rng):
    return PROFILES[int(rng.integers(len(PROFILES)))]


def _random_square(rng, nmax=8, profiles=PROFILES):
    n = int(rng.integers(1, nmax + 1))
    prof = profiles[int(rng.integers(len(profiles)))]
    return gen_relation(rng, n, prof), prof


def _regular_square(rng, nmax=6):
    """Square relation with ``dim G = n``, a regular pencil and at least one eigenvalue."""
    n = int(rng.integers(2, nmax + 1))
    kind = int(rng.integers(4))
    if kind == 0:
        T = rel.from_matrix(_randc(rng, n, n))
    elif kind == 1:
        T = rel.from_pencil(_randc(rng, n, n), _randc(rng, n, n))
    elif kind == 2:
        # multivalued part with a domain of complementary dimension
        d = int(rng.integers(1, n))
        gens = np.hstack([np.vstack([_randc(rng, n, n - d), _randc(rng, n, n - d)]),
                          np.vstack([np.zeros((n, d)), _randc(rng, n, d)])])
        T = rel.from_generators(list(gens.T), n, n)
    else:
        # repeated eigenvalue with geometric multiplicity >= 1
        mult = int(rng.integers(1, n + 1))
        ev = np.concatenate([np.full(mult, complex(*rng.standard_normal(2))),
                             _randc(rng, n - mult)])
        V = _randc(rng, n, n)
        T = rel.from_matrix(V @ np.diag(ev) @ np.linalg.inv(V))
    return T


def _enc(T):
    return rio.relation_to_dict(T)


def _cplx(z):
    return [float(complex(z).real), float(complex(z).imag)]


def _kappa_from_parts(T):
    fd = rel.fredholm_data(T)
    return fd.alpha - fd.beta


# -- finite-dimensional suites -----------------------------------------------

def _trial_graph_dimensions(rng):
    n, m = (int(x) for x in rng.integers(1, 9, size=2))
    T = gen_relation(rng, (n, m), _random_profile(rng))
    p = rel.parts(T)
    g = T.graph.dim
    # independent route: N(T) from G ∩ (X ⊕ 0), T(0) from G ∩ (0 ⊕ Y)
    X0 = ss.from_columns(np.vstack([np.eye(n), np.zeros((m, n))]))
    Y0 = ss.from_columns(np.vstack([np.zeros((n, m)), np.eye(m)]))
    ker2 = ss.intersect(T.graph, X0).dim
    mv2 = ss.intersect(T.graph, Y0).dim
    ok = (g == p.kernel.dim + p.range.dim == p.domain.dim + p.mv_part.dim
          and ker2 == p.kernel.dim and mv2 == p.mv_part.dim)
    return Trial(ok, 0.0, {"T": _enc(T)},
                 f"G={g} N={p.kernel.dim}/{ker2} R={p.range.dim} "
                 f"D={p.domain.dim} T0={p.mv_part.dim}/{mv2}")


def _trial_prop_2_3(rng):
    T, _ = _random_square(rng)
    S = gen_small_perturbation(T, rng)
    hyp = perturbation_hypotheses(T, S)
    TS = rel.add(T, S)
    fT, fTS = rel.fredholm_data(T), rel.fredholm_data(TS)
    ok = all(hyp.values()) and fTS.alpha <= fT.alpha and fTS.beta <= fT.beta
    gamma = rel.min_modulus(T)
    ratio = rel.rel_norm(S) / gamma if gamma < math.inf else 0.0
    return Trial(ok, ratio, {"T": _enc(T), "S": _enc(S)},
                 f"hyp={hyp} alpha {fT.alpha}->{fTS.alpha} beta {fT.beta}->{fTS.beta}")


def _trial_prop_2_5(rng):
    T, _ = _random_square(rng)
    S = gen_small_perturbation(T, rng)
    hyp = perturbation_hypotheses(T, S)
    kT, kTS = _kappa_from_parts(T), _kappa_from_parts(rel.add(T, S))
    return Trial(all(hyp.values()) and kT == kTS, 0.0, {"T": _enc(T), "S": _enc(S)},
                 f"hyp={hyp} kappa {kT}->{kTS}")


def _trial_prop_3_2(rng):
    T, _ = _random_square(rng)
    spec = spectra.spectrum(T)
    if isinstance(spec, str) or len(spec) == 0 or rng.random() < 0.3:
        lam = complex(*rng.standard_normal(2))
    else:
        lam = complex(spec[int(rng.integers(len(spec)))])
    Tc = rel.conjugate(T)
    f = rel.fredholm_data(rel.shift(T, lam))
    fc = rel.fredholm_data(rel.shift(Tc, lam.conjugate()))
    ok = fc.alpha == f.beta and fc.beta == f.alpha
    return Trial(ok, 0.0, {"T": _enc(T), "lambda": _cplx(lam)},
                 f"alpha/beta ({f.alpha},{f.beta}) vs adjoint ({fc.alpha},{fc.beta})")


def weyl_correction_checks(T, lam, K) -> dict:
    L = rel.shift(T, lam)
    pL, pK = rel.parts(L), rel.parts(K)
    return {
        "rank": pK.range.dim == pL.kernel.dim,
        "resolvent": spectra.classify_point(rel.add(T, K), lam).in_resolvent,
        "kernels": ss.intersect(pL.kernel, pK.kernel).dim == 0,
        "ranges": ss.intersect(pL.range, pK.range).dim == 0,
    }


def _trial_prop_3_4(rng):
    T = _regular_square(rng)
    spec = spectra.spectrum(T)
    if isinstance(spec, str) or len(spec) == 0:
        return Trial(False, 0.0, {"T": _enc(T)}, "generator produced no eigenvalue")
    lam = complex(spec[int(rng.integers(len(spec)))])
    K = spectra.weyl_correction(T, lam)
    checks = weyl_correction_checks(T, lam, K)
    return Trial(all(checks.values()), 0.0, {"T": _enc(T), "lambda": _cplx(lam)},
                 str(checks))


def _trial_prop_3_5(rng):
    n = int(rng.integers(2, 7))
    T = gen_relation(rng, n, "low_rank_kernel")
    S = rel.from_matrix(_randc(rng, n, n))
    gamma = rel.min_modulus(T)
    g = min(gamma, 1.0)
    nu = 0.5 * g / max(1.0, rel.rel_norm(S))
    counts = []
    for radius in (nu / 2, nu / 4):
        for t in 2 * np.pi * np.arange(64) / 64:
            lam = radius * np.exp(1j * t)
            fd = rel.fredholm_data(rel.add(T, rel.scale(S, lam)))
            counts.append((fd.alpha, fd.beta))
    outer, inner = set(counts[:64]), set(counts[64:])
    ok = len(inner) == 1
    note = "" if len(outer | inner) == 1 else "constant only on the inner circle"
    return Trial(ok, 0.0, {"T": _enc(T), "S": _enc(S), "nu": nu},
                 f"values {sorted(outer | inner)}", note)


def _trial_prop_5_1(rng):
    n, m, z = (int(x) for x in rng.integers(1, 7, size=3))
    T = gen_relation(rng, (n, m), _random_profile(rng))
    k = int(rng.integers(0, m + 1))
    C = _randc(rng, z, k) @ _randc(rng, k, m)
    mvT = rel.parts(T).mv_part
    if mvT.dim and rng.random() < 0.5:
        # force N(S) to meet T(0)
        t = mvT.frame[:, 0]
        C = C - np.outer(C @ t, t.conj())
    d = int(rng.integers(0, z + 1))
    gens = np.hstack([np.vstack([np.eye(m), C]),
                      np.vstack([np.zeros((m, d)), _randc(rng, z, d)])])
    S = rel.from_generators(list(gens.T), m, z)
    ST = rel.compose(S, T)
    lhs = _kappa_from_parts(ST)
    meet = ss.intersect(mvT, rel.parts(S).kernel).dim
    rhs = _kappa_from_parts(T) + _kappa_from_parts(S) - meet
    return Trial(lhs == rhs, 0.0, {"T": _enc(T), "S": _enc(S)},
                 f"kappa(ST)={lhs} rhs={rhs} meet={meet}")


def _resolvent_point(rng, T, margin=0.5):
    spec = spectra.spectrum(T)
    for _ in range(100):
        mu = complex(*(2 * rng.standard_normal(2)))
        if isinstance(spec, str):
            break
        if len(spec) == 0 or np.min(np.abs(spec - mu)) > margin:
            if spectra.classify_point(T, mu).in_resolvent:
                return mu
    return None


def _match_sets(a, b, tol):
    """Bijective matching of two finite point sets within a relative tolerance."""
    from scipy.optimize import linear_sum_assignment

    if len(a) != len(b):
        return False, math.inf
    if len(a) == 0:
        return True, 0.0
    cost = np.abs(a[:, None] - b[None, :])
    r, c = linear_sum_assignment(cost)
    err = float(np.max(cost[r, c] / np.maximum(1.0, np.abs(b[c]))))
    return err <= tol, err


def _trial_thm_5_2(rng):
    T = _regular_square(rng)
    mu = _resolvent_point(rng, T)
    if mu is None:
        return Trial(False, 0.0, {"T": _enc(T)}, "no resolvent point found")
    lam = complex(*(2 * rng.standard_normal(2)))
    if abs(lam - mu) < 1e-3:
        lam = mu + 1.0
    check = spectra.mobius_factor_check(T, mu, lam)
    ok, resid, detail = check.holds, check.residual, f"factor residual {check.residual:.3e}"
    spec = spectra.spectrum(T)
    if rel.parts(T).mv_part.dim == 0 and not isinstance(spec, str):
        Tmu = rel.operator_part(spectra.mobius_resolvent(T, mu)).standard
        mapped = 1.0 / (mu - spec)
        good, err = _match_sets(np.linalg.eigvals(Tmu), mapped, 1e-8)
        ok = ok and good
        resid = max(resid, err)
        detail += f", point map error {err:.3e}"
    return Trial(ok, resid, {"T": _enc(T), "mu": _cplx(mu), "lambda": _cplx(lam)}, detail)


def _trial_thm_5_3(rng):
    n = int(rng.integers(2, 7))
    A = _randc(rng, n, n)
    r = int(rng.integers(1, n))
    Kmat = _randc(rng, n, r) @ _randc(rng, r, n)
    T, S = rel.from_matrix(A), rel.from_matrix(A + Kmat)
    for _ in range(100):
        mu = complex(*(3 * rng.standard_normal(2)))
        if spectra.in_resolvent(T, mu) and spectra.in_resolvent(S, mu):
            break
    Tmu = rel.operator_part(spectra.mobius_resolvent(T, mu)).standard
    Smu = rel.operator_part(spectra.mobius_resolvent(S, mu)).standard
    s = np.linalg.svd(Tmu - Smu, compute_uv=False)
    rank = ss.numerical_rank(s, 1e-9)
    lam = complex(*rng.standard_normal(2))
    same = _kappa_from_parts(rel.shift(T, lam)) == _kappa_from_parts(rel.shift(S, lam))
    return Trial(rank <= r and same, 0.0,
                 {"T": _enc(T), "S": _enc(S), "mu": _cplx(mu)},
                 f"rank(T_mu - S_mu)={rank} <= {r}, index equal: {same}")


def _trial_prop_4_1(rng):
    n = int(rng.integers(1, 3))
    A = _randc(rng, n, n)
    T = rel.from_matrix(A)
    gamma = rel.min_modulus(T)
    predicted = gamma / (1 + gamma) if gamma < math.inf else 1.0
    est = rel.graph_norm_gamma_estimate(T, 100_000, seed=int(rng.integers(2**31)))
    err = abs(est.estimate - predicted) / predicted
    return Trial(err <= 0.05 and est.estimate >= predicted * (1 - 1e-9), err,
                 {"T": _enc(T)}, f"estimate {est.estimate:.6f} vs {predicted:.6f}")


# -- banded suites --------------------------------------------------------------

WEYL_SYMBOLS = (
    (TOEPLITZ, {1: 1.0}),
    (LAURENT, {1: 1.0}),
    (TOEPLITZ, {1: 1.0, -1: 0.5, 2: 0.25}),
    (LAURENT, {1: 1.0, -1: 1.0}),
    (TOEPLITZ, {-2: 1.0, 1: 0.3}),
)
WEYL_BOUNDS = (-2.5, 2.5, -2.5, 2.5)
GRID_TRUNC = (100, 200, 400)
WEYL_RES = (96, 96)


def fixed_models():
    return [BandedModel(sp, LaurentSymbol.from_coeffs(c)) for sp, c in WEYL_SYMBOLS]


def gen_finite_rank(rng, max_rank=3, support=6):
    """Random ``F = sum u <v, .>`` with at most ``max_rank`` terms on ``[0, support)``."""
    pairs = []
    for _ in range(int(rng.integers(1, max_rank + 1))):
        vecs = []
        for _ in range(2):
            idx = rng.choice(support, size=int(rng.integers(1, 4)), replace=False)
            vecs.append({int(k): complex(*rng.standard_normal(2)) for k in idx})
        pairs.append(tuple(vecs))
    return tuple(pairs)


def gen_model(rng, space=None, max_band=2, perturb=True, mv=False) -> BandedModel:
    space = space or (TOEPLITZ if rng.random() < 0.5 else LAURENT)
    p, q = (int(x) for x in rng.integers(0, max_band + 1, size=2))
    if p + q == 0:
        q = 1
    coeffs = {k: complex(*rng.standard_normal(2)) / (1 + abs(k))
              for k in range(-p, q + 1) if rng.random() < 0.8 or k == q}
    pert = gen_finite_rank(rng) if perturb and rng.random() < 0.7 else ()
    mvp = ({int(rng.integers(0, 4)): 1.0},) if mv else ()
    return BandedModel(space, LaurentSymbol.from_coeffs(coeffs), pert, mvp)


def _model_bounds(T, pad=0.5):
    c = T.symbol.curve(max_step=0.05)
    r = float(np.max(np.abs(c))) + pad
    return (-r, r, -r, r)


WEYL_COLUMNS = ("re", "im", "e1", "e2", "e3", "e4")
PROBE_SIZE = 800


@lru_cache(maxsize=16)
def _weyl_reference(T):
    return essential_region(T, WEYL_BOUNDS, WEYL_RES, GRID_TRUNC).to_csv(columns=WEYL_COLUMNS)


def _off_curve_point(rng, T, bounds, margin=0.2):
    re0, re1, im0, im1 = bounds
    while True:
        lam = complex(rng.uniform(re0, re1), rng.uniform(im0, im1))
        if T.symbol.distance(lam) >= margin:
            return lam


def _trial_thm_4_4(rng, trial):
    """All five symbols get an independent rank <= 3 perturbation.

    Trial 0 also covers a model with a one-dimensional multivalued part.
    One off-curve and one on-curve point per trial are cross-checked with
    the singular-value probe of a large truncation.
    """
    models = [BandedModel(sp, LaurentSymbol.from_coeffs(c)) for sp, c in WEYL_SYMBOLS]
    if trial == 0:
        models.append(replace(models[0], mv_part=({0: 1.0},)))
    diffs, detail = 0, []
    inputs = {}
    for T in models:
        TF = T.with_perturbation(gen_finite_rank(rng))
        csv_f = essential_region(TF, WEYL_BOUNDS, WEYL_RES, GRID_TRUNC).to_csv(columns=WEYL_COLUMNS)
        if csv_f != _weyl_reference(T):
            diffs += 1
            inputs.setdefault("models", []).append(
                {"T": rio.model_to_dict(T), "TF": rio.model_to_dict(TF)})
    T = models[trial % len(WEYL_SYMBOLS)]
    TF = T.with_perturbation(gen_finite_rank(rng))
    off = _off_curve_point(rng, T, WEYL_BOUNDS)
    on = complex(T.symbol.on_circle(rng.uniform(0, 2 * np.pi)))
    probes = {"off": bm.truncation_probe(TF, off, PROBE_SIZE),
              "on": bm.truncation_probe(TF, on, PROBE_SIZE)}
    grid_says = {"off": bm.fredholm_classify(TF, off).is_fredholm,
                 "on": bm.fredholm_classify(TF, on).is_semi_fredholm}
    agree = probes["off"].fredholm == grid_says["off"] and \
        probes["on"].fredholm == grid_says["on"]
    if not agree:
        inputs["probe"] = {"TF": rio.model_to_dict(TF), "off": _cplx(off), "on": _cplx(on)}
    detail.append(f"{diffs} models with differing e1..e4 columns")
    detail.append("probe " + ", ".join(
        f"{k}: sv={p.singular_value:.3g} fredholm={p.fredholm} expected={grid_says[k]}"
        for k, p in probes.items()))
    return Trial(diffs == 0 and agree, float(diffs), inputs, "; ".join(detail))


def _trial_inclusion_chain(rng):
    T = gen_model(rng, mv=rng.random() < 0.2)
    g = essential_region(T, _model_bounds(T), (48, 48), GRID_TRUNC)
    bad = int((~g.chain_holds()).sum())
    return Trial(bad == 0, float(bad), {"T": rio.model_to_dict(T)}, f"{bad} cells break the chain")


def _trial_component_constancy(rng):
    T = gen_model(rng)
    g = essential_region(T, _model_bounds(T), (48, 48), detect_eigenvalues=False)
    bad = []
    for rec in g.components:
        mask = g.component_id == rec["id"]
        vals = np.unique(g.winding[mask])
        if len(vals) != 1:
            bad.append(f"component {rec['id']} windings {vals.tolist()}")
            continue
        # cross-check one cell with argument summation
        ii, jj = np.nonzero(mask)
        k = int(rng.integers(len(ii)))
        lam = complex(g.re[jj[k]], g.im[ii[k]])
        w = winding(T.symbol, lam)
        if w != vals[0]:
            bad.append(f"component {rec['id']}: grid {vals[0]} vs summation {w} at {lam}")
    return Trial(not bad, float(len(bad)), {"T": rio.model_to_dict(T)}, "; ".join(bad))


def _trial_prop_2_6a(rng):
    T = gen_model(rng, perturb=False)
    TF = T.with_perturbation(gen_finite_rank(rng))
    for _ in range(100):
        lam = complex(*rng.uniform(-2, 2, size=2))
        if T.symbol.distance(lam) >= 0.2:
            break
    f0, f1 = bm.fredholm_classify(T, lam), bm.fredholm_classify(TF, lam)
    probe = bm.truncation_probe(TF, lam, n=200)
    ok = f1.fredholm_class == "Phi" and f1.kappa == f0.kappa and probe.fredholm
    return Trial(ok, probe.singular_value,
                 {"T": rio.model_to_dict(TF), "lambda": _cplx(lam)},
                 f"class {f1.fredholm_class}, kappa {f0.kappa}->{f1.kappa}, "
                 f"probe sv {probe.singular_value:.3g}")


def _trial_prop_3_2_banded(rng):
    T = gen_model(rng, mv=rng.random() < 0.3)
    r = _model_bounds(T)[1]
    g = essential_region(T, (-r, r, -r, r), (48, 48), detect_eigenvalues=False)
    gc = essential_region(bm.conjugate_model(T), (-r, r, -r, r), (48, 48),
                          detect_eigenvalues=False)
    diff = 0
    for f in ("e1", "e3", "e4"):
        diff += int((g.flags[f] != gc.flags[f][::-1]).sum())
    return Trial(diff == 0, float(diff), {"T": rio.model_to_dict(T)},
                 f"{diff} cells differ from the conjugate reflection")


def _wrap(fn):
    return lambda rng, trial: fn(rng)


SUITES = {
    "graph_dimension_identities": (_wrap(_trial_graph_dimensions), 500),
    "prop_2_3_nullity_monotone": (_wrap(_trial_prop_2_3), 500),
    "prop_2_5_index_stability": (_wrap(_trial_prop_2_5), 500),
    "prop_2_6a_finite_rank_phi_minus": (_wrap(_trial_prop_2_6a), 50),
    "prop_3_2_conjugate_duality": (_wrap(_trial_prop_3_2), 300),
    "prop_3_2_conjugate_duality_banded": (_wrap(_trial_prop_3_2_banded), 10),
    "prop_3_4_weyl_correction": (_wrap(_trial_prop_3_4), 200),
    "prop_3_5_punctured_annulus": (_wrap(_trial_prop_3_5), 100),
    "prop_3_9_inclusion_chain": (_wrap(_trial_inclusion_chain), 10),
    "prop_3_10_component_constancy": (_wrap(_trial_component_constancy), 10),
    "prop_4_1_graph_gamma": (_wrap(_trial_prop_4_1), 20),
    "thm_4_4_weyl_invariance_banded": (_trial_thm_4_4, 20),
    "prop_5_1_index_theorem": (_wrap(_trial_prop_5_1), 300),
    "thm_5_2_mobius_factorization": (_wrap(_trial_thm_5_2), 200),
    "thm_5_3_resolvent_difference": (_wrap(_trial_thm_5_3), 200),
}


def suite_names():
    return sorted(SUITES)


def run_suite(name, seed=0, trials=None, workers=1) -> SuiteReport:
    """Run one named suite; ``trials`` defaults to the suite's standard count."""
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {', '.join(suite_names())}")
    fn, default = SUITES[name]
    trials = default if trials is None else int(trials)
    if trials < 1:
        raise ValueError("trials must be positive")

    def one(i):
        return fn(np.random.default_rng([seed, i]), i)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(one, range(trials)))
    else:
        results = [one(i) for i in range(trials)]
    report = SuiteReport(name, seed, trials)
    for i, t in enumerate(results):
        report.max_residual = max(report.max_residual, float(t.residual))
        if not t.ok:
            report.failures.append({"trial": i, "inputs": t.inputs, "detail": t.detail})
        if t.note:
            report.notes.append({"trial": i, "note": t.note})
    return report


def run_all(seed=0, trials=None, workers=1) -> list:
    return [run_suite(name, seed, trials, workers) for name in suite_names()]
