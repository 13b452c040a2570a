"""Banded Laurent/Toeplitz models with finite-rank and multivalued parts.

A model is ``T = T(a) + F`` on l2(Z) (Laurent) or l2(N) (Toeplitz), where
``T(a)`` has matrix entries ``a_{j-k}`` (so ``a(z) = z`` is the forward
shift), ``F = sum_i u_i <v_i, .>`` has finite rank, ``mv_part`` spans the
multivalued part ``T(0) = M`` and ``domain_constraints`` cut ``D(T)`` down to
the orthogonal complement of their span.  The last field only arises as the
adjoint of a model with a multivalued part.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from math import comb
from typing import NamedTuple

import numpy as np
import scipy.linalg

from relspec.relation import INF, NOT_SEMI_FREDHOLM, FredholmData
from relspec.banded.symbol import (
    LaurentSymbol,
    OnCurveError,
    laurent_roots,
    winding,
)

LAURENT = "laurent"
TOEPLITZ = "toeplitz"

DEFAULT_TRUNC_SIZES = (200, 400, 800)
TOL_PERSIST = 1e-4
NEAR_CURVE_ROOT = 1e-8


def sparse(vec) -> tuple:
    """Normalize ``{index: value}`` or ``[(index, value), ...]`` to sorted pairs."""
    items = vec.items() if isinstance(vec, dict) else vec
    out = {}
    for k, v in items:
        if int(k) != k:
            raise ValueError(f"sparse index must be an integer, got {k!r}")
        out[int(k)] = out.get(int(k), 0j) + complex(v)
    return tuple(sorted((k, v) for k, v in out.items() if v != 0))


def _dense(vecs, idx):
    """Columns of ``vecs`` (sparse pairs) restricted to the index array ``idx``."""
    pos = {int(k): i for i, k in enumerate(idx)}
    out = np.zeros((len(idx), len(vecs)), dtype=complex)
    for j, vec in enumerate(vecs):
        for k, v in vec:
            if k in pos:
                out[pos[k], j] = v
    return out


def _sparse_rank(vecs, tol=1e-10):
    if not vecs:
        return 0
    support = sorted({k for vec in vecs for k, _ in vec})
    if not support:
        return 0
    s = np.linalg.svd(_dense(vecs, np.array(support)), compute_uv=False)
    return int(np.count_nonzero(s > tol * s.max()))


@dataclass(frozen=True)
class BandedModel:
    space: str
    symbol: LaurentSymbol
    perturbation: tuple = ()
    mv_part: tuple = ()
    domain_constraints: tuple = ()

    def __post_init__(self):
        if self.space not in (LAURENT, TOEPLITZ):
            raise ValueError(f"space must be 'laurent' or 'toeplitz', got {self.space!r}")
        pert = tuple((sparse(u), sparse(v)) for u, v in self.perturbation)
        mv = tuple(sparse(m) for m in self.mv_part)
        cons = tuple(sparse(c) for c in self.domain_constraints)
        object.__setattr__(self, "perturbation", pert)
        object.__setattr__(self, "mv_part", mv)
        object.__setattr__(self, "domain_constraints", cons)
        if self.space == TOEPLITZ:
            every = [k for u, v in pert for k, _ in u + v]
            every += [k for vec in mv + cons for k, _ in vec]
            if any(k < 0 for k in every):
                raise ValueError("Toeplitz model vectors must be supported on k >= 0")
        if self.space == TOEPLITZ and self.symbol.is_rational:
            raise ValueError("rational symbols are supported on the Laurent model only")

    @property
    def dim_mv(self) -> int:
        return _sparse_rank(self.mv_part)

    @property
    def codim_domain(self) -> int:
        return _sparse_rank(self.domain_constraints)

    @property
    def perturbation_rank(self) -> int:
        if not self.perturbation:
            return 0
        support = sorted({k for u, v in self.perturbation for k, _ in u + v})
        idx = np.array(support)
        U = _dense([u for u, _ in self.perturbation], idx)
        V = _dense([v for _, v in self.perturbation], idx)
        s = np.linalg.svd(U @ V.conj().T, compute_uv=False)
        return int(np.count_nonzero(s > 1e-10 * max(s.max(), 1e-300)))

    def with_perturbation(self, pairs) -> BandedModel:
        return replace(self, perturbation=tuple(self.perturbation) + tuple(pairs))

    def index_shift(self) -> int:
        """Index contribution of the multivalued part and domain constraints."""
        return self.dim_mv - self.codim_domain

    def kappa(self, wind: int) -> int:
        base = -wind if self.space == TOEPLITZ else 0
        return base + self.index_shift()


# -- classification --------------------------------------------------------

def fredholm_classify(T: BandedModel, lam, tol=None) -> FredholmData:
    """Semi-Fredholm classification of ``lam - T``.

    Off the symbol curve ``lam - T(a)`` is Fredholm with index ``-wind``
    (Toeplitz) or 0 (Laurent); finite-rank perturbations leave it unchanged
    and the multivalued part / domain constraints shift it by
    ``dim M - codim D``.  On the curve it is not semi-Fredholm.  ``alpha`` and
    ``beta`` are the generic values ``max(0, +-kappa)``.
    """
    tol = T.symbol.curve_tol() if tol is None else tol
    try:
        w = winding(T.symbol, lam, tol=tol)
    except OnCurveError:
        return FredholmData(None, INF, None, False, NOT_SEMI_FREDHOLM)
    k = T.kappa(w)
    return FredholmData.from_counts(max(0, k), max(0, -k), generic=True)


# -- conjugate and Möbius ----------------------------------------------------

def conjugate_model(T: BandedModel) -> BandedModel:
    """Adjoint model: symbol ``conj(a(1/conj z))``, swapped rank-one pairs.

    ``F = sum u <v, .>`` has adjoint ``sum v <u, .>``.  A multivalued part
    ``M`` becomes the domain restriction ``D(T') = M^perp`` and vice versa.
    """
    return BandedModel(
        T.space,
        T.symbol.adjoint(),
        tuple((v, u) for u, v in T.perturbation),
        T.domain_constraints,
        T.mv_part,
    )


def mobius_laurent(T: BandedModel, mu) -> BandedModel:
    """Resolvent ``(mu - T)^{-1}`` of an unperturbed Laurent model.

    Its symbol is the rational function ``1 / (mu - a(z))``.
    """
    if T.space != LAURENT:
        raise ValueError("mobius_laurent supports the Laurent model only; "
                         "the Toeplitz resolvent is not a Toeplitz operator")
    if T.perturbation or T.mv_part or T.domain_constraints:
        raise ValueError("mobius_laurent needs an unperturbed single-valued model")
    if T.symbol.is_rational:
        raise ValueError("mobius_laurent needs a Laurent-polynomial symbol")
    mu = complex(mu)
    if T.symbol.on_curve(mu):
        raise ValueError(f"mu={mu} is not in the resolvent set (on the symbol curve)")
    den = {k: -a for k, a in T.symbol.num}
    den[0] = den.get(0, 0j) + mu
    return BandedModel(LAURENT, LaurentSymbol.rational({0: 1.0}, den))


# -- Toeplitz kernels ----------------------------------------------------------

class ToeplitzKernel(NamedTuple):
    """Kernel of ``lam - T(a)`` on l2(N).

    Basis sequences are ``x(k) = sum_i coeffs[i, j] g_i(k)`` where the
    generators ``g_i(k) = C(k, m) w^(k - m)`` run over roots ``w`` inside the
    disk and derivative orders ``m`` below their multiplicity.
    """

    alpha: int
    roots: np.ndarray
    multiplicities: tuple
    coeffs: np.ndarray

    def generators(self, length):
        k = np.arange(length)
        cols = []
        for w, mult in zip(self.roots, self.multiplicities):
            for m in range(mult):
                g = np.zeros(length, dtype=complex)
                kk = k[m:]
                binom = np.array([comb(int(t), m) for t in kk], dtype=float)
                g[m:] = binom * np.power(complex(w), kk - m)
                cols.append(g)
        if not cols:
            return np.zeros((length, 0), dtype=complex)
        return np.column_stack(cols)

    def vectors(self, length, normalize=True):
        X = self.generators(length) @ self.coeffs
        if normalize and X.shape[1]:
            X = X / np.linalg.norm(X, axis=0)
        return X


def _cluster_roots(roots, tol=1e-5):
    """Group numerically split multiple roots; returns (centers, multiplicities)."""
    roots = sorted(roots, key=lambda z: (z.real, z.imag))
    groups = []
    for r in roots:
        for g in groups:
            if abs(np.mean(g) - r) <= tol * max(1.0, abs(r)):
                g.append(r)
                break
        else:
            groups.append([r])
    return np.array([np.mean(g) for g in groups]), tuple(len(g) for g in groups)


def toeplitz_kernel_basis(sym: LaurentSymbol, lam, tol=None) -> ToeplitzKernel:
    """Decaying basis of ``N(lam - T(a))`` for a Laurent-polynomial symbol.

    A sequence ``w^k`` solves the recurrence ``sum_m a_m x_{j-m} = lam x_j``
    away from the boundary exactly when ``a(1/w) = lam``; the roots of
    ``w^q (a(1/w) - lam)`` inside the unit disk give ``q + alpha``
    candidates, and the ``q`` boundary rows cut them down to ``alpha``.
    """
    lam = complex(lam)
    w_num = winding(sym, lam, tol=tol)
    alpha = max(0, -w_num)
    p, q = sym.band
    shifted = sym.minus(lam)[0]
    # coefficients of a(1/w) - lam in w
    roots, _ = laurent_roots(tuple((-k, a) for k, a in shifted))
    if np.any(np.abs(np.abs(roots) - 1.0) < NEAR_CURVE_ROOT):
        raise OnCurveError(f"root of a(1/w) - {lam} within {NEAR_CURVE_ROOT} of |w| = 1")
    inside = roots[np.abs(roots) < 1.0]
    if alpha == 0:
        return ToeplitzKernel(0, np.zeros(0, dtype=complex), (), np.zeros((0, 0), dtype=complex))
    centers, mults = _cluster_roots(list(inside))
    probe = ToeplitzKernel(0, centers, mults, np.zeros((0, 0)))
    G = probe.generators(q + p + 1)
    if q == 0:
        coeffs = np.eye(G.shape[1], dtype=complex)[:, :alpha]
        return ToeplitzKernel(alpha, centers, mults, coeffs)
    a = sym.coeffs
    E = np.zeros((q, G.shape[1]), dtype=complex)
    for j in range(q):
        row = lam * G[j]
        for k in range(0, j + p + 1):
            row = row - a.get(j - k, 0j) * G[k]
        E[j] = row
    _, s, vh = np.linalg.svd(E, full_matrices=True)
    coeffs = vh[-alpha:].conj().T if alpha else np.zeros((G.shape[1], 0))
    return ToeplitzKernel(alpha, centers, mults, coeffs)


# -- truncations ---------------------------------------------------------------

def window(T: BandedModel, n: int) -> np.ndarray:
    """Index set of the size-``n`` truncation."""
    if T.space == LAURENT:
        return np.arange(-(n // 2), n - n // 2)
    return np.arange(n)


def section(T: BandedModel, n: int) -> np.ndarray:
    """``n x n`` truncation of ``T(a) + F``.

    Laurent models use the periodic (circulant) section, whose spectrum is
    the symbol sampled at the n-th roots of unity; Toeplitz models use the
    finite section ``[a_{j-k}]``.
    """
    if T.space == LAURENT:
        if T.symbol.is_rational:
            theta = 2 * np.pi * np.arange(n) / n
            c = np.fft.fft(T.symbol.on_circle(theta)) / n
        else:
            c = np.zeros(n, dtype=complex)
            for k, a in T.symbol.num:
                c[k % n] += a
        A = scipy.linalg.circulant(c)
    else:
        col = T.symbol.fourier_coeffs(0, n - 1)
        row = T.symbol.fourier_coeffs(-(n - 1), 0)[::-1]
        A = scipy.linalg.toeplitz(col, row)
    if T.perturbation:
        idx = window(T, n)
        U = _dense([u for u, _ in T.perturbation], idx)
        V = _dense([v for _, v in T.perturbation], idx)
        A = A + U @ V.conj().T
    return A


def _complement_basis(vecs, idx):
    n = len(idx)
    if not vecs:
        return None
    D = _dense(vecs, idx)
    u, s, _ = np.linalg.svd(D, full_matrices=True)
    r = int(np.count_nonzero(s > 1e-10 * max(s.max(), 1e-300)))
    return u[:, r:]


def _finite_eigs(A, E):
    w = scipy.linalg.eigvals(A, E, homogeneous_eigvals=True)
    a, b = w
    mag = np.hypot(np.abs(a), np.abs(b))
    ok = np.abs(b) > 1e-8 * mag
    return a[ok] / b[ok]


def _match(a, b, tol):
    """Elements of ``a`` within ``tol`` of some element of ``b``."""
    if len(a) == 0 or len(b) == 0:
        return np.zeros(0, dtype=complex)
    d = np.abs(a[:, None] - b[None, :]).min(axis=1)
    return a[d <= tol]


def truncated_eigenvalues(T: BandedModel, n: int, seed=0) -> np.ndarray:
    """Points where the compressed truncation of ``lam - T`` loses rank.

    The truncation is ``W_M^H (lam - A) W_C`` with ``W_M`` spanning ``M^perp``
    and ``W_C`` spanning the constrained domain.  A rectangular compression
    is squared off with random rows/columns; eigenvalues common to two
    independent completions are kept.
    """
    A = section(T, n)
    idx = window(T, n)
    Wm = _complement_basis(T.mv_part, idx)
    Wc = _complement_basis(T.domain_constraints, idx)
    if Wm is None and Wc is None:
        return scipy.linalg.eigvals(A)
    eye = np.eye(n, dtype=complex)
    Wm = eye if Wm is None else Wm
    Wc = eye if Wc is None else Wc
    Ac = Wm.conj().T @ A @ Wc
    Ec = Wm.conj().T @ Wc
    r, c = Ac.shape
    if r == c:
        return _finite_eigs(Ac, Ec)
    rng = np.random.default_rng(seed)
    found = []
    for _ in range(2):
        R = rng.standard_normal((abs(r - c), max(r, c))) \
            + 1j * rng.standard_normal((abs(r - c), max(r, c)))
        if r < c:
            As, Es = np.vstack([Ac, R]), np.vstack([Ec, np.zeros_like(R)])
        else:
            As, Es = np.hstack([Ac, R.T]), np.hstack([Ec, np.zeros_like(R.T)])
        found.append(_finite_eigs(As, Es))
    return _match(found[0], found[1], TOL_PERSIST)


def point_eigenvalues(T: BandedModel, region=None, trunc_sizes=DEFAULT_TRUNC_SIZES,
                      tol_persist=TOL_PERSIST, curve_band=None) -> list:
    """Eigenvalues of truncations that persist across sizes and avoid the curve.

    ``region`` is ``(re0, re1, im0, im1)`` or None for the whole plane.
    ``curve_band`` is the distance below which a value counts as on-curve.
    """
    sizes = sorted(trunc_sizes)
    if len(sizes) < 2 or len(set(sizes)) != len(sizes):
        raise ValueError("point_eigenvalues needs at least two distinct truncation sizes")
    band = 1e3 * T.symbol.curve_tol() if curve_band is None else curve_band
    spectra = [truncated_eigenvalues(T, n) for n in sizes]
    cand = spectra[-1]
    if region is not None:
        re0, re1, im0, im1 = region
        cand = cand[(cand.real >= re0) & (cand.real <= re1)
                    & (cand.imag >= im0) & (cand.imag <= im1)]
    for other in spectra[:-1]:
        cand = _match(cand, other, tol_persist)
    if len(cand) == 0:
        return []
    curve = T.symbol.curve(max_step=band / 4)
    from scipy.spatial import cKDTree

    dist, _ = cKDTree(np.column_stack([curve.real, curve.imag])).query(
        np.column_stack([cand.real, cand.imag]))
    cand = cand[dist > band]
    out = []
    for z in sorted(cand, key=lambda z: (z.real, z.imag)):
        if not out or abs(z - out[-1]) > tol_persist:
            out.append(complex(z))
    return out


# -- singular sequences ------------------------------------------------------

class SingularSequence(NamedTuple):
    indices: np.ndarray
    values: np.ndarray
    residual: float
    z0: complex


def apply(T: BandedModel, indices, values):
    """``(T(a) + F) x`` for a finitely supported ``x``; returns (indices, values)."""
    if T.symbol.is_rational:
        raise ValueError("exact application needs a Laurent-polynomial symbol")
    indices = np.asarray(indices)
    lo, hi = int(indices.min()), int(indices.max())
    coeffs = T.symbol.coeffs
    kmin, kmax = min(coeffs), max(coeffs)
    extra = [k for u, _ in T.perturbation for k, _ in u]
    out_lo = min([lo, lo + kmin] + extra)
    out_hi = max([hi, hi + kmax] + extra)
    if T.space == TOEPLITZ:
        out_lo = max(out_lo, 0)
    out_idx = np.arange(out_lo, out_hi + 1)
    y = np.zeros(len(out_idx), dtype=complex)
    for m, a in coeffs.items():
        pos = indices + m - out_lo
        ok = (pos >= 0) & (pos < len(y))
        np.add.at(y, pos[ok], a * values[ok])
    x_pos = {int(k): v for k, v in zip(indices, values)}
    for u, v in T.perturbation:
        inner = sum(np.conj(c) * x_pos.get(k, 0) for k, c in v)
        for k, c in u:
            y[k - out_lo] += c * inner
    return out_idx, y


def singular_sequence(T: BandedModel, lam, n: int, center=0, tol=None) -> SingularSequence:
    """Normalized window ``x(k) = w^k`` around ``center`` with ``a(1/w) = lam``.

    Laurent models use ``|k - center| <= n``; Toeplitz models the one-sided
    window ``center <= k <= center + n``.  ``w = conj(z0)`` where ``z0`` is the
    curve point ``a(z0) = lam``.  The residual ``||(lam - T) x||`` is measured
    modulo ``T(0)``.
    """
    if n < 0:
        raise ValueError("window half-width must be nonnegative")
    lam = complex(lam)
    tol = T.symbol.curve_tol() if tol is None else tol
    theta, d = T.symbol.nearest_point(lam)
    if d > tol:
        raise ValueError(f"lambda={lam} is not on the symbol curve (distance {d:.3g})")
    z0 = np.exp(1j * theta)
    w = np.conj(z0)
    if T.space == LAURENT:
        idx = np.arange(center - n, center + n + 1)
    else:
        if center < 0:
            raise ValueError("Toeplitz windows need center >= 0")
        idx = np.arange(center, center + n + 1)
    x = np.power(w, idx - center)
    if T.domain_constraints:
        C = _dense(T.domain_constraints, idx)
        Q, _ = np.linalg.qr(C)
        x = x - Q @ (Q.conj().T @ x)
    x = x / np.linalg.norm(x)
    out_idx, y = apply(T, idx, x)
    pos = idx - out_idx[0]
    r = -y
    r[pos] += lam * x
    if T.mv_part:
        M = _dense(T.mv_part, out_idx)
        Q, _ = np.linalg.qr(M)
        r = r - Q @ (Q.conj().T @ r)
    return SingularSequence(idx, x, float(np.linalg.norm(r)), complex(z0))


# -- truncation probe ----------------------------------------------------------

class Probe(NamedTuple):
    fredholm: bool
    singular_value: float
    allowance: int


def truncation_probe(T: BandedModel, lam, n=800, threshold=0.1) -> Probe:
    """Smallest-singular-value check on a size-``n`` truncation.

    ``lam - T`` counts as Fredholm when the truncation has at most
    ``allowance`` singular values below ``threshold``; the allowance covers
    the largest possible index of the band plus the finite-rank and
    finite-dimensional parts, and does not use the winding number.
    """
    if T.symbol.is_rational:
        extra = 0
    else:
        p, q = T.symbol.band
        extra = p + q if T.space == TOEPLITZ else 0
    allowance = extra + T.perturbation_rank + T.dim_mv + T.codim_domain
    A = complex(lam) * np.eye(n) - section(T, n)
    idx = window(T, n)
    Wm = _complement_basis(T.mv_part, idx)
    Wc = _complement_basis(T.domain_constraints, idx)
    if Wm is not None:
        A = Wm.conj().T @ A
    if Wc is not None:
        A = A @ Wc
    s = np.sort(np.linalg.svd(A, compute_uv=False))
    sv = float(s[allowance]) if allowance < len(s) else math.inf
    return Probe(sv > threshold, sv, allowance)
