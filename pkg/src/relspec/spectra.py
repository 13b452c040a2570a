"""Point classification, spectrum, Weyl correction and Möbius resolvents.

Finite-dimensional relations are degenerate for essential spectra: every
``lam - T`` is Fredholm with index ``dim G(T) - n``.  :func:`essential_spectra`
reports that honestly; the banded models carry the non-trivial cases.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
import scipy.linalg

from relspec import relation as rel
from relspec import subspace as ss
from relspec.relation import FredholmData, Relation

ALL_OF_C = "all_of_C"
EMPTY = "empty"


@dataclass(frozen=True)
class PointClass:
    lam: complex
    fredholm: FredholmData
    in_resolvent: bool


def _require_square(T):
    if not T.is_square:
        raise ValueError("spectral quantities need a relation on one space")


def classify_point(T: Relation, lam) -> PointClass:
    _require_square(T)
    fd = rel.fredholm_data(rel.shift(T, lam))
    return PointClass(complex(lam), fd, fd.alpha == 0 and fd.beta == 0)


def in_resolvent(T: Relation, lam) -> bool:
    return classify_point(T, lam).in_resolvent


def _pencil(T):
    """``(A, B)`` with ``G(T) = {(Bu, Au)}``."""
    return T.yframe, T.xframe


def is_singular_pencil(A, B, tol, seed=0) -> bool:
    """Rank-deficient ``A - lam B`` at three random ``lam`` means a singular pencil."""
    rng = np.random.default_rng(seed)
    n = A.shape[1]
    for lam in rng.standard_normal(3) + 1j * rng.standard_normal(3):
        s = np.linalg.svd(A - lam * B, compute_uv=False)
        if ss.numerical_rank(s, tol, scale=max(s.max(), 1.0)) == n:
            return False
    return True


def spectrum(T: Relation, inf_tol=1e-8):
    """Eigenvalues of ``T`` as a sorted array, or ``ALL_OF_C``.

    When ``dim G(T) != n`` the index of ``lam - T`` is nonzero at every
    ``lam``.  Otherwise the graph frame defines a square pencil whose finite
    generalized eigenvalues are the spectrum.
    """
    _require_square(T)
    n = T.dim_x
    if T.graph.dim != n:
        return ALL_OF_C
    A, B = _pencil(T)
    if is_singular_pencil(A, B, max(T.tol, 1e-12)):
        return ALL_OF_C
    w, _ = scipy.linalg.eig(A, B, homogeneous_eigvals=True)
    a, b = w
    mag = np.hypot(np.abs(a), np.abs(b))
    finite = np.abs(b) > inf_tol * mag
    vals = a[finite] / b[finite]
    return np.array(sorted(vals, key=lambda z: (round(z.real, 12), round(z.imag, 12))))


def essential_spectra(T: Relation):
    """The five essential spectra of a finite-dimensional relation.

    Every ``lam - T`` is Fredholm, so sigma_e1..e3 are empty; sigma_e4 and
    sigma_e5 are empty or all of C according to the constant index.
    """
    _require_square(T)
    whole = T.graph.dim != T.dim_x or spectrum(T) is ALL_OF_C
    e4 = ALL_OF_C if T.graph.dim != T.dim_x else EMPTY
    return {"e1": EMPTY, "e2": EMPTY, "e2prime": EMPTY, "e3": EMPTY,
            "e4": e4, "e5": ALL_OF_C if whole else EMPTY}


def _dual_system(basis):
    """Biorthogonal system ``D`` with ``D^H basis = I`` (minimal norm)."""
    return np.linalg.pinv(basis).conj().T


def weyl_correction(T: Relation, lam) -> Relation:
    """Finite-rank operator ``K`` with ``lam`` in the resolvent set of ``T + K``.

    ``K x = sum_k <x_k', x> y_k`` where ``x_k`` span ``N(lam - T)``,
    ``y_k'`` span ``R(lam - T)^perp = N(lam - T')`` and the primed/unprimed
    systems are biorthogonal.
    """
    _require_square(T)
    L = rel.shift(T, lam)
    p = rel.parts(L)
    X = p.kernel.frame
    Yp = ss.complement(p.range).frame
    if X.shape[1] != Yp.shape[1]:
        raise ValueError(
            f"weyl_correction needs alpha == beta, got alpha={X.shape[1]}, "
            f"beta={Yp.shape[1]}"
        )
    Xd = _dual_system(X)
    Y = _dual_system(Yp)
    K = Y @ Xd.conj().T
    return rel.from_matrix(K, T.tol)


def mobius_resolvent(T: Relation, mu) -> Relation:
    """``T_mu = (mu - T)^{-1}``, single-valued and everywhere defined."""
    if not classify_point(T, mu).in_resolvent:
        raise ValueError(f"mu={mu} is not in the resolvent set")
    return rel.inverse(rel.shift(T, mu))


class FactorCheck(NamedTuple):
    holds: bool
    residual: float


def mobius_factor_check(T: Relation, mu, lam, atol=1e-8) -> FactorCheck:
    """Check ``lam - T = S (mu - T)`` for ``S = (mu - lam)((mu - lam)^{-1} - T_mu)``."""
    mu, lam = complex(mu), complex(lam)
    if mu == lam:
        raise ValueError("lam must differ from mu")
    Tmu = mobius_resolvent(T, mu)
    S = rel.scale(rel.shift(Tmu, 1.0 / (mu - lam)), mu - lam)
    lhs = rel.shift(T, lam)
    rhs = rel.compose(S, rel.shift(T, mu))
    if lhs.graph.dim != rhs.graph.dim:
        return FactorCheck(False, 1.0)
    r = ss.gap(lhs.graph, rhs.graph)
    return FactorCheck(r < atol, r)
