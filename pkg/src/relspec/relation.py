"""Finite-dimensional linear relations stored as graph subspaces.

A relation ``T: C^n -> C^m`` is the subspace ``G(T)`` of ``C^(n+m)``; a graph
vector is the concatenation ``(x, y)`` with ``y in Tx``.  Domain, range,
kernel and multivalued part are all derived from the graph frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from relspec import subspace as ss
from relspec.subspace import Subspace, numerical_rank

INF = math.inf

PHI = "Phi"
PHI_PLUS_ONLY = "Phi_plus_only"
PHI_MINUS_ONLY = "Phi_minus_only"
NOT_SEMI_FREDHOLM = "not_semi_fredholm"


@dataclass(frozen=True)
class FredholmData:
    """Nullity, deficiency and index of an operator or relation at a point.

    ``alpha``/``beta`` are integers or ``math.inf``; ``None`` means the value is
    not determined (e.g. off a closed range).  ``generic`` marks values that
    come from index bookkeeping rather than an exact kernel computation.
    """

    alpha: int | float | None
    beta: int | float | None
    kappa: int | float | None
    closed_range: bool
    fredholm_class: str
    generic: bool = False

    @classmethod
    def from_counts(cls, alpha, beta, closed_range=True, generic=False):
        if alpha == INF and beta == INF:
            kappa = None
        elif alpha == INF:
            kappa = INF
        elif beta == INF:
            kappa = -INF
        else:
            kappa = int(alpha) - int(beta)
        return cls(alpha, beta, kappa, closed_range,
                   classify_counts(alpha, beta, closed_range), generic)

    @property
    def is_fredholm(self) -> bool:
        return self.fredholm_class == PHI

    @property
    def is_semi_fredholm(self) -> bool:
        return self.fredholm_class != NOT_SEMI_FREDHOLM

    def to_dict(self):
        def enc(v):
            if v is None:
                return None
            if v == INF:
                return "inf"
            if v == -INF:
                return "-inf"
            return int(v)

        return {
            "alpha": enc(self.alpha),
            "beta": enc(self.beta),
            "kappa": enc(self.kappa),
            "closed_range": self.closed_range,
            "class": self.fredholm_class,
            "generic": self.generic,
        }


def classify_counts(alpha, beta, closed_range):
    if not closed_range:
        return NOT_SEMI_FREDHOLM
    plus = alpha is not None and alpha < INF
    minus = beta is not None and beta < INF
    if plus and minus:
        return PHI
    if plus:
        return PHI_PLUS_ONLY
    if minus:
        return PHI_MINUS_ONLY
    return NOT_SEMI_FREDHOLM


class Parts(NamedTuple):
    domain: Subspace
    range: Subspace
    kernel: Subspace
    mv_part: Subspace


class OperatorPart(NamedTuple):
    """Matrix of ``Q_T T`` on ``D(T)``.

    ``coords`` maps coordinates w.r.t. ``domain.frame`` into Y; ``standard``
    is the same map written on X (zero on ``D(T)^perp``).
    """

    domain: Subspace
    coords: np.ndarray
    standard: np.ndarray


@dataclass(frozen=True, eq=False)
class Relation:
    dim_x: int
    dim_y: int
    graph: Subspace

    def __post_init__(self):
        for name in ("dim_x", "dim_y"):
            v = getattr(self, name)
            if int(v) != v or v < 1:
                raise ValueError(f"{name} must be a positive integer, got {v}")
        if self.graph.ambient_dim != self.dim_x + self.dim_y:
            raise ValueError("graph ambient dimension must equal dim_x + dim_y")

    def __repr__(self):
        return (f"Relation(dim_x={self.dim_x}, dim_y={self.dim_y}, "
                f"dim_graph={self.graph.dim})")

    @property
    def tol(self):
        return self.graph.tol

    @property
    def xframe(self):
        return self.graph.frame[: self.dim_x]

    @property
    def yframe(self):
        return self.graph.frame[self.dim_x:]

    @property
    def is_square(self):
        return self.dim_x == self.dim_y

    def parts(self) -> Parts:
        return parts(self)

    def fredholm(self) -> FredholmData:
        return fredholm_data(self)


# -- construction ----------------------------------------------------------

def from_generators(generators, dim_x, dim_y=None, tol=None) -> Relation:
    """Relation whose graph is spanned by vectors ``(x, y)`` in C^(n+m)."""
    generators = [np.asarray(g, dtype=complex) for g in generators]
    if dim_y is None:
        if not generators:
            raise ValueError("dim_y is required when no generators are given")
        dim_y = generators[0].shape[0] - dim_x
    graph = ss.span(generators, tol, ambient_dim=dim_x + dim_y)
    return Relation(dim_x, dim_y, graph)


def from_matrix(A, tol=None) -> Relation:
    """Single-valued everywhere-defined relation of an ``m x n`` matrix."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    m, n = A.shape
    G = np.vstack([np.eye(n, dtype=complex), A])
    return Relation(n, m, ss.from_columns(G, tol))


def from_pencil(A, B, tol=None) -> Relation:
    """Relation ``{(Bu, Au)}`` of a pencil, ``A`` m x p and ``B`` n x p."""
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    B = np.atleast_2d(np.asarray(B, dtype=complex))
    if A.shape[1] != B.shape[1]:
        raise ValueError(
            f"pencil matrices need equal column counts, got {A.shape} and {B.shape}"
        )
    n, m = B.shape[0], A.shape[0]
    return Relation(n, m, ss.from_columns(np.vstack([B, A]), tol))


def build(kind, data, dim_x=None, dim_y=None, tol=None) -> Relation:
    """Dispatch on ``kind`` in {"operator_matrix", "pencil", "graph_generators"}."""
    if kind in ("operator_matrix", "operator"):
        T = from_matrix(data, tol)
    elif kind == "pencil":
        A, B = data
        T = from_pencil(A, B, tol)
    elif kind in ("graph_generators", "graph"):
        if dim_x is None:
            raise ValueError("graph_generators needs dim_x")
        T = from_generators(data, dim_x, dim_y, tol)
    else:
        raise ValueError(f"unknown relation kind {kind!r}")
    if dim_x is not None and T.dim_x != dim_x:
        raise ValueError(f"data gives dim_x={T.dim_x}, expected {dim_x}")
    if dim_y is not None and T.dim_y != dim_y:
        raise ValueError(f"data gives dim_y={T.dim_y}, expected {dim_y}")
    return T


def _with_frame(dim_x, dim_y, frame, tol, scale=None) -> Relation:
    return Relation(dim_x, dim_y, ss.from_columns(frame, tol, scale))


def _image(T, frame) -> Relation:
    """Graph image under an invertible map of X ⊕ Y: the dimension is kept."""
    basis = ss._orthonormal_columns(frame, T.graph.dim)
    return Relation(T.dim_x, T.dim_y, Subspace(T.dim_x + T.dim_y, basis, T.tol))


# -- parts and counts ------------------------------------------------------

def _split(block, tol):
    """Range frame and null-space coefficients of a block of the graph frame.

    The graph frame has unit scale, so the rank cutoff is ``tol`` absolute.
    """
    k = block.shape[1]
    if k == 0:
        return block[:, :0], np.zeros((0, 0), dtype=complex)
    u, s, vh = np.linalg.svd(block, full_matrices=True)
    r = numerical_rank(s, tol, scale=1.0)
    return u[:, :r], vh[r:].conj().T


def parts(T: Relation) -> Parts:
    """``(D(T), R(T), N(T), T(0))``."""
    tol = T.tol
    Fx, Fy = T.xframe, T.yframe
    dom, ycoef = _split(Fx, tol)
    ran, xcoef = _split(Fy, tol)
    # N(T): graph vectors with vanishing y-part; T(0): vanishing x-part
    ker = Fx @ xcoef
    mv = Fy @ ycoef
    return Parts(
        Subspace(T.dim_x, dom, tol),
        Subspace(T.dim_y, ran, tol),
        Subspace(T.dim_x, _orth(ker), tol),
        Subspace(T.dim_y, _orth(mv), tol),
    )


def _orth(M):
    return ss._orthonormal_columns(M, M.shape[1])


def alpha(T: Relation) -> int:
    return parts(T).kernel.dim


def beta(T: Relation) -> int:
    return T.dim_y - parts(T).range.dim


def kappa(T: Relation) -> int:
    return T.graph.dim - T.dim_y


def fredholm_data(T: Relation) -> FredholmData:
    """Every finite-dimensional relation is closed with closed range: class Phi."""
    p = parts(T)
    return FredholmData.from_counts(p.kernel.dim, T.dim_y - p.range.dim)


# -- algebra ---------------------------------------------------------------

def inverse(T: Relation) -> Relation:
    """Graph swap ``{(y, x) : (x, y) in G(T)}``."""
    frame = np.vstack([T.yframe, T.xframe])
    return Relation(T.dim_y, T.dim_x, Subspace(T.dim_x + T.dim_y, frame, T.tol))


def conjugate(T: Relation) -> Relation:
    """Adjoint relation ``G(T') = G(-T^{-1})^perp`` in Y x X.

    With Hilbert duals this is ``{(y', x') : <y, y'> = <x, x'> on G(T)}``.
    """
    rotated = np.vstack([T.yframe, -T.xframe])
    G = Subspace(T.dim_x + T.dim_y, rotated, T.tol)
    return Relation(T.dim_y, T.dim_x, ss.complement(G))


def scale(T: Relation, c) -> Relation:
    """``cT`` with graph ``{(x, cy)}``; for ``c = 0`` this is ``0`` on ``D(T)``."""
    c = complex(c)
    if c == 0:
        dom = parts(T).domain.frame
        frame = np.vstack([dom, np.zeros((T.dim_y, dom.shape[1]))])
        return _with_frame(T.dim_x, T.dim_y, frame, T.tol)
    return _image(T, np.vstack([T.xframe, c * T.yframe]))


def shift(T: Relation, lam) -> Relation:
    """``lam - T`` with graph ``{(x, lam x - y)}``."""
    if not T.is_square:
        raise ValueError("shift needs a relation on one space (dim_x == dim_y)")
    lam = complex(lam)
    return _image(T, np.vstack([T.xframe, lam * T.xframe - T.yframe]))


def _matched_pairs(P, Q, tol):
    """Null space of ``[P | -Q]``, split into the two coefficient blocks."""
    p = P.shape[1]
    M = np.hstack([P, -Q])
    if M.shape[1] == 0:
        return np.zeros((p, 0)), np.zeros((Q.shape[1], 0))
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    r = numerical_rank(s, tol, scale=1.0)
    null = vh[r:].conj().T
    return null[:p], null[p:]


def add(T: Relation, S: Relation) -> Relation:
    """``T + S = {(x, y + z) : (x, y) in G(T), (x, z) in G(S)}``."""
    if (T.dim_x, T.dim_y) != (S.dim_x, S.dim_y):
        raise ValueError("add needs relations of equal shape")
    tol = max(T.tol, S.tol)
    a, b = _matched_pairs(T.xframe, S.xframe, tol)
    x = T.xframe @ a
    y = T.yframe @ a + S.yframe @ b
    return _with_frame(T.dim_x, T.dim_y, np.vstack([x, y]), tol, scale=1.0)


def compose(S: Relation, T: Relation) -> Relation:
    """``ST = {(x, z) : (x, y) in G(T), (y, z) in G(S) for some y}``."""
    if T.dim_y != S.dim_x:
        raise ValueError(
            f"cannot compose: T maps into C^{T.dim_y}, S is defined on C^{S.dim_x}"
        )
    tol = max(T.tol, S.tol)
    a, b = _matched_pairs(T.yframe, S.xframe, tol)
    frame = np.vstack([T.xframe @ a, S.yframe @ b])
    return _with_frame(T.dim_x, S.dim_y, frame, tol, scale=1.0)


def identity(n, tol=None) -> Relation:
    return from_matrix(np.eye(n), tol)


# -- norms -----------------------------------------------------------------

def operator_part(T: Relation) -> OperatorPart:
    """Single-valued map ``Q_T T: D(T) -> T(0)^perp``."""
    p = parts(T)
    D = p.domain.frame
    r = p.domain.dim
    # least-norm graph coefficients reaching each domain basis vector
    u, s, vh = np.linalg.svd(T.xframe, full_matrices=False)
    coef = vh[:r].conj().T @ ((u[:, :r].conj().T @ D) / s[:r, None])
    Y = T.yframe @ coef
    Y = Y - p.mv_part.project(Y)
    return OperatorPart(p.domain, Y, Y @ D.conj().T)


def rel_norm(T: Relation) -> float:
    """``||T|| = ||Q_T T||``."""
    M = operator_part(T).coords
    if M.size == 0:
        return 0.0
    return float(np.linalg.norm(M, 2))


def min_modulus(T: Relation) -> float:
    """``gamma(T)``: smallest nonzero singular value of ``Q_T T``; inf if ``D(T) ⊆ N(T)``."""
    op = operator_part(T)
    nonzero = op.domain.dim - alpha(T)
    if nonzero <= 0:
        return INF
    s = np.linalg.svd(op.coords, compute_uv=False)
    return float(s[nonzero - 1])


class GammaEstimate(NamedTuple):
    estimate: float
    samples: int


def graph_norm_gamma_estimate(T: Relation, samples: int, seed=0) -> GammaEstimate:
    """Monte-Carlo ``gamma(T G)`` under ``||x||_T = ||x|| + ||Tx||``.

    Minimizes ``||Tx|| / d_T(x, N(T))`` over random ``x``, using
    ``d_T(x, N) = d(x, N) + ||Tx||`` (T vanishes on its kernel).
    """
    if samples < 1000:
        raise ValueError("graph_norm_gamma_estimate needs at least 1000 samples")
    p = parts(T)
    if p.domain.dim != T.dim_x or p.mv_part.dim != 0:
        raise ValueError("graph-norm estimate needs an everywhere-defined operator")
    A = operator_part(T).standard
    if np.linalg.norm(A) == 0:
        return GammaEstimate(INF, samples)
    rng = np.random.default_rng(seed)
    n = T.dim_x
    x = rng.standard_normal((n, samples)) + 1j * rng.standard_normal((n, samples))
    x = x - p.kernel.project(x)
    dist = np.linalg.norm(x, axis=0)
    keep = dist > 1e-12
    tx = np.linalg.norm(A @ x[:, keep], axis=0)
    ratio = tx / (dist[keep] + tx)
    return GammaEstimate(float(ratio.min()), samples)
