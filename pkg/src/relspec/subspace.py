"""Tolerance-aware arithmetic on subspaces of C^n.

A :class:`Subspace` is stored as an orthonormal frame (an ``n x k`` matrix
whose columns span the subspace).  Numerical rank is decided from singular
values relative to the largest one, so that subspace identity does not
depend on the scale of the spanning vectors.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-10


def default_tol() -> float:
    """Default rank tolerance; ``RELSPEC_TOL`` overrides it."""
    value = os.environ.get("RELSPEC_TOL")
    if value is None:
        return DEFAULT_TOL
    tol = float(value)
    if tol < 0:
        raise ValueError(f"RELSPEC_TOL must be nonnegative, got {value!r}")
    return tol


def _resolve_tol(tol):
    if tol is None:
        return default_tol()
    if tol < 0:
        raise ValueError(f"tol must be nonnegative, got {tol}")
    return float(tol)


def _check_ambient(n):
    if int(n) != n or n < 1:
        raise ValueError(f"ambient dimension must be a positive integer, got {n}")
    return int(n)


def numerical_rank(s, tol, scale=None):
    """Count singular values ``s`` above ``tol * scale`` (``scale`` defaults to max(s))."""
    s = np.asarray(s)
    if s.size == 0:
        return 0
    if scale is None:
        scale = s.max()
    if scale == 0:
        return 0
    return int(np.count_nonzero(s > tol * scale))


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of C^ambient_dim given by an orthonormal frame."""

    ambient_dim: int
    frame: np.ndarray = field(repr=False)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        n = _check_ambient(self.ambient_dim)
        frame = np.array(self.frame, dtype=complex, copy=True)
        if frame.ndim != 2 or frame.shape[0] != n:
            raise ValueError(
                f"frame must have shape ({n}, k), got {frame.shape}"
            )
        if frame.shape[1] > n:
            raise ValueError("frame has more columns than the ambient dimension")
        frame.setflags(write=False)
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "frame", frame)

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def __repr__(self):
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"

    def projector(self) -> np.ndarray:
        return self.frame @ self.frame.conj().T

    def project(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=complex)
        return self.frame @ (self.frame.conj().T @ x)

    def contains(self, x, tol=None) -> bool:
        """True when ``||x - Px|| <= tol * ||x||``."""
        tol = self.tol if tol is None else tol
        x = np.asarray(x, dtype=complex)
        if x.shape != (self.ambient_dim,):
            raise ValueError(f"vector must have shape ({self.ambient_dim},)")
        return bool(np.linalg.norm(x - self.project(x)) <= tol * np.linalg.norm(x))

    def is_subspace_of(self, other: Subspace, atol=1e-8) -> bool:
        _check_same_ambient(self, other)
        if self.dim == 0:
            return True
        resid = self.frame - other.project(self.frame)
        return bool(np.linalg.norm(resid, 2) <= atol)

    def equals(self, other: Subspace, atol=1e-8) -> bool:
        return self.dim == other.dim and gap(self, other) <= atol


def _check_same_ambient(U, V):
    if U.ambient_dim != V.ambient_dim:
        raise ValueError(
            f"ambient dimension mismatch: {U.ambient_dim} vs {V.ambient_dim}"
        )


def _orthonormal_columns(M, k):
    """Leading ``k`` left singular vectors of ``M``."""
    if k == 0:
        return np.zeros((M.shape[0], 0), dtype=complex)
    u, _, _ = np.linalg.svd(M, full_matrices=False)
    return u[:, :k]


def zero(n, tol=None) -> Subspace:
    n = _check_ambient(n)
    return Subspace(n, np.zeros((n, 0), dtype=complex), _resolve_tol(tol))


def full(n, tol=None) -> Subspace:
    n = _check_ambient(n)
    return Subspace(n, np.eye(n, dtype=complex), _resolve_tol(tol))


def from_columns(M, tol=None, scale=None) -> Subspace:
    """Column space of an ``n x m`` matrix.

    The rank cutoff is ``tol * scale``; ``scale`` defaults to the largest
    singular value.  Pass ``scale=1`` when the columns are combinations of
    orthonormal frames, so that an all-roundoff block is not promoted to a
    subspace.
    """
    tol = _resolve_tol(tol)
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2:
        raise ValueError("expected a 2-D array of column vectors")
    n = _check_ambient(M.shape[0])
    if M.shape[1] == 0:
        return zero(n, tol)
    u, s, _ = np.linalg.svd(M, full_matrices=False)
    r = numerical_rank(s, tol, scale)
    return Subspace(n, u[:, :r], tol)


def span(vectors, tol=None, ambient_dim=None) -> Subspace:
    """Subspace spanned by a list of vectors.

    An empty list gives the zero subspace of ``ambient_dim``.
    """
    tol = _resolve_tol(tol)
    vectors = [np.asarray(v, dtype=complex) for v in vectors]
    if not vectors:
        if ambient_dim is None:
            raise ValueError("ambient_dim is required for an empty spanning set")
        return zero(ambient_dim, tol)
    n = vectors[0].shape
    for v in vectors:
        if v.ndim != 1 or v.shape != n:
            raise ValueError("all vectors must be 1-D with one common length")
    if ambient_dim is not None and n[0] != ambient_dim:
        raise ValueError(f"vectors have length {n[0]}, expected {ambient_dim}")
    return from_columns(np.column_stack(vectors), tol)


def intersect(U: Subspace, V: Subspace) -> Subspace:
    """U ∩ V from the null space of ``[U | -V]``."""
    _check_same_ambient(U, V)
    tol = max(U.tol, V.tol)
    n = U.ambient_dim
    p, q = U.dim, V.dim
    if p == 0 or q == 0:
        return zero(n, tol)
    M = np.hstack([U.frame, -V.frame])
    _, s, vh = np.linalg.svd(M, full_matrices=True)
    r = numerical_rank(s, tol)
    null = vh[r:].conj().T
    k = null.shape[1]
    if k == 0:
        return zero(n, tol)
    # average both representations of each intersection vector
    vecs = U.frame @ null[:p] + V.frame @ null[p:]
    return Subspace(n, _orthonormal_columns(vecs, k), tol)


def sum_(U: Subspace, V: Subspace) -> Subspace:
    """U + V, the smallest subspace containing both."""
    _check_same_ambient(U, V)
    tol = max(U.tol, V.tol)
    return from_columns(np.hstack([U.frame, V.frame]), tol)


def complement(U: Subspace) -> Subspace:
    """Orthogonal complement."""
    n, k = U.ambient_dim, U.dim
    if k == 0:
        return full(n, U.tol)
    u, _, _ = np.linalg.svd(U.frame, full_matrices=True)
    return Subspace(n, u[:, k:], U.tol)


def gap(U: Subspace, V: Subspace) -> float:
    """``||P_U - P_V||_2``: sine of the largest principal angle (1 if dims differ)."""
    _check_same_ambient(U, V)
    if U.dim == 0 and V.dim == 0:
        return 0.0
    return float(np.linalg.norm(U.projector() - V.projector(), 2))


def principal_angles(U: Subspace, V: Subspace) -> np.ndarray:
    """Principal angles between two subspaces, ascending."""
    _check_same_ambient(U, V)
    if U.dim == 0 or V.dim == 0:
        return np.zeros(0)
    # sine-based formula keeps small angles accurate
    W = V.frame - U.project(V.frame) if V.dim <= U.dim else U.frame - V.project(U.frame)
    sines = np.linalg.svd(W, compute_uv=False)
    return np.sort(np.arcsin(np.clip(sines, 0.0, 1.0)))
