"""Laurent-polynomial and rational symbols on the unit circle."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize_scalar

INITIAL_SAMPLES = 1024
MAX_SAMPLES = 2**22


class OnCurveError(ValueError):
    """Raised when a point lies on the symbol curve within tolerance."""


def _clean(coeffs):
    out = {}
    for k, v in dict(coeffs).items():
        if int(k) != k:
            raise ValueError(f"coefficient index must be an integer, got {k!r}")
        v = complex(v)
        if v != 0:
            out[int(k)] = v
    return tuple(sorted(out.items()))


def _as_dict(pairs):
    return dict(pairs)


def _eval_laurent(pairs, z):
    z = np.asarray(z, dtype=complex)
    out = np.zeros(z.shape, dtype=complex)
    for k, a in pairs:
        out = out + a * z**k
    return out


def laurent_poly(pairs):
    """``(p, c)`` with ``z^p f(z) = sum_i c[i] z^i`` (``c`` in increasing powers)."""
    if not pairs:
        return 0, np.zeros(1, dtype=complex)
    lo = min(k for k, _ in pairs)
    hi = max(k for k, _ in pairs)
    p = max(0, -lo)
    c = np.zeros(hi + p + 1, dtype=complex)
    for k, a in pairs:
        c[k + p] = a
    return p, c


def laurent_roots(pairs):
    """Zeros of ``z^p f(z)`` (with multiplicity) and the pole order ``p`` at 0."""
    p, c = laurent_poly(pairs)
    c = np.trim_zeros(c, "b")
    if c.size <= 1:
        return np.zeros(0, dtype=complex), p
    return np.roots(c[::-1]), p


@dataclass(frozen=True)
class LaurentSymbol:
    """Symbol ``a(z) = num(z) / den(z)``; ``den`` is 1 for Laurent polynomials.

    Coefficient maps are stored as sorted ``(k, a_k)`` tuples.
    """

    num: tuple
    den: tuple = ((0, 1 + 0j),)

    def __post_init__(self):
        num = _clean(_as_dict(self.num))
        den = _clean(_as_dict(self.den))
        if not num:
            raise ValueError("symbol needs at least one nonzero coefficient")
        if not den:
            raise ValueError("denominator needs at least one nonzero coefficient")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        if self.is_rational:
            roots, _ = laurent_roots(den)
            if np.any(np.abs(np.abs(roots) - 1.0) < 1e-8):
                raise ValueError("denominator vanishes on the unit circle")
            theta = np.linspace(0, 2 * np.pi, INITIAL_SAMPLES, endpoint=False)
            if np.min(np.abs(_eval_laurent(den, np.exp(1j * theta)))) == 0:
                raise ValueError("denominator vanishes on the unit circle")

    @classmethod
    def from_coeffs(cls, coeffs) -> LaurentSymbol:
        return cls(tuple(dict(coeffs).items()))

    @classmethod
    def rational(cls, num, den) -> LaurentSymbol:
        return cls(tuple(dict(num).items()), tuple(dict(den).items()))

    @property
    def is_rational(self) -> bool:
        return self.den != ((0, 1 + 0j),)

    @property
    def coeffs(self) -> dict:
        if self.is_rational:
            raise ValueError("rational symbol has no finite coefficient map")
        return dict(self.num)

    @property
    def band(self) -> tuple[int, int]:
        """``(p, q)``: coefficients live in ``[-p, q]`` (polynomial symbols)."""
        ks = [k for k, _ in self.coeffs.items()]
        return max(0, -min(ks)), max(0, max(ks))

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        val = _eval_laurent(self.num, z)
        if self.is_rational:
            val = val / _eval_laurent(self.den, z)
        return val

    def on_circle(self, theta):
        return self(np.exp(1j * np.asarray(theta, dtype=float)))

    def scale(self) -> float:
        if not self.is_rational:
            return max(abs(a) for _, a in self.num)
        theta = np.linspace(0, 2 * np.pi, INITIAL_SAMPLES, endpoint=False)
        return float(np.max(np.abs(self.on_circle(theta))))

    def curve_tol(self) -> float:
        """On-curve tolerance ``1e-6 * (1 + max|a_k|)``."""
        return 1e-6 * (1.0 + self.scale())

    def fourier_coeffs(self, kmin, kmax) -> np.ndarray:
        """Coefficients ``a_k`` for ``kmin <= k <= kmax``."""
        ks = np.arange(kmin, kmax + 1)
        if not self.is_rational:
            c = self.coeffs
            return np.array([c.get(int(k), 0j) for k in ks], dtype=complex)
        m = 1 << max(12, int(math.ceil(math.log2(4 * (kmax - kmin + 1)))))
        theta = 2 * np.pi * np.arange(m) / m
        c = np.fft.fft(self.on_circle(theta)) / m
        return c[ks % m]

    def adjoint(self) -> LaurentSymbol:
        """``conj(a(1 / conj z))``: coefficient ``k -> conj(a_{-k})``."""
        flip = lambda pairs: tuple((-k, complex(a).conjugate()) for k, a in pairs)
        return LaurentSymbol(flip(self.num), flip(self.den))

    def minus(self, lam) -> tuple[tuple, tuple]:
        """Numerator and denominator of ``a(z) - lam``."""
        lam = complex(lam)
        num = dict(self.num)
        if self.is_rational:
            for k, d in self.den:
                num[k] = num.get(k, 0j) - lam * d
        else:
            num[0] = num.get(0, 0j) - lam
        return _clean(num), self.den

    # -- curve geometry ----------------------------------------------------

    def nearest_point(self, lam, n_samples=INITIAL_SAMPLES):
        """``(theta, distance)`` minimizing ``|a(e^{i theta}) - lam|``.

        Dense sampling followed by bounded refinement around every sampled
        local minimum.
        """
        lam = complex(lam)
        theta = 2 * np.pi * np.arange(n_samples) / n_samples
        d = np.abs(self.on_circle(theta) - lam)
        left, right = np.roll(d, 1), np.roll(d, -1)
        cands = np.flatnonzero((d <= left) & (d <= right))
        order = cands[np.argsort(d[cands])][:8]
        h = 2 * np.pi / n_samples
        best_t, best_d = float(theta[order[0]]), float(d[order[0]])
        f = lambda t: float(abs(self.on_circle(t) - lam))
        for j in order:
            res = minimize_scalar(f, bounds=(theta[j] - h, theta[j] + h),
                                  method="bounded", options={"xatol": 1e-13})
            t, dist = self._polish(float(res.x), lam, float(res.fun))
            if dist < best_d:
                best_t, best_d = t, dist
        return best_t % (2 * np.pi), best_d

    def _polish(self, t, lam, dist, steps=4, h=1e-6):
        """Gauss-Newton steps on ``|a(e^{it}) - lam|^2``; Brent stalls near a zero."""
        for _ in range(steps):
            v = complex(self.on_circle(t)) - lam
            dv = complex(self.on_circle(t + h) - self.on_circle(t - h)) / (2 * h)
            if dv == 0:
                break
            t_new = t - (v.conjugate() * dv).real / abs(dv) ** 2
            d_new = float(abs(self.on_circle(t_new) - lam))
            if d_new >= dist:
                break
            t, dist = t_new, d_new
        return t, dist

    def distance(self, lam) -> float:
        return self.nearest_point(lam)[1]

    def on_curve(self, lam, tol=None) -> bool:
        tol = self.curve_tol() if tol is None else tol
        return self.distance(lam) <= tol

    def curve(self, max_step, start=INITIAL_SAMPLES) -> np.ndarray:
        """Closed polyline of the curve with consecutive vertices ``<= max_step`` apart."""
        n = start
        while True:
            pts = self.on_circle(2 * np.pi * np.arange(n) / n)
            step = np.abs(np.diff(np.append(pts, pts[:1])))
            if step.max() <= max_step or n >= MAX_SAMPLES:
                return pts
            n *= 2


def winding(sym: LaurentSymbol, lam, n_samples=INITIAL_SAMPLES, tol=None) -> int:
    """Winding number of ``theta -> a(e^{i theta}) - lam`` by argument summation.

    Sampling doubles until every consecutive argument increment is below pi/2.
    """
    if n_samples < 256:
        raise ValueError("winding needs at least 256 samples")
    lam = complex(lam)
    tol = sym.curve_tol() if tol is None else tol
    if sym.distance(lam) <= tol:
        raise OnCurveError(f"lambda={lam} lies on the symbol curve")
    n = n_samples
    while n <= MAX_SAMPLES:
        v = sym.on_circle(2 * np.pi * np.arange(n) / n) - lam
        inc = np.angle(np.roll(v, -1) / v)
        if np.max(np.abs(inc)) < np.pi / 2:
            return int(round(inc.sum() / (2 * np.pi)))
        n *= 2
    raise OnCurveError(f"winding about {lam} did not resolve; point is too close to the curve")
