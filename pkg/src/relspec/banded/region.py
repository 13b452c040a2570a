"""Rasterized essential spectra of banded models.

Every grid point is a cell of a rectangular raster.  A cell is on the symbol
curve when the curve passes within half a cell diagonal of its centre; that
band is wide enough that two 4-adjacent off-curve cells are never separated
by the curve, so flood-fill components of the off-curve cells are connected
subsets of the resolvent-like set and the winding number is constant on each.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy import ndimage
from scipy.spatial import cKDTree

from relspec.banded.model import (
    DEFAULT_TRUNC_SIZES,
    TOEPLITZ,
    BandedModel,
    point_eigenvalues,
)

FLAGS = ("sigma", "e1", "e2", "e2prime", "e3", "e4", "e5")
CSV_COLUMNS = ("re", "im", "on_curve", "winding", "component_id") + FLAGS
MAX_CELLS = 2048 * 2048
NO_RESOLVENT_NOTE = "no resolvent point found at this resolution"


@dataclass(frozen=True, eq=False)
class RegionGrid:
    """Per-cell classification; 2-D arrays are indexed ``[im_index, re_index]``."""

    bounds: tuple
    resolution: tuple
    re: np.ndarray
    im: np.ndarray
    on_curve: np.ndarray
    winding: np.ndarray
    kappa: np.ndarray
    component_id: np.ndarray
    flags: dict
    components: tuple
    eigenvalues: tuple
    band: float

    def point(self, lam):
        """Flags of the cell whose centre is nearest to ``lam``."""
        i = int(np.abs(self.im - lam.imag).argmin())
        j = int(np.abs(self.re - lam.real).argmin())
        rec = {"on_curve": bool(self.on_curve[i, j]),
               "winding": int(self.winding[i, j]),
               "component_id": int(self.component_id[i, j])}
        rec.update({f: bool(self.flags[f][i, j]) for f in FLAGS})
        return rec

    def chain_holds(self) -> np.ndarray:
        """Per-cell check of e1 ⊆ e2 ⊆ e3 ⊆ e4 ⊆ e5 ⊆ sigma (and e1 ⊆ e2prime ⊆ e3)."""
        f = self.flags
        ok = np.ones(self.on_curve.shape, dtype=bool)
        for a, b in (("e1", "e2"), ("e2", "e3"), ("e3", "e4"), ("e4", "e5"),
                     ("e5", "sigma"), ("e1", "e2prime"), ("e2prime", "e3")):
            ok &= ~f[a] | f[b]
        return ok

    def _column(self, name):
        ny, nx = self.on_curve.shape
        if name == "re":
            return [repr(float(x)) for x in np.tile(self.re, ny)]
        if name == "im":
            return [repr(float(y)) for y in np.repeat(self.im, nx)]
        arr = {"on_curve": self.on_curve, "winding": self.winding,
               "component_id": self.component_id}.get(name)
        if arr is None:
            arr = self.flags[name]
        return [str(int(v)) for v in arr.ravel()]

    def to_csv(self, fh=None, columns=CSV_COLUMNS) -> str:
        """Bit-exact CSV: one row per cell, rows ordered by (im, re) index."""
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        w.writerows(zip(*(self._column(c) for c in columns)))
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text

    def summary(self) -> dict:
        return {
            "bounds": list(self.bounds),
            "resolution": list(self.resolution),
            "band": self.band,
            "eigenvalues": [[z.real, z.imag] for z in self.eigenvalues],
            "components": [dict(c) for c in self.components],
        }

    def summary_json(self) -> str:
        return json.dumps(self.summary(), indent=2, sort_keys=True)


def _check_bounds(bounds, resolution):
    re0, re1, im0, im1 = (float(b) for b in bounds)
    if not (np.isfinite([re0, re1, im0, im1]).all() and re0 < re1 and im0 < im1):
        raise ValueError(f"degenerate bounds {bounds}")
    nx, ny = (int(r) for r in resolution)
    if nx < 32 or ny < 32:
        raise ValueError("resolution must be at least 32 x 32")
    if nx * ny > MAX_CELLS:
        raise ValueError(f"resolution {nx}x{ny} exceeds 2048^2 cells")
    return (re0, re1, im0, im1), (nx, ny)


def _row_windings(segs, xs, y):
    """Winding about ``(x, y)`` for each ``x`` of one raster row.

    Signed crossings of the rightward ray with the closed polyline, using the
    half-open rule on segment end heights.
    """
    x0, y0, x1, y1 = segs
    up = (y0 <= y) & (y1 > y)
    down = (y1 <= y) & (y0 > y)
    hit = up | down
    t = (y - y0[hit]) / (y1[hit] - y0[hit])
    xc = x0[hit] + t * (x1[hit] - x0[hit])
    sign = np.where(up[hit], 1, -1)
    order = np.argsort(xc, kind="stable")
    xc, sign = xc[order], sign[order]
    # suffix sums: crossings strictly to the right of x
    suffix = np.concatenate([np.cumsum(sign[::-1])[::-1], [0]])
    return suffix[np.searchsorted(xc, xs, side="right")]


def polyline_winding(curve, re, im, workers=1):
    """Integer winding of a closed polyline about every raster point."""
    x0, y0 = curve.real, curve.imag
    x1, y1 = np.roll(x0, -1), np.roll(y0, -1)
    segs = (x0, y0, x1, y1)
    rows = lambda y: _row_windings(segs, re, y)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            out = list(pool.map(rows, im))
    else:
        out = [rows(y) for y in im]
    return np.array(out, dtype=int)


def essential_region(T: BandedModel, bounds, resolution,
                     trunc_sizes=DEFAULT_TRUNC_SIZES, detect_eigenvalues=True,
                     workers=1) -> RegionGrid:
    """Classify every cell of a raster of the complex plane.

    sigma_e1 = sigma_e2 = sigma'_e2 = sigma_e3 is the curve band; sigma_e4 adds
    cells of nonzero index; sigma_e5 adds off-curve components that contain
    no resolvent cell; sigma adds cells holding detected point eigenvalues.
    """
    bounds, (nx, ny) = _check_bounds(bounds, resolution)
    re0, re1, im0, im1 = bounds
    re = np.linspace(re0, re1, nx)
    im = np.linspace(im0, im1, ny)
    hx, hy = re[1] - re[0], im[1] - im[0]
    band = max(T.symbol.curve_tol(), 0.5 * float(np.hypot(hx, hy)))

    curve = T.symbol.curve(max_step=0.1 * min(hx, hy))
    tree = cKDTree(np.column_stack([curve.real, curve.imag]))
    RE, IM = np.meshgrid(re, im)
    dist, _ = tree.query(np.column_stack([RE.ravel(), IM.ravel()]), workers=1)
    on_curve = dist.reshape(ny, nx) <= band

    wind = polyline_winding(curve, re, im, workers)
    wind[on_curve] = 0
    base = -wind if T.space == TOEPLITZ else np.zeros_like(wind)
    kappa = np.where(on_curve, 0, base + T.index_shift())

    labels, ncomp = ndimage.label(~on_curve)
    comp = labels - 1

    eig_cell = np.zeros_like(on_curve)
    eigs = []
    zero_index = [c for c in range(ncomp) if kappa[comp == c][0] == 0]
    if detect_eigenvalues and zero_index:
        # candidates in nonzero-index cells are already spectrum; drop them
        for z in point_eigenvalues(T, bounds, trunc_sizes, curve_band=band):
            i = int(np.abs(im - z.imag).argmin())
            j = int(np.abs(re - z.real).argmin())
            if not on_curve[i, j] and kappa[i, j] == 0:
                eig_cell[i, j] = True
                eigs.append(z)

    components = []
    bad = np.zeros_like(on_curve)
    for c in range(ncomp):
        mask = comp == c
        k = int(kappa[mask][0])
        cells = int(mask.sum())
        meets = k == 0 and int((mask & ~eig_cell).sum()) > 0
        rec = {"id": c, "winding": int(wind[mask][0]), "kappa": k,
               "cells": cells, "meets_resolvent": bool(meets)}
        if k == 0 and not meets:
            rec["note"] = NO_RESOLVENT_NOTE
        if not meets:
            bad |= mask
        components.append(rec)

    e13 = on_curve
    e4 = on_curve | (kappa != 0)
    e5 = on_curve | bad
    sigma = e5 | eig_cell
    flags = {"sigma": sigma, "e1": e13, "e2": e13, "e2prime": e13, "e3": e13,
             "e4": e4, "e5": e5}
    return RegionGrid(bounds, (nx, ny), re, im, on_curve, wind, kappa, comp,
                      flags, tuple(components), tuple(eigs), band)
