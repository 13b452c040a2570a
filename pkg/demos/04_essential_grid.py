"""Rasterize the essential spectra of a perturbed Toeplitz model.

Run: python demos/04_essential_grid.py [out.csv]
"""

import sys

from relspec.banded import TOEPLITZ, BandedModel, LaurentSymbol, essential_region

T = BandedModel(TOEPLITZ, LaurentSymbol.from_coeffs({1: 1.0, -1: 0.5, 2: 0.25}))
TF = T.with_perturbation([({0: 1.5, 2: -1j}, {1: 1.0})])

g = essential_region(T, (-2.5, 2.5, -2.5, 2.5), (96, 96))
gf = essential_region(TF, (-2.5, 2.5, -2.5, 2.5), (96, 96))

for f in ("e1", "e3", "e4", "e5", "sigma"):
    print(f"{f:6s} cells: T={int(g.flags[f].sum()):5d}  T+F={int(gf.flags[f].sum()):5d}")
cols = ("re", "im", "e1", "e2", "e3", "e4")
print("e1..e4 columns identical:", g.to_csv(columns=cols) == gf.to_csv(columns=cols))
print("eigenvalues found for T+F:", [complex(round(z.real, 4), round(z.imag, 4))
                                     for z in gf.eigenvalues])
for rec in gf.components:
    print("component", rec)

if len(sys.argv) > 1:
    with open(sys.argv[1], "w") as fh:
        gf.to_csv(fh)
    print("wrote", sys.argv[1])
