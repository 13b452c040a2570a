"""Spectra of pencils and the resolvent map lambda -> 1/(mu - lambda).

Run: python demos/02_spectra_and_mobius.py
"""

import numpy as np

from relspec import relation as rel
from relspec import spectra

A = np.diag([1.0, 2.0, 3.0])
B = np.diag([1.0, 1.0, 0.0])  # third direction is an infinite eigenvalue
T = rel.from_pencil(A, B)
print("finite spectrum of the pencil:", np.round(spectra.spectrum(T), 6))
print("multivalued part dim:", rel.parts(T).mv_part.dim)

for lam in (1.0, 3.0, 0.5j):
    pc = spectra.classify_point(T, lam)
    print(f"lambda={lam}: resolvent={pc.in_resolvent}", pc.fredholm.to_dict())

mu = 5.0
Tmu = spectra.mobius_resolvent(T, mu)
# the infinite eigenvalue of the pencil lands at 0
print("spectrum of the resolvent relation:", np.round(np.sort_complex(spectra.spectrum(Tmu)), 6))
print("expected 1/(mu - lambda):", np.round(np.sort_complex(1 / (mu - spectra.spectrum(T))), 6))

fc = spectra.mobius_factor_check(T, mu, 2.0)
print("factorization holds at lambda=2:", fc.holds, f"residual={fc.residual:.1e}")

# A finite-rank correction pushes an eigenvalue into the resolvent set.
K = spectra.weyl_correction(T, 2.0)
print("rank of K:", rel.parts(K).range.dim,
      " 2 in resolvent of T+K:", spectra.in_resolvent(rel.add(T, K), 2.0))
