"""Toeplitz and Laurent models: winding, kernels, singular sequences.

Run: python demos/03_banded_models.py
"""

import numpy as np

from relspec.banded import (
    LAURENT,
    TOEPLITZ,
    BandedModel,
    LaurentSymbol,
    fredholm_classify,
    singular_sequence,
    toeplitz_kernel_basis,
    truncation_probe,
)

shift = LaurentSymbol.from_coeffs({1: 1})
T = BandedModel(TOEPLITZ, shift)
for lam in (0.0, 0.5j, 2.0):
    print(f"Toeplitz shift at {lam}:", fredholm_classify(T, lam).to_dict())

# The backward shift has a geometric-sequence kernel inside the disk.
back = LaurentSymbol.from_coeffs({-1: 1})
ker = toeplitz_kernel_basis(back, 0.5)
print("kernel dim of backward shift at 0.5:", ker.alpha,
      " first entries:", np.round(ker.vectors(4)[:, 0], 4))

# On the curve there is no closed range; residuals decay like 1/sqrt(n).
L = BandedModel(LAURENT, LaurentSymbol.from_coeffs({1: 1, -1: 1}))
for n in (64, 256, 1024):
    print(f"singular sequence n={n}: residual {singular_sequence(L, 2.0, n).residual:.4f}")

# Cross-check with the smallest singular value of a large finite section.
for lam in (0.3, 1.0):
    p = truncation_probe(T, lam, n=400)
    print(f"probe at {lam}: sv={p.singular_value:.3g} fredholm={p.fredholm}")
