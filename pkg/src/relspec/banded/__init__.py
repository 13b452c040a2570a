"""Banded Laurent/Toeplitz operator models and rasterized essential spectra."""

from relspec.banded.symbol import LaurentSymbol, OnCurveError, winding
from relspec.banded.model import (
    LAURENT,
    TOEPLITZ,
    BandedModel,
    conjugate_model,
    fredholm_classify,
    mobius_laurent,
    point_eigenvalues,
    singular_sequence,
    sparse,
    toeplitz_kernel_basis,
    truncation_probe,
)
from relspec.banded.region import RegionGrid, essential_region

__all__ = [
    "LAURENT",
    "TOEPLITZ",
    "LaurentSymbol",
    "OnCurveError",
    "winding",
    "BandedModel",
    "conjugate_model",
    "fredholm_classify",
    "mobius_laurent",
    "point_eigenvalues",
    "singular_sequence",
    "sparse",
    "toeplitz_kernel_basis",
    "truncation_probe",
    "RegionGrid",
    "essential_region",
]
