"""Numerical toolkit for linear relations (multivalued linear operators).

Finite-dimensional relations are stored as graph subspaces; banded
Laurent/Toeplitz models provide an infinite-dimensional testbed on which the
five essential spectra are distinct.
"""

from relspec.subspace import Subspace, span, intersect, sum_, complement
from relspec.relation import (
    Relation,
    FredholmData,
    build,
    from_matrix,
    from_pencil,
    from_generators,
)
from relspec.spectra import (
    ALL_OF_C,
    classify_point,
    spectrum,
    weyl_correction,
    mobius_resolvent,
    mobius_factor_check,
)

__version__ = "0.1.0"

__all__ = [
    "Subspace",
    "span",
    "intersect",
    "sum_",
    "complement",
    "Relation",
    "FredholmData",
    "build",
    "from_matrix",
    "from_pencil",
    "from_generators",
    "ALL_OF_C",
    "classify_point",
    "spectrum",
    "weyl_correction",
    "mobius_resolvent",
    "mobius_factor_check",
]
