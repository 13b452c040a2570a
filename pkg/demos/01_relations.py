"""Build a few relations, read off their parts and indices.

Run: python demos/01_relations.py
"""

import numpy as np

from relspec import relation as rel

# An ordinary matrix viewed as a relation.
A = np.array([[1.0, 2.0, 0.0], [0.0, 0.0, 1.0]])
T = rel.from_matrix(A)
print("matrix C^3 -> C^2:", rel.fredholm_data(T).to_dict())

# A relation with a multivalued part: (x, 2x) plus everything of the form (0, y e2).
M = rel.from_generators([np.array([1.0, 0, 2, 0]), np.array([0, 0, 0, 1.0])], 2, 2)
p = rel.parts(M)
print("dims  G D R N T(0):", M.graph.dim, p.domain.dim, p.range.dim, p.kernel.dim, p.mv_part.dim)
print("inverse swaps kernel and multivalued part:",
      rel.parts(rel.inverse(M)).kernel.dim, rel.parts(rel.inverse(M)).mv_part.dim)

# Products obey the index formula with a correction term.
S = rel.from_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))
ST = rel.compose(S, M)
print("kappa(ST), kappa(T), kappa(S):", rel.kappa(ST), rel.kappa(M), rel.kappa(S))

# Quotient norm and minimum modulus.
print("||M|| =", round(rel.rel_norm(M), 6), " gamma(M) =", round(rel.min_modulus(M), 6))
