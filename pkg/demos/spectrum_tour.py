"""
Spectrum of the transition matrix
=================================

With a zero weight the eigenvalues can be read off; otherwise they come from
the characteristic polynomial. Both paths agree.
"""

import numpy as np

from polytrans import build_transition, char_poly, eigenvalues_case1, eigenvalues_general, eigenvector_case1

w = np.array([0, 1, 1 - 1j])
print("char poly coefficients:", char_poly(w).coefficients)
print("closed form:", eigenvalues_case1(w).eigenvalues_of_M)
print("numeric:    ", np.round(eigenvalues_general(w).eigenvalues_of_M, 12))

pair = eigenvector_case1(w, 2)
print("eigenvector for", pair.mu_of_M, "->", pair.vector, "residual", pair.residual)

# generic weights: compare with a dense eigen-solver
rng = np.random.default_rng(3)
w = rng.normal(size=7) + 1j * rng.normal(size=7)
ours = np.sort_complex(eigenvalues_general(w).eigenvalues_of_M)
dense = np.sort_complex(np.linalg.eigvals(build_transition(w).dense()))
print("max difference to dense solver: %.1e" % np.abs(ours - dense).max())

# scaling the weights scales the eigenvalues of M - I
lam = 0.5 - 2j
scaled = np.sort_complex(eigenvalues_general(lam * w).eigenvalues_of_M - 1)
print("scaling law error: %.1e" % np.abs(scaled - np.sort_complex(lam * (ours - 1))).max())
