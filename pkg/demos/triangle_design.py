"""
Designing weights for a triangle
================================

Pick any target triangle. The designed weights send every start triangle to
the target shape in a single step.
"""

import numpy as np

from polytrans import apply_step, design_triangle, shape_distance

target = np.array([0, 1, 1j])
result = design_triangle(target)
print("weights:", np.round(result.weights, 12))
print("dominant eigenvalue:", result.dominant)

# one step from a few random triangles
rng = np.random.default_rng(0)
for _ in range(5):
    start = rng.normal(size=3) + 1j * rng.normal(size=3)
    print("distance after one step: %.2e" % shape_distance(apply_step(start, result.weights), target))

# a collinear "triangle" is a legal target too
print("collinear weights:", design_triangle(np.array([0, 1, 2])).weights)
