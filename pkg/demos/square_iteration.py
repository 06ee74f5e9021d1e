"""
Driving a random quadrangle to a square
========================================

Design weights for the unit square, then iterate from a random start and
compare the observed decay of the shape distance with the predicted rate.
"""

import numpy as np

from polytrans import design_general, fitted_decay_rate, iterate
from polytrans.svg import trajectory_svg

square = np.array([0, 1, 1 + 1j, 1j])
result = design_general(square)
print(result.status.value, "lambda =", np.round(result.lam, 6))
print("predicted rate: %.6f" % result.predicted_rate)

rng = np.random.default_rng(1)
start = rng.normal(size=4) + 1j * rng.normal(size=4)
traj = iterate(start, result.weights, 40, target=square)
for frame in traj.frames[::5]:
    print("step %2d  distance %.3e" % (frame.step, frame.distance))
print("fitted rate: %.6f" % fitted_decay_rate(traj.distances))

# the classical choice lambda = i also works, only slower
slow = iterate(start, 1j * np.array([0, -1j, -1 - 1j, -1]), 40, target=square)
print("lambda = i fitted rate: %.6f" % fitted_decay_rate(slow.distances))

with open("square_trajectory.svg", "w") as fh:
    fh.write(trajectory_svg([f.shape for f in traj.frames[:12]]))
print("wrote square_trajectory.svg")
