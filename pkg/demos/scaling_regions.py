"""
Where can the scaling live?
===========================

Each competing eigenvalue mu rules out part of the complex plane for the
scaling lambda. What is left is a circle exterior, a circle interior or a
half plane. A design exists when the pieces overlap.
"""

import numpy as np

from polytrans import competing_mus, dominance_margin, lambda_region, search_lambda
from polytrans.svg import region_svg

for mu in (0, 3, -1, 1j, 1):
    print("mu = %-6s -> %s" % (mu, lambda_region(mu).describe()))

# the unit square has two competitors
mus = competing_mus(np.array([0, 1, 1 + 1j, 1j]))
regions = [lambda_region(m) for m in mus]
for r in regions:
    print(r.describe())

extent = 3.0
ticks = np.linspace(-extent, extent, 121)
grid = (ticks[None, :] + 1j * ticks[:, None]).ravel()
inside = np.all([r.contains(grid) for r in regions], axis=0)
print("fraction of the box that works: %.3f" % inside.mean())

best = search_lambda(mus)
print("best lambda", np.round(best.lam, 6), "margin %.6f" % best.margin)
print("margin of lambda = i: %.6f" % dominance_margin(1j, mus))

with open("square_regions.svg", "w") as fh:
    fh.write(region_svg(regions, extent, inside, grid))
print("wrote square_regions.svg")
