"""
Dirac points in an in-plane field
=================================

With a field B the two protected Dirac points at K and K' start to move.
For real B they travel along the horizontal lines of a rectangular grid until
they collide and turn onto a vertical line near the first magic coupling.
"""

import numpy as np

from chiraltbg.lattice import reduce_to_fundamental
from chiraltbg.plotting import track_svg
from chiraltbg.potential import bistritzer_macdonald
from chiraltbg.spectral import dirac_points, track_dirac

U = bistritzer_macdonald()
N = 10

# %%
# A few snapshots at B = 0.1.
for alpha in (0.2, 0.4, 0.55, 0.585):
    pts = dirac_points(U, alpha, 0.1, N)
    ks = [reduce_to_fundamental(k)[0] for k in pts.momenta()]
    print(f"alpha = {alpha:5.3f}:", ", ".join(f"{k:.4f}" for k in ks))

# %%
# Continue one point in alpha for three field directions and draw the paths.
paths = []
for theta in (0.0, 0.05, 0.1):
    B = 0.1 * np.exp(2j * np.pi * theta)
    paths.append((theta, track_dirac(U, B, 0.1, 0.5, 9, N)))
track_svg(paths, "dirac_paths.svg", color="theta", title="|B| = 0.1")
print("wrote dirac_paths.svg")
