"""
Magic angles and the flat band
==============================

Magic couplings are the values of alpha for which the chiral Hamiltonian has
a flat band at zero energy.  They are reciprocals of the eigenvalues of a
compact operator, so one dense eigenproblem gives all of them at once.
"""

import numpy as np

from chiraltbg.analysis import ZETA_SCALE, compute_g0, compute_g1, kernel_u0
from chiraltbg.potential import bistritzer_macdonald
from chiraltbg.spectral import cell_grid, lowest_band, magic_alphas

U = bistritzer_macdonald()
N = 12

# %%
# The spectrum is the same at every probe momentum, so k = 0 is enough.
report = magic_alphas(U, N)
real = report.real_positive(upper=6.0)
print("real magic couplings below 6:", np.round(real, 6))
print("first complex ones:", [a.alpha for a in report.angles if not a.is_real][:2])

# %%
# At the first magic coupling the lowest band is flat: E_1(k) vanishes on the
# whole cell, not just at the protected points.
alpha = real[0]
E1 = [lowest_band(U, alpha, 0.0, k, N) for k in cell_grid(6).ravel()]
print(f"max E_1 over a 6x6 grid at alpha = {alpha:.8f}: {max(E1):.1e}")

# %%
# The zero mode at k = 0 determines the perturbation constants g0 and g1.
u0 = kernel_u0(U, alpha, N)
g0, g1 = compute_g0(u0), compute_g1(u0, U)
print(f"|g0| = {abs(g0) / ZETA_SCALE**2:.4f}, |g1| = {abs(g1) / ZETA_SCALE:.4f} (zeta units)")
