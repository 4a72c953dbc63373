"""
Merging at Gamma
================

Close to a simple magic coupling and for small real B, the two Dirac points
meet at Gamma at a shifted coupling alpha*(B).  At that coupling the band
touching is quadratic.
"""

from chiraltbg.analysis import bifurcation_gamma
from chiraltbg.potential import bistritzer_macdonald
from chiraltbg.spectral import magic_alphas

U = bistritzer_macdonald()
N = 10
alpha_bar = magic_alphas(U, N, count=2).real_positive()[0]

# %%
rep = bifurcation_gamma(U, alpha_bar, [0.025, 0.05, 0.1], N, qbcp_field=0.1)
for s in rep.samples:
    print(f"B = {s.B:5.3f}  alpha* = {s.alpha_star:.9f}  lambda_0 = {s.coefficient.real:.6f}")
print("extrapolated alpha*(0):", rep.intercept, " magic value:", alpha_bar)

# %%
# Below alpha* the two points sit on one axis through Gamma, above it on the other.
g = rep.geometry
print("below:", g["below"]["axis"], g["below"]["points"])
print("above:", g["above"]["axis"], g["above"]["points"])

# %%
print(f"E_1 ~ |k|^{rep.qbcp['exponent']:.3f}, gamma_1 = {rep.qbcp['gamma1']:.4f}")
