"""A short tour of the Weierstrass layer on a sheared lattice.

Run with ``python examples_scripts/01_weierstrass_tour.py``.
"""
import numpy as np

from pbmoduli import LatticeTau, WeierstrassContext, wp, pillowcase_map, pillowcase_preimages, two_torsion_points
from pbmoduli.weierstrass import branch_values, wp_lattice_sum

tau = 0.3 + 1.1j
lat = LatticeTau(tau)
ctx = WeierstrassContext(lat)

# %% invariants and quasi-periods
print("tau       =", tau)
print("g2, g3    =", np.round(ctx.g2, 10), np.round(ctx.g3, 10))
print("eta1, eta2=", np.round(ctx.eta1, 10), np.round(ctx.eta2, 10))
# eta1*tau - eta2 should be 2*pi*i exactly
print("Legendre residual:", ctx.legendre_residual())

# %% the q-series against a brute-force lattice sum
z = 0.21 + 0.17j
print("wp(z) q-series :", wp(ctx, z))
print("wp(z) lattice  :", wp_lattice_sum(z, tau))

# %% the differential equation (wp')^2 = 4 wp^3 - g2 wp - g3 on a small grid
grid = np.array([0.1 + 0.2j, 0.37 + 0.05j, 0.6 + 0.7j, 0.45 + 0.95j])
print("ODE residuals  :", [f"{ctx.ode_residual(w):.1e}" for w in grid])

# %% the pillowcase: a double cover of CP^1 branched over four values
print("branch values  :", branch_values(ctx))
for t in two_torsion_points(lat):
    print(f"  wp at torsion point {t.z:.3f} ->", pillowcase_map(ctx, t))

c = pillowcase_map(ctx, lat.point(0.3 + 0.4j))
a, b = pillowcase_preimages(ctx, c)
print("preimages of", c, "are", a.z, "and", b.z, "(a + b is a lattice point)")
