"""The moduli space with three marked points as a blow-up of (CP^1)^3.

Good-locus bundles map bijectively onto the complement of an embedded
elliptic curve; each bad-locus fibre over a curve point is a CP^1 that
collapses to that point.
"""
import numpy as np

from pbmoduli import (
    GoodLocus,
    ModuliConfig,
    OnCurve,
    curve_points,
    decomposition_poincare,
    f_embed,
    invert_bad,
    invert_good,
    locate,
    pi_map,
    pi_tilde_1,
    poincare_formula,
)
from pbmoduli.sampling import random_bad_bundle, random_good_bundle

cfg = ModuliConfig.from_values(0.3 + 1.1j, (0.11 + 0.07j, 0.53 + 0.41j, 0.29 + 0.83j))
rng = np.random.default_rng(42)

# %% good locus: pi is invertible off the curve
pb = random_good_bundle(cfg, rng)
t = pi_map(cfg, pb)
print("good bundle ->", t, "|", locate(cfg, t))
print("round trip gap:", pi_map(cfg, invert_good(cfg, t)).distance(t))

# %% bad locus: a whole CP^1 lands on one curve point
pb = random_bad_bundle(cfg, rng)
lam = pi_tilde_1(cfg, pb)
images = [pi_map(cfg, invert_bad(cfg, lam, m)) for m in (0.5, -2j, 3 + 1j, 10.0)]
print("fibre spread   :", max(x.distance(images[0]) for x in images))
print("curve point    :", f_embed(cfg, lam), "|", locate(cfg, images[0]))

# %% locate separates the two pieces
tags = [locate(cfg, pi_map(cfg, random_good_bundle(cfg, rng))) for _ in range(50)]
tags += [locate(cfg, pi_map(cfg, random_bad_bundle(cfg, rng))) for _ in range(50)]
print("good tagged good:", sum(isinstance(x, GoodLocus) for x in tags[:50]), "/ 50")
print("bad tagged curve:", sum(isinstance(x, OnCurve) for x in tags[50:]), "/ 50")

# %% a coarse picture of the curve, and the Betti numbers it forces
rows = curve_points(cfg, 6)
print("curve samples  :", len(rows))
print("P(t) =", poincare_formula(1, 3), "; decomposition gives", decomposition_poincare())
