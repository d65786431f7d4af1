"""Hecke modifications as Mobius maps of the line parameter.

For a fixed bundle and pair of points, the map sending the pair of lines
(l_p, l_q) to the pillowcase coordinate of the modified bundle depends on a
single projective parameter, and it is a Mobius transformation in it.
"""
import numpy as np

from pbmoduli import (
    INF,
    HeckeQuery,
    LatticeTau,
    NonSplit,
    ProjPoint,
    SplitGeneric,
    WeierstrassContext,
    chordal,
    cross_ratio,
    half_sum,
    hecke_mobius,
    hecke_point,
    pillowcase_map,
)
from pbmoduli.hecke import line_parameter

lat = LatticeTau(1j)
ctx = WeierstrassContext(lat)
p, q = lat.point(0.11 + 0.07j), lat.point(0.53 + 0.41j)
e = half_sum(p, q)[0]
lam = lat.point(0.2 + 0.33j)
E = SplitGeneric(lam)

# %% bad lines have closed forms
print("l_p = inf :", hecke_point(ctx, HeckeQuery(E, p, q, INF, 1.0, e)))
print("predicted :", pillowcase_map(ctx, lam + p - e))
print("l_p = 0   :", hecke_point(ctx, HeckeQuery(E, p, q, 0j, 1.0, e)))
print("predicted :", pillowcase_map(ctx, lam + e - p))

# %% good lines: the result is Mobius in the line parameter
M = hecke_mobius(ctx, E, p, q, e)
rng = np.random.default_rng(0)
w = [ProjPoint(complex(*rng.normal(size=2))) for _ in range(4)]
img = [M(x) for x in w]
print("cross ratio before:", cross_ratio(*w))
print("cross ratio after :", cross_ratio(*img))

# the nonsplit self-extension behaves the same way
N = hecke_mobius(ctx, NonSplit(2), p, q, e)
lines = [(complex(*rng.normal(size=2)), complex(*rng.normal(size=2))) for _ in range(3)]
for lp, lq in lines:
    direct = hecke_point(ctx, HeckeQuery(NonSplit(2), p, q, lp, lq, e))
    print(f"nonsplit l_p={lp:.2f}: direct vs Mobius chordal gap {chordal(direct, N(line_parameter(NonSplit(2), lp, lq))):.1e}")
