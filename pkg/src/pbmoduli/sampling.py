"""Random draws of torus points, lines and stable parabolic bundles.

Every sampler takes a ``numpy.random.Generator`` so callers control
reproducibility.
"""
from __future__ import annotations

import numpy as np

from .elliptic import LatticeTau, TorusPoint, torus_distance, two_torsion_points
from .moduli import ModuliConfig
from .parabolic import NonSplit, ParabolicBundle, SplitGeneric, SplitTorsion
from .projective import INF, ProjPoint

__all__ = [
    "random_point",
    "random_generic_point",
    "random_line",
    "random_config",
    "random_good_bundle",
    "random_bad_bundle",
    "random_stable_bundle",
]


def random_point(lat: LatticeTau, rng: np.random.Generator, avoid=(), min_dist: float = 0.05) -> TorusPoint:
    for _ in range(1000):
        s, r = rng.random(2)
        lam = lat.point(s + r * lat.tau)
        if all(torus_distance(lam, x) > min_dist for x in avoid):
            return lam
    raise RuntimeError("could not draw a point away from the excluded set")


def random_generic_point(lat: LatticeTau, rng: np.random.Generator, min_dist: float = 0.05) -> TorusPoint:
    """A point away from the 2-torsion points."""
    return random_point(lat, rng, two_torsion_points(lat), min_dist)


def random_line(rng: np.random.Generator) -> ProjPoint:
    """A good-looking coordinate: nonzero, finite, modulus spread over a few decades."""
    mod = 10 ** rng.uniform(-1.0, 1.0)
    return ProjPoint(mod * np.exp(2j * np.pi * rng.random()))


def random_config(tau: complex, rng: np.random.Generator, tol: float = 1e-9,
                  min_dist: float = 0.1) -> ModuliConfig:
    lat = LatticeTau(tau, tol)
    pts: list[TorusPoint] = []
    for _ in range(3):
        pts.append(random_point(lat, rng, pts, min_dist))
    return ModuliConfig.from_values(tau, [p.z for p in pts], tol=tol)


def random_good_bundle(cfg: ModuliConfig, rng: np.random.Generator,
                       nonsplit_fraction: float = 0.2, bad_fraction: float = 0.2) -> ParabolicBundle:
    """Stable bundle whose line at p3 is good; l1, l2 occasionally bad."""
    lat = cfg.lat
    l3 = random_line(rng)
    l1, l2 = random_line(rng), random_line(rng)
    if rng.random() < nonsplit_fraction:
        E = NonSplit(int(rng.integers(1, 5)))
        bad = [INF]
    else:
        E = SplitGeneric(random_generic_point(lat, rng))
        bad = [INF, ProjPoint(0j)]
    if rng.random() < bad_fraction:
        l1 = bad[int(rng.integers(len(bad)))]
    if rng.random() < bad_fraction:
        choices = [b for b in bad if b != l1]
        if choices:
            l2 = choices[int(rng.integers(len(choices)))]
    return ParabolicBundle.build(E, cfg.points, (l1, l2, l3))


def random_bad_bundle(cfg: ModuliConfig, rng: np.random.Generator, torsion_fraction: float = 0.2,
                      lam: TorusPoint | None = None) -> ParabolicBundle:
    """Stable bundle whose line at p3 is bad.

    Split generic draws put the bad line at p3 either on ``L`` or on
    ``L^-1`` so that callers exercise the canonicalising swap.
    """
    lat = cfg.lat
    u = rng.random()
    if lam is None and u < torsion_fraction:
        i = int(rng.integers(1, 5))
        if u < torsion_fraction / 2:
            coords = [random_line(rng) for _ in range(3)]
            return ParabolicBundle.build(SplitTorsion(i), cfg.points, coords)
        l1, l2 = random_line(rng), random_line(rng)
        return ParabolicBundle.build(NonSplit(i), cfg.points, (l1, l2, INF))
    if lam is None:
        lam = random_generic_point(lat, rng)
    l1, l2 = random_line(rng), random_line(rng)
    v = rng.random()
    if v < 0.1:
        l1 = ProjPoint(0j)
    elif v < 0.2:
        l2 = ProjPoint(0j)
    pb = ParabolicBundle.build(SplitGeneric(lam), cfg.points, (l1, l2, INF))
    if rng.random() < 0.3:
        # same point of the moduli space, presented on L^-1 + L
        from .parabolic import _swap

        E, coords = _swap(pb.bundle, pb.coords)
        pb = pb.with_coords(coords, E)
    return pb


def random_stable_bundle(cfg: ModuliConfig, rng: np.random.Generator,
                         bad_p3_fraction: float = 0.3) -> ParabolicBundle:
    if rng.random() < bad_p3_fraction:
        return random_bad_bundle(cfg, rng)
    return random_good_bundle(cfg, rng)
