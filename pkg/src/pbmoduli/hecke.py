"""The two-point Hecke map h_e(E, l_p, l_q) with values in M^ss(X) = CP^1.

The modification ``H = H(E, l_p, l_q)`` has degree -2, and ``H(e)`` is
semistable of degree 0, so its class is ``p([N(e)])`` for any degree -1
line subbundle ``N`` of ``E`` whose lines at ``p`` and ``q`` are ``l_p`` and
``l_q``.  Degree -1 subbundles come in a one-parameter family ``N_a``
indexed by ``a`` in X:

* ``L + L^-1``: ``N_a = L(-a)`` embedded by sections with zeros at ``a`` and
  ``b = a - 2 lam``.  Its line at ``x`` has coordinate proportional to
  ``sigma(x - a) / sigma(x - b)``, so it meets the pair of lines with ratio
  ``w(a) = z_q / z_p``.
* ``F_2 (x) L_i``: ``N_a = L_i(-a)`` embedded by ``(zeta(x - a) + const, 1)``;
  it meets pairs with difference ``d(a) = z_q - z_p``.

Both ``w`` and ``d`` are degree-2 elliptic functions of ``a`` whose fibres
``{a, a'}`` give mutually inverse classes ``N_a(e)``, ``N_a'(e)``; the
induced map from the ratio (or difference) to ``p([N_a(e)])`` is a Moebius
map.  We fit it from three samples of the family instead of solving for
``a``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .elliptic import TorusPoint, half_sum, torus_distance, torus_equal, torus_neg
from .errors import BadSameDirection, DegenerateSamples
from .parabolic import (
    BundleClass,
    NonSplit,
    SplitGeneric,
    SplitTorsion,
    bad_same_direction,
    class_point,
    line_is_bad,
)
from .projective import INF, MobiusMap, ProjLike, ProjPoint, chordal, mobius_from_three, proj
from .weierstrass import WeierstrassContext, pillowcase_map

__all__ = [
    "HeckeQuery",
    "split_sample",
    "nonsplit_sample",
    "seed_points",
    "line_parameter",
    "hecke_mobius",
    "hecke_point",
]

SEED_STEP = (0.137, 0.211)  # a_k = e + (0.137 + 0.211 tau) k
SAMPLE_SEPARATION = 0.1
MAX_SEEDS = 60
PILOT = 4


@dataclass(frozen=True)
class HeckeQuery:
    E: BundleClass
    p: TorusPoint
    q: TorusPoint
    lp: ProjPoint
    lq: ProjPoint
    e: TorusPoint | None = None

    def __post_init__(self):
        object.__setattr__(self, "lp", proj(self.lp))
        object.__setattr__(self, "lq", proj(self.lq))
        if self.e is None:
            object.__setattr__(self, "e", half_sum(self.p, self.q)[0])
        if torus_equal(self.p, self.q):
            raise ValueError("Hecke points p and q must be distinct")
        if not torus_equal(self.e + self.e, self.p + self.q):
            raise ValueError("e must satisfy 2e = p + q")

    def swapped(self) -> "HeckeQuery":
        return HeckeQuery(self.E, self.q, self.p, self.lq, self.lp, self.e)


def _frame_shift(lam: TorusPoint) -> complex:
    # representative of 2*lam chosen so that lam <-> -lam acts as z -> 1/z
    return lam.z - torus_neg(lam).z


def split_sample(ctx: WeierstrassContext, lam: TorusPoint, p: TorusPoint, q: TorusPoint,
                 a: TorusPoint, e: TorusPoint | None = None) -> tuple[ProjPoint, ProjPoint]:
    """``(w(a), p([N_a(e)]))`` for the subbundle family of ``L + L^-1``."""
    if e is None:
        e = half_sum(p, q)[0]
    D = _frame_shift(lam)
    s = ctx.sigma_raw
    num = s(q.z - a.z) * s(p.z - a.z + D)
    den = s(p.z - a.z) * s(q.z - a.z + D)
    w = INF if den == 0 else ProjPoint(num / den)
    r = pillowcase_map(ctx, lam - a + e)
    return w, r


def nonsplit_sample(ctx: WeierstrassContext, i: int, p: TorusPoint, q: TorusPoint,
                    a: TorusPoint, e: TorusPoint | None = None) -> tuple[ProjPoint, ProjPoint]:
    """``(d(a), p([N_a(e)]))`` for the subbundle family of ``F_2 (x) L_i``."""
    if e is None:
        e = half_sum(p, q)[0]
    lam_i = class_point(NonSplit(i), p.lat)
    zq = ctx.zeta_raw(q.z - a.z)
    zp = ctx.zeta_raw(p.z - a.z)
    d = proj(zq - zp)
    r = pillowcase_map(ctx, lam_i - a + e)
    return d, r


def seed_points(e: TorusPoint, start: int = 1, count: int = MAX_SEEDS):
    lat = e.lat
    step = SEED_STEP[0] + SEED_STEP[1] * lat.tau
    for k in range(start, start + count):
        yield lat.point(e.z + step * k)


def _forbidden(E: BundleClass, p: TorusPoint, q: TorusPoint) -> list[TorusPoint]:
    if isinstance(E, SplitGeneric):
        two_lam = E.lam + E.lam
        return [p, q, p + two_lam, q + two_lam]
    return [p, q]


def _affine_normaliser(values: list[complex]) -> MobiusMap:
    """Affine map ``x -> (x - c) / k`` centring a sample cloud at unit spread."""
    v = np.array(values)
    c = complex(np.median(v.real), np.median(v.imag))
    k = float(np.median(np.abs(v - c)))
    if not k > 0:
        k = 1.0
    return MobiusMap([[1.0, -c], [0.0, k]])


def hecke_mobius(ctx: WeierstrassContext, E: BundleClass, p: TorusPoint, q: TorusPoint,
                 e: TorusPoint | None = None, seed_start: int = 1) -> MobiusMap:
    """Moebius map from the line parameter (``z_q/z_p`` or ``z_q - z_p``) to h_e.

    The line parameter carries a frame-dependent scale, so samples are
    compared (and the map fitted) after an affine normalisation of both
    sides, fixed from the first ``PILOT`` seeds.
    """
    if isinstance(E, SplitTorsion):
        raise ValueError("h_e is constant for L_i + L_i; no Moebius map")
    if e is None:
        e = half_sum(p, q)[0]
    avoid = _forbidden(E, p, q)
    lat = p.lat
    raw: list[tuple[ProjPoint, ProjPoint]] = []
    for a in seed_points(e, seed_start):
        if any(torus_distance(a, x) <= 10 * lat.tol for x in avoid):
            continue
        if isinstance(E, SplitGeneric):
            w, r = split_sample(ctx, E.lam, p, q, a, e)
        else:
            w, r = nonsplit_sample(ctx, E.i, p, q, a, e)
        if w.inf or r.inf:
            continue
        raw.append((w, r))
        if len(raw) < PILOT:
            continue
        if len(raw) == PILOT:
            nw = _affine_normaliser([w.z for w, _ in raw])
            nr = _affine_normaliser([r.z for _, r in raw])
        chosen: list[tuple[ProjPoint, ProjPoint]] = []
        for w, r in raw:
            u, v = nw(w), nr(r)
            if all(chordal(u, u2) >= SAMPLE_SEPARATION and chordal(v, v2) >= SAMPLE_SEPARATION
                   for u2, v2 in chosen):
                chosen.append((u, v))
                if len(chosen) == 3:
                    return nr.inverse() @ mobius_from_three(chosen, tol=lat.tol) @ nw
    raise DegenerateSamples(f"no well-separated sample triple within {MAX_SEEDS} seeds")


def line_parameter(E: BundleClass, lp: ProjLike, lq: ProjLike) -> ProjPoint:
    """Aut(E)-invariant of a pair of lines: ``lq / lp`` (split) or ``lq - lp`` (nonsplit)."""
    x1, y1 = proj(lp).homogeneous()
    x2, y2 = proj(lq).homogeneous()
    if isinstance(E, SplitGeneric):
        return ProjPoint.from_homogeneous([x2 * y1, y2 * x1])
    return ProjPoint.from_homogeneous([x2 * y1 - x1 * y2, y1 * y2])


def _bad_value(ctx, E: BundleClass, x: TorusPoint, coord: ProjPoint, e: TorusPoint) -> ProjPoint:
    lam = class_point(E, x.lat)
    if isinstance(E, SplitGeneric) and not coord.inf:
        return pillowcase_map(ctx, lam + e - x)
    return pillowcase_map(ctx, lam + x - e)


def hecke_point(ctx: WeierstrassContext, query: HeckeQuery, seed_start: int = 1) -> ProjPoint:
    """``h_e(E, l_p, l_q) = [H(E, l_p, l_q) (x) O(e)]`` as a point of CP^1."""
    E, p, q, lp, lq, e = query.E, query.p, query.q, query.lp, query.lq, query.e
    if bad_same_direction(E, lp, lq, tol=p.lat.tol):
        raise BadSameDirection("l_p and l_q are bad in the same direction")
    if isinstance(E, SplitTorsion):
        return pillowcase_map(ctx, class_point(E, p.lat) + p - e)
    if line_is_bad(E, lp):
        return _bad_value(ctx, E, p, lp, e)
    if line_is_bad(E, lq):
        return _bad_value(ctx, E, q, lq, e)
    M = hecke_mobius(ctx, E, p, q, e, seed_start)
    return M(line_parameter(E, lp, lq))
