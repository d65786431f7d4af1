"""The moduli space of stable parabolic bundles on X with three marked points.

``pi_map`` sends a stable ``(E, l1, l2, l3)`` to
``([E], h_{e2}(E, l1, l3), h_{e1}(E, l2, l3))`` in ``(CP^1)^3``.  It is
injective on the locus where ``l3`` is good, and collapses each fibre of the
locus where ``l3`` is bad onto the elliptic curve ``f_embed(Jac X)``.  The
bad locus is parametrised by ``(pi_tilde_1, h_bad)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .elliptic import TorusPoint, canonical_sign, half_sum, torus_distance, torus_equal, two_torsion_points
from .errors import NotBadLocus, NotStable, OnCurveInput, ToleranceFailure
from .hecke import HeckeQuery, hecke_mobius, hecke_point
from .parabolic import (
    BundleClass,
    NonSplit,
    ParabolicBundle,
    SplitGeneric,
    SplitTorsion,
    Stability,
    canonical_form,
    class_point,
    classify_stability,
    line_is_bad,
)
from .projective import INF, ProjPoint, chordal, proj
from .weierstrass import WeierstrassContext, branch_values, pillowcase_map, pillowcase_preimages

__all__ = [
    "ModuliConfig",
    "ModuliTriple",
    "GoodLocus",
    "OnCurve",
    "LocusTag",
    "pi_map",
    "f_embed",
    "pi_tilde_1",
    "h_bad",
    "locate",
    "invert_good",
    "invert_bad",
    "m2_map",
    "forget_p3",
    "curve_points",
]


@dataclass(frozen=True, eq=False)
class ModuliConfig:
    """Marked points and the half-points ``2e1 = p2+p3``, ``2e2 = p3+p1``, ``2e3 = p1+p2``."""

    ctx: WeierstrassContext
    p1: TorusPoint
    p2: TorusPoint
    p3: TorusPoint

    def __post_init__(self):
        lat = self.ctx.lat
        pts = [lat.point(p.z if isinstance(p, TorusPoint) else p) for p in (self.p1, self.p2, self.p3)]
        for name, p in zip(("p1", "p2", "p3"), pts):
            object.__setattr__(self, name, p)
        for a in range(3):
            for b in range(a + 1, 3):
                if torus_distance(pts[a], pts[b]) <= 10 * lat.tol:
                    raise ValueError("marked points p1, p2, p3 must be distinct")
        object.__setattr__(self, "e1", half_sum(self.p2, self.p3)[0])
        object.__setattr__(self, "e2", half_sum(self.p3, self.p1)[0])
        object.__setattr__(self, "e3", half_sum(self.p1, self.p2)[0])

    @classmethod
    def from_values(cls, tau: complex, points, tol: float = 1e-9,
                    trunc_eps: float = 1e-14) -> "ModuliConfig":
        from .elliptic import LatticeTau

        ctx = WeierstrassContext(LatticeTau(tau, tol), trunc_eps=trunc_eps, tol=tol)
        return cls(ctx, *points)

    @property
    def lat(self):
        return self.ctx.lat

    @property
    def tol(self) -> float:
        return self.ctx.lat.tol

    @property
    def curve_tol(self) -> float:
        return 100 * self.ctx.lat.tol

    @property
    def points(self) -> tuple[TorusPoint, TorusPoint, TorusPoint]:
        return self.p1, self.p2, self.p3


@dataclass(frozen=True)
class ModuliTriple:
    c1: ProjPoint
    c2: ProjPoint
    c3: ProjPoint

    def __post_init__(self):
        for name in ("c1", "c2", "c3"):
            object.__setattr__(self, name, proj(getattr(self, name)))

    def __iter__(self):
        return iter((self.c1, self.c2, self.c3))

    def distance(self, other: "ModuliTriple") -> float:
        return max(chordal(a, b) for a, b in zip(self, other))

    def close_to(self, other: "ModuliTriple", tol: float = 1e-9) -> bool:
        return self.distance(other) <= tol


@dataclass(frozen=True)
class GoodLocus:
    pass


@dataclass(frozen=True)
class OnCurve:
    lam: TorusPoint


LocusTag = Union[GoodLocus, OnCurve]


def _check_marks(cfg: ModuliConfig, pb: ParabolicBundle, n: int = 3) -> None:
    if pb.n != n:
        raise ValueError(f"expected {n} marked points, got {pb.n}")
    for mark, p in zip(pb.marks, cfg.points):
        if not torus_equal(mark.at, p):
            raise ValueError("marks must sit at the configured points p1, p2, p3 in order")


def _require_stable(pb: ParabolicBundle) -> None:
    verdict, m = classify_stability(pb)
    if verdict is not Stability.STABLE:
        raise NotStable(f"parabolic bundle is {verdict.value} (m={m}, n={pb.n})")


def _hecke(cfg, E, i, j, li, lj, e) -> ProjPoint:
    pts = cfg.points
    return hecke_point(cfg.ctx, HeckeQuery(E, pts[i], pts[j], li, lj, e))


def pi_map(cfg: ModuliConfig, pb: ParabolicBundle) -> ModuliTriple:
    _check_marks(cfg, pb)
    _require_stable(pb)
    E = pb.bundle
    l1, l2, l3 = pb.coords
    c1 = pillowcase_map(cfg.ctx, class_point(E, cfg.lat))
    c2 = _hecke(cfg, E, 0, 2, l1, l3, cfg.e2)
    c3 = _hecke(cfg, E, 1, 2, l2, l3, cfg.e1)
    return ModuliTriple(c1, c2, c3)


def f_embed(cfg: ModuliConfig, lam: TorusPoint) -> ModuliTriple:
    ctx = cfg.ctx
    return ModuliTriple(
        pillowcase_map(ctx, lam),
        pillowcase_map(ctx, lam + cfg.p3 - cfg.e2),
        pillowcase_map(ctx, lam + cfg.p3 - cfg.e1),
    )


def _bad_locus_form(cfg: ModuliConfig, pb: ParabolicBundle) -> ParabolicBundle:
    _check_marks(cfg, pb)
    _require_stable(pb)
    pb = canonical_form(pb)
    if not line_is_bad(pb.bundle, pb.marks[2]):
        raise NotBadLocus("l_p3 is a good line")
    return pb


def pi_tilde_1(cfg: ModuliConfig, pb: ParabolicBundle) -> TorusPoint:
    """Lift of ``[E]`` to Jac(X), using the bad line at p3 to pick ``L`` over ``L^-1``."""
    pb = _bad_locus_form(cfg, pb)
    return class_point(pb.bundle, cfg.lat)


def h_bad(cfg: ModuliConfig, pb: ParabolicBundle) -> ProjPoint:
    pb = _bad_locus_form(cfg, pb)
    l1, l2, _ = pb.coords
    return _hecke(cfg, pb.bundle, 0, 1, l1, l2, cfg.e3)


def locate(cfg: ModuliConfig, t: ModuliTriple) -> LocusTag:
    """``OnCurve(lam)`` if ``t`` lies on ``f_embed(Jac X)``, else ``GoodLocus()``."""
    for lam in pillowcase_preimages(cfg.ctx, t.c1):
        if f_embed(cfg, lam).close_to(t, cfg.curve_tol):
            return OnCurve(lam)
    return GoodLocus()


def _torsion_index(cfg: ModuliConfig, lam: TorusPoint) -> int | None:
    for i, t in enumerate(two_torsion_points(cfg.lat), start=1):
        if torus_equal(lam, t):
            return i
    return None


def _bundle_over(cfg: ModuliConfig, c1: ProjPoint) -> BundleClass:
    for i, b in enumerate(branch_values(cfg.ctx), start=1):
        if chordal(b, c1) <= cfg.curve_tol:
            return NonSplit(i)
    lam, _ = pillowcase_preimages(cfg.ctx, c1)
    return SplitGeneric(canonical_sign(lam))


def _solve_line(cfg: ModuliConfig, E: BundleClass, m, x: TorusPoint, e: TorusPoint,
                target: ProjPoint) -> ProjPoint:
    """Line at ``x`` with ``h_e(E, l3', l_x) = target``; bad lines are returned exactly."""
    lam = class_point(E, cfg.lat)
    ctx = cfg.ctx
    bad = [(INF, pillowcase_map(ctx, lam + x - e))]
    if isinstance(E, SplitGeneric):
        bad.append((ProjPoint(0j), pillowcase_map(ctx, lam + e - x)))
    for line, value in bad:
        if chordal(value, target) <= cfg.curve_tol:
            return line
    return m.inverse()(target)


def invert_good(cfg: ModuliConfig, t: ModuliTriple) -> ParabolicBundle:
    """The unique stable bundle with good ``l3`` mapping to ``t``."""
    if isinstance(locate(cfg, t), OnCurve):
        raise OnCurveInput("triple lies on the embedded curve; use invert_bad")
    E = _bundle_over(cfg, t.c1)
    # reference good line at p3; the remaining gauge freedom is used up here
    l3 = ProjPoint(0j) if isinstance(E, NonSplit) else ProjPoint(1.0)
    ctx = cfg.ctx
    m2 = hecke_mobius(ctx, E, cfg.p3, cfg.p1, cfg.e2)
    m3 = hecke_mobius(ctx, E, cfg.p3, cfg.p2, cfg.e1)
    l1 = _solve_line(cfg, E, m2, cfg.p1, cfg.e2, t.c2)
    l2 = _solve_line(cfg, E, m3, cfg.p2, cfg.e1, t.c3)
    pb = ParabolicBundle.build(E, cfg.points, (l1, l2, l3))
    if classify_stability(pb)[0] is not Stability.STABLE:
        raise NotStable("reconstruction is unstable; triple is outside the image")
    return pb


def invert_bad(cfg: ModuliConfig, lam: TorusPoint, m) -> ParabolicBundle:
    """The bad-locus bundle with ``pi_tilde_1 = lam`` and ``h_bad = m``."""
    m = proj(m)
    ctx = cfg.ctx
    lam = cfg.lat.point(lam.z if isinstance(lam, TorusPoint) else lam)
    p1, p2 = cfg.p1, cfg.p2
    e3 = cfg.e3
    tol = cfg.curve_tol
    i = _torsion_index(cfg, lam)
    if i is None:
        E = SplitGeneric(lam)
        if chordal(m, pillowcase_map(ctx, lam + e3 - p1)) <= tol:
            coords = (0j, 1.0, INF)
        elif chordal(m, pillowcase_map(ctx, lam + e3 - p2)) <= tol:
            coords = (1.0, 0j, INF)
        else:
            w = hecke_mobius(ctx, E, p1, p2, e3).inverse()(m)
            coords = (1.0, w, INF)
    else:
        lam_i = class_point(SplitTorsion(i), cfg.lat)
        if chordal(m, pillowcase_map(ctx, lam_i + p1 - e3)) <= tol:
            E = SplitTorsion(i)
            coords = (0j, 1.0, INF)
        else:
            E = NonSplit(i)
            d = hecke_mobius(ctx, E, p1, p2, e3).inverse()(m)
            coords = (0j, d, INF)
    pb = ParabolicBundle.build(E, cfg.points, coords)
    res = chordal(h_bad(cfg, pb), m)
    if res > 1e-6:
        raise ToleranceFailure(f"invert_bad residual {res:.3g}")
    return pb


def m2_map(cfg: ModuliConfig, pb2: ParabolicBundle) -> tuple[ProjPoint, ProjPoint]:
    """``[E, l1, l2] -> ([E], h_{e3}(E, l1, l2))`` on two-pointed bundles at p1, p2."""
    _check_marks(cfg, pb2, n=2)
    verdict, m = classify_stability(pb2)
    if verdict is Stability.UNSTABLE:
        raise NotStable(f"two-pointed bundle is unstable (m={m})")
    E = pb2.bundle
    l1, l2 = pb2.coords
    return (pillowcase_map(cfg.ctx, class_point(E, cfg.lat)),
            _hecke(cfg, E, 0, 1, l1, l2, cfg.e3))


def forget_p3(pb: ParabolicBundle) -> ParabolicBundle:
    return ParabolicBundle(pb.bundle, pb.marks[:2], pb.weight)


def curve_points(cfg: ModuliConfig, resolution: int):
    """``(lam, f_embed(lam))`` on a cell-centred ``resolution x resolution`` grid, then the 2-torsion points."""
    if resolution < 4:
        raise ValueError("resolution must be at least 4")
    lat = cfg.lat
    out = []
    for j in range(resolution):
        for k in range(resolution):
            lam = lat.point((k + 0.5) / resolution + (j + 0.5) / resolution * lat.tau)
            out.append((lam, f_embed(cfg, lam)))
    for t in two_torsion_points(lat):
        out.append((t, f_embed(cfg, t)))
    return out
