"""Semistable rank-2 bundles with trivial determinant, marked lines, stability.

Line coordinates follow one fixed convention per bundle class (the frames
are defined in :mod:`pbmoduli.hecke`):

* ``SplitGeneric(lam)`` (``L + L^-1`` with ``[L] = lam``): ``inf`` is the
  fiber of ``L``, ``0`` the fiber of ``L^-1``.
* ``NonSplit(i)`` (``F_2 (x) L_i``): ``inf`` is the fiber of the subbundle ``L_i``.
* ``SplitTorsion(i)`` (``L_i + L_i``): every coordinate names a bad line;
  equal coordinates lie on a common constant subbundle.

Badness is decided exactly (``0`` and ``inf`` are exactly representable),
never by proximity.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Union

from .elliptic import (
    LatticeTau,
    TorusPoint,
    canonical_sign,
    torus_distance,
    torus_neg,
    two_torsion_points,
)
from .errors import NotStable
from .projective import INF, MobiusMap, ProjLike, ProjPoint, chordal, mobius_from_three, proj

__all__ = [
    "SplitGeneric",
    "SplitTorsion",
    "NonSplit",
    "BundleClass",
    "MarkedLine",
    "ParabolicBundle",
    "Stability",
    "torsion_point",
    "class_point",
    "line_is_bad",
    "bad_same_direction",
    "classify_stability",
    "canonical_form",
]


def torsion_point(lat: LatticeTau, i: int) -> TorusPoint:
    if i not in (1, 2, 3, 4):
        raise ValueError(f"torsion index must be 1..4, got {i!r}")
    return two_torsion_points(lat)[i - 1]


@dataclass(frozen=True)
class SplitGeneric:
    """``L + L^-1`` with ``L^2`` nontrivial; ``lam`` is the class of ``L``."""

    lam: TorusPoint

    def __post_init__(self):
        lat = self.lam.lat
        for t in two_torsion_points(lat):
            if torus_distance(self.lam, t) <= lat.tol:
                raise ValueError(
                    f"lam={self.lam.z!r} is 2-torsion; use SplitTorsion or NonSplit"
                )


@dataclass(frozen=True)
class SplitTorsion:
    """``L_i + L_i``."""

    i: int

    def __post_init__(self):
        if self.i not in (1, 2, 3, 4):
            raise ValueError(f"torsion index must be 1..4, got {self.i!r}")


@dataclass(frozen=True)
class NonSplit:
    """``F_2 (x) L_i``, the nonsplit self-extension twisted by ``L_i``."""

    i: int

    def __post_init__(self):
        if self.i not in (1, 2, 3, 4):
            raise ValueError(f"torsion index must be 1..4, got {self.i!r}")


BundleClass = Union[SplitGeneric, SplitTorsion, NonSplit]


def class_point(E: BundleClass, lat: LatticeTau) -> TorusPoint:
    """``lam`` for split generic bundles, ``lam_i`` for the torsion classes."""
    if isinstance(E, SplitGeneric):
        return E.lam
    return torsion_point(lat, E.i)


@dataclass(frozen=True)
class MarkedLine:
    at: TorusPoint
    coord: ProjPoint

    def __post_init__(self):
        object.__setattr__(self, "coord", proj(self.coord))


class Stability(enum.Enum):
    STABLE = "stable"
    SEMISTABLE = "semistable"
    UNSTABLE = "unstable"


@dataclass(frozen=True)
class ParabolicBundle:
    bundle: BundleClass
    marks: tuple[MarkedLine, ...]
    weight: float = 0.1
    lat: LatticeTau = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        marks = tuple(self.marks)
        object.__setattr__(self, "marks", marks)
        if not marks:
            raise ValueError("a parabolic bundle needs at least one marked point")
        lat = marks[0].at.lat
        object.__setattr__(self, "lat", lat)
        for a in range(len(marks)):
            for b in range(a + 1, len(marks)):
                if torus_distance(marks[a].at, marks[b].at) <= lat.tol:
                    raise ValueError("marked points must be pairwise distinct")
        if not 0 < self.weight < 1 / len(marks):
            raise ValueError(f"weight must lie in (0, 1/n) = (0, {1 / len(marks):.4g})")

    @property
    def n(self) -> int:
        return len(self.marks)

    @property
    def coords(self) -> tuple[ProjPoint, ...]:
        return tuple(m.coord for m in self.marks)

    def with_coords(self, coords, bundle: BundleClass | None = None) -> "ParabolicBundle":
        return ParabolicBundle(
            self.bundle if bundle is None else bundle,
            tuple(MarkedLine(m.at, proj(c)) for m, c in zip(self.marks, coords)),
            self.weight,
        )

    @classmethod
    def build(cls, bundle: BundleClass, points, coords, weight: float = 0.1) -> "ParabolicBundle":
        return cls(bundle, tuple(MarkedLine(p, proj(c)) for p, c in zip(points, coords)), weight)


def _is_zero(c: ProjPoint) -> bool:
    return not c.inf and c.z == 0


def line_is_bad(E: BundleClass, line: MarkedLine | ProjLike) -> bool:
    c = line.coord if isinstance(line, MarkedLine) else proj(line)
    if isinstance(E, SplitTorsion):
        return True
    if isinstance(E, SplitGeneric):
        return c.inf or _is_zero(c)
    return c.inf


def bad_same_direction(E: BundleClass, a: MarkedLine | ProjLike, b: MarkedLine | ProjLike,
                       tol: float = 1e-9) -> bool:
    ca = a.coord if isinstance(a, MarkedLine) else proj(a)
    cb = b.coord if isinstance(b, MarkedLine) else proj(b)
    if isinstance(E, SplitGeneric):
        return (ca.inf and cb.inf) or (_is_zero(ca) and _is_zero(cb))
    if isinstance(E, SplitTorsion):
        return chordal(ca, cb) <= tol
    return ca.inf and cb.inf


def _max_same_direction(E: BundleClass, coords, tol: float) -> int:
    if isinstance(E, SplitGeneric):
        return max(sum(c.inf for c in coords), sum(_is_zero(c) for c in coords))
    if isinstance(E, NonSplit):
        return sum(c.inf for c in coords)
    best = 0
    for c in coords:
        best = max(best, sum(chordal(c, d) <= tol for d in coords))
    return best


def classify_stability(pb: ParabolicBundle, tol: float | None = None) -> tuple[Stability, int]:
    """Small-weight stability from the largest number of marks bad in one direction."""
    tol = pb.lat.tol if tol is None else tol
    m = _max_same_direction(pb.bundle, pb.coords, tol)
    n = pb.n
    if 2 * m < n:
        return Stability.STABLE, m
    if 2 * m == n:
        return Stability.SEMISTABLE, m
    return Stability.UNSTABLE, m


def _swap(E: SplitGeneric, coords):
    """The isomorphism ``L + L^-1 -> L^-1 + L``: ``lam -> -lam``, ``z -> 1/z``."""
    new = []
    for c in coords:
        if c.inf:
            new.append(ProjPoint(0j))
        elif c.z == 0:
            new.append(INF)
        else:
            new.append(ProjPoint(1 / c.z))
    return SplitGeneric(torus_neg(E.lam)), new


def canonical_form(pb: ParabolicBundle) -> ParabolicBundle:
    """Representative of the isomorphism class with a fixed Aut(E) gauge.

    Split generic: the last mark is made the ``L`` line when it is bad,
    otherwise ``lam`` is put in canonical sign; then the first good
    coordinate is scaled to 1.  Nonsplit: the first good coordinate is
    shifted to 0.  Split torsion: the first three coordinates go to
    ``0, 1, inf``.
    """
    verdict, _ = classify_stability(pb)
    if verdict is Stability.UNSTABLE:
        raise NotStable("canonical_form needs a (semi)stable parabolic bundle")
    E = pb.bundle
    coords = list(pb.coords)

    if isinstance(E, SplitGeneric):
        last = coords[-1]
        if _is_zero(last):
            E, coords = _swap(E, coords)
        elif not last.inf and canonical_sign(E.lam) != E.lam:
            E, coords = _swap(E, coords)
        good = [c for c in coords if not line_is_bad(E, c)]
        if good:
            g = good[0].z
            coords = [c if c.inf else ProjPoint(c.z / g) for c in coords]
        return pb.with_coords(coords, E)

    if isinstance(E, NonSplit):
        good = [c for c in coords if not c.inf]
        if good:
            g = good[0].z
            coords = [c if c.inf else ProjPoint(c.z - g) for c in coords]
        return pb.with_coords(coords, E)

    targets = [ProjPoint(0j), ProjPoint(1.0), INF]
    if len(coords) >= 3:
        M = mobius_from_three(list(zip(coords[:3], targets)), tol=pb.lat.tol / 10)
    elif len(coords) == 2:
        a, b = coords
        M = _two_point_map(a, b)
    else:
        M = _two_point_map(coords[0], proj(None) if not coords[0].inf else ProjPoint(0j))
    new = [M(c) for c in coords]
    if len(coords) >= 3:
        new[:3] = targets
    elif len(coords) == 2:
        new = [ProjPoint(0j), INF]
    else:
        new = [ProjPoint(0j)]
    return pb.with_coords(new, E)


def _two_point_map(a: ProjPoint, b: ProjPoint) -> MobiusMap:
    # x -> [det(x,a) : det(x,b)] sends a -> 0 and b -> inf
    ua, ub = a.homogeneous(), b.homogeneous()
    return MobiusMap([[ua[1], -ua[0]], [ub[1], -ub[0]]])
