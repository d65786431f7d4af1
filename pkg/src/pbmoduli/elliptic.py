"""Arithmetic on the complex torus X = C / (Z + tau Z).

Points of X double as degree-zero line bundle classes through the
Abel-Jacobi map with base point 0, so ``lam`` below is both a point and
the class of a line bundle.  The group law is addition of complex
representatives followed by reduction into the half-open fundamental
cell ``{s + r*tau : r, s in [0, 1)}``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidTau

__all__ = [
    "LatticeTau",
    "TorusPoint",
    "reduce_mod_lattice",
    "torus_add",
    "torus_neg",
    "torus_sub",
    "torus_distance",
    "torus_equal",
    "two_torsion_points",
    "half_sum",
    "translate",
    "canonical_sign",
    "lattice_coords",
]


@dataclass(frozen=True)
class LatticeTau:
    """Lattice ``Z + tau Z`` together with the comparison tolerance."""

    tau: complex
    tol: float = 1e-9

    def __post_init__(self):
        tau = complex(self.tau)
        object.__setattr__(self, "tau", tau)
        if not tau.imag > 0:
            raise InvalidTau(f"Im(tau) must be positive, got tau={tau!r}")
        if not 0 < self.tol < 0.01:
            raise ValueError(f"tol must lie in (0, 0.01), got {self.tol!r}")

    def point(self, z: complex) -> "TorusPoint":
        return reduce_mod_lattice(z, self)

    @property
    def zero(self) -> "TorusPoint":
        return TorusPoint(0j, self)


@dataclass(frozen=True)
class TorusPoint:
    """A point of X stored by its fundamental-cell representative ``z``.

    Construct through :func:`reduce_mod_lattice` (or ``lat.point(z)``);
    the raw constructor does not reduce.
    """

    z: complex
    lat: LatticeTau

    def __add__(self, other: "TorusPoint") -> "TorusPoint":
        return torus_add(self, other)

    def __neg__(self) -> "TorusPoint":
        return torus_neg(self)

    def __sub__(self, other: "TorusPoint") -> "TorusPoint":
        return torus_sub(self, other)

    def close_to(self, other: "TorusPoint", tol: float | None = None) -> bool:
        return torus_equal(self, other, tol)

    def is_two_torsion(self, tol: float | None = None) -> bool:
        return torus_equal(self, torus_neg(self), tol)


def lattice_coords(z: complex, tau: complex) -> tuple[float, float]:
    """Real coordinates ``(s, r)`` with ``z = s + r*tau``."""
    r = z.imag / tau.imag
    s = z.real - r * tau.real
    return s, r


def _wrap(c: float, tol: float) -> int:
    k = math.floor(c)
    if c - k > 1.0 - tol:
        k += 1
    return k


def reduce_mod_lattice(z: complex, lat: LatticeTau) -> TorusPoint:
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"cannot reduce non-finite {z!r}")
    tau = lat.tau
    _, r = lattice_coords(z, tau)
    n = _wrap(r, lat.tol)
    z = z - n * tau
    s, _ = lattice_coords(z, tau)
    m = _wrap(s, lat.tol)
    return TorusPoint(z - m, lat)


def _check_same(a: TorusPoint, b: TorusPoint) -> None:
    if a.lat.tau != b.lat.tau:
        raise ValueError("torus points live on different lattices")


def torus_add(a: TorusPoint, b: TorusPoint) -> TorusPoint:
    _check_same(a, b)
    return reduce_mod_lattice(a.z + b.z, a.lat)


def torus_neg(a: TorusPoint) -> TorusPoint:
    return reduce_mod_lattice(-a.z, a.lat)


def torus_sub(a: TorusPoint, b: TorusPoint) -> TorusPoint:
    _check_same(a, b)
    return reduce_mod_lattice(a.z - b.z, a.lat)


def translate(lam: TorusPoint, delta: TorusPoint) -> TorusPoint:
    """Tensoring the class ``lam`` by the degree-zero class ``delta``."""
    return torus_add(lam, delta)


def torus_distance(a: TorusPoint, b: TorusPoint) -> float:
    """Distance on X: minimum over the 9 nearest translates."""
    _check_same(a, b)
    d = reduce_mod_lattice(a.z - b.z, a.lat).z
    tau = a.lat.tau
    return min(abs(d - m - n * tau) for m in (-1, 0, 1) for n in (-1, 0, 1))


def torus_equal(a: TorusPoint, b: TorusPoint, tol: float | None = None) -> bool:
    tol = a.lat.tol if tol is None else tol
    return torus_distance(a, b) <= tol


def two_torsion_points(lat: LatticeTau) -> list[TorusPoint]:
    """The four half-lattice points ``0, 1/2, tau/2, (1+tau)/2`` (indices 1..4)."""
    tau = lat.tau
    return [reduce_mod_lattice(z, lat) for z in (0j, 0.5, tau / 2, (1 + tau) / 2)]


def half_sum(p: TorusPoint, q: TorusPoint) -> tuple[TorusPoint, list[TorusPoint]]:
    """Solutions ``e`` of ``2e = p + q``.

    The canonical solution halves the sum of the cell representatives
    before reducing; ``all`` adds each 2-torsion point to it.
    """
    _check_same(p, q)
    lat = p.lat
    canonical = reduce_mod_lattice((p.z + q.z) / 2, lat)
    return canonical, [torus_add(canonical, t) for t in two_torsion_points(lat)]


def canonical_sign(lam: TorusPoint) -> TorusPoint:
    """Pick one of ``lam``, ``-lam``: the one with ``r < 1/2``, ties by ``s < 1/2``."""
    lat = lam.lat
    tol = lat.tol
    neg = torus_neg(lam)
    s, r = lattice_coords(lam.z, lat.tau)
    if r < 0.5 - tol and r > tol:
        return lam
    if r > 0.5 + tol and r < 1 - tol:
        return neg
    return lam if s <= 0.5 else neg
