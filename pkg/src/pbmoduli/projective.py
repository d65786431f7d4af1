"""Points of CP^1, the chordal metric, and Moebius maps."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DegenerateSamples

__all__ = [
    "ProjPoint",
    "INF",
    "proj",
    "chordal",
    "MobiusMap",
    "mobius_from_three",
    "mobius_apply",
    "mobius_invert",
    "cross_ratio",
]

DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class ProjPoint:
    """A point of the Riemann sphere: a finite complex number or infinity."""

    z: complex = 0j
    inf: bool = False

    def __post_init__(self):
        z = complex(self.z)
        if self.inf:
            z = 0j
        elif not (math.isfinite(z.real) and math.isfinite(z.imag)):
            z = 0j
            object.__setattr__(self, "inf", True)
        object.__setattr__(self, "z", z)

    def homogeneous(self) -> np.ndarray:
        if self.inf:
            return np.array([1.0 + 0j, 0j])
        return np.array([self.z, 1.0 + 0j])

    @classmethod
    def from_homogeneous(cls, v) -> "ProjPoint":
        a, b = complex(v[0]), complex(v[1])
        if b == 0:
            return INF
        return cls(a / b)

    def close_to(self, other: "ProjPoint", tol: float = DEFAULT_TOL) -> bool:
        return chordal(self, other) <= tol

    def __repr__(self):
        return "ProjPoint(inf)" if self.inf else f"ProjPoint({self.z!r})"


INF = ProjPoint(0j, True)

ProjLike = Union[ProjPoint, complex, float, int, str, None]


def proj(x: ProjLike) -> ProjPoint:
    """Coerce ``x`` to a ProjPoint; ``None`` and ``"inf"`` mean infinity."""
    if isinstance(x, ProjPoint):
        return x
    if x is None or (isinstance(x, str) and x.strip().lower() in ("inf", "infinity", "oo")):
        return INF
    return ProjPoint(complex(x))


def chordal(a: ProjLike, b: ProjLike) -> float:
    """Chordal distance on the Riemann sphere, normalised so that d(0, inf) = 1."""
    a, b = proj(a), proj(b)
    if a.inf and b.inf:
        return 0.0
    if a.inf:
        return 1.0 / math.hypot(1.0, abs(b.z))
    if b.inf:
        return 1.0 / math.hypot(1.0, abs(a.z))
    return abs(a.z - b.z) / (math.hypot(1.0, abs(a.z)) * math.hypot(1.0, abs(b.z)))


def _det(u: np.ndarray, v: np.ndarray) -> complex:
    return u[0] * v[1] - u[1] * v[0]


def _normalized(m: np.ndarray) -> np.ndarray:
    return m / m.flat[np.argmax(np.abs(m))]


@dataclass(frozen=True, eq=False)
class MobiusMap:
    """``z -> (a z + b) / (c z + d)``, stored as a 2x2 matrix scaled so its largest entry is 1."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex).reshape(2, 2)
        m = _normalized(m)
        if abs(np.linalg.det(m)) <= DEFAULT_TOL:
            raise DegenerateSamples("singular Moebius matrix")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def identity(cls) -> "MobiusMap":
        return cls(np.eye(2))

    def __call__(self, x: ProjLike) -> ProjPoint:
        return mobius_apply(self, x)

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        return MobiusMap(self.matrix @ other.matrix)

    def inverse(self) -> "MobiusMap":
        return mobius_invert(self)


def mobius_apply(m: MobiusMap, x: ProjLike) -> ProjPoint:
    return ProjPoint.from_homogeneous(m.matrix @ proj(x).homogeneous())


def mobius_invert(m: MobiusMap) -> MobiusMap:
    (a, b), (c, d) = m.matrix
    return MobiusMap(np.array([[d, -b], [-c, a]]))


def _to_zero_one_inf(u1, u2, u3) -> np.ndarray:
    # x -> [det(x,u1) det(u2,u3) : det(x,u3) det(u2,u1)]
    k1 = _det(u2, u3)
    k3 = _det(u2, u1)
    return np.array([[k1 * u1[1], -k1 * u1[0]], [k3 * u3[1], -k3 * u3[0]]])


def _check_separated(points, min_sep: float, what: str) -> None:
    for i in range(3):
        for j in range(i + 1, 3):
            if chordal(points[i], points[j]) <= min_sep:
                raise DegenerateSamples(f"{what} points {i} and {j} are not separated")


def mobius_from_three(pairs, tol: float = DEFAULT_TOL) -> MobiusMap:
    """The unique Moebius map sending each ``pairs[k][0]`` to ``pairs[k][1]``."""
    pairs = [(proj(x), proj(y)) for x, y in pairs]
    if len(pairs) != 3:
        raise ValueError("need exactly three sample pairs")
    src = [x for x, _ in pairs]
    dst = [y for _, y in pairs]
    _check_separated(src, 10 * tol, "input")
    _check_separated(dst, 10 * tol, "output")
    t = _to_zero_one_inf(*(p.homogeneous() for p in src))
    s = _to_zero_one_inf(*(p.homogeneous() for p in dst))
    s = _normalized(s)
    t = _normalized(t)
    (a, b), (c, d) = s
    s_inv = np.array([[d, -b], [-c, a]])
    return MobiusMap(s_inv @ t)


def cross_ratio(z1: ProjLike, z2: ProjLike, z3: ProjLike, z4: ProjLike) -> ProjPoint:
    """``(z1 - z3)(z2 - z4) / ((z1 - z4)(z2 - z3))``, extended to infinity."""
    u1, u2, u3, u4 = (proj(z).homogeneous() for z in (z1, z2, z3, z4))
    return ProjPoint.from_homogeneous(
        [_det(u1, u3) * _det(u2, u4), _det(u1, u4) * _det(u2, u3)]
    )
