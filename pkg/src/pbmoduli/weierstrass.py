"""Weierstrass functions for the lattice Z + tau Z and the pillowcase map.

All production evaluation goes through nome expansions in
``q = exp(i pi tau)``.  The argument is first moved to the centred cell
``|Re|, |Im| <= 1/2`` (in lattice coordinates) so the trigonometric series
converge like ``|q|^n``; the lattice shift is then re-applied through the
exact quasi-periodicity laws of zeta and sigma.

:func:`wp_lattice_sum` is a deliberately slow, independent evaluation of
the Weierstrass p-function as a lattice sum; it is used as a test oracle.
"""
from __future__ import annotations

import cmath
import math

import mpmath
import numpy as np

from .elliptic import (
    LatticeTau,
    TorusPoint,
    canonical_sign,
    lattice_coords,
    reduce_mod_lattice,
    torus_equal,
    torus_neg,
    two_torsion_points,
)
from .errors import NonConvergence, ToleranceFailure
from .projective import INF, ProjLike, ProjPoint, chordal, proj

__all__ = [
    "WeierstrassContext",
    "wp",
    "wp_prime",
    "sigma",
    "zeta_w",
    "pillowcase_map",
    "pillowcase_preimages",
    "branch_values",
    "wp_lattice_sum",
]

PI = math.pi


def _truncated_sum(terms: np.ndarray, envelope: np.ndarray, eps: float, what: str) -> complex:
    """Sum ``terms`` up to the first index whose ``envelope`` bound drops below ``eps``."""
    small = envelope < eps
    if not small.any():
        raise NonConvergence(
            f"{what}: series terms still above {eps:g} after {len(terms)} terms"
        )
    k = int(np.argmax(small))
    return complex(terms[:k].sum())


class WeierstrassContext:
    """Precomputed nome data, lattice invariants and quasi-periods.

    ``eta1`` and ``eta2`` are the increments of zeta along the periods 1
    and tau.  ``eta2`` is computed from its own series (as ``2 zeta(tau/2)``)
    rather than from the Legendre relation, so the relation is a genuine check.
    """

    def __init__(self, lat: LatticeTau | complex, trunc_eps: float = 1e-14,
                 max_terms: int = 64, tol: float = 1e-9):
        if not isinstance(lat, LatticeTau):
            lat = LatticeTau(complex(lat))
        if not trunc_eps > 0:
            raise ValueError("trunc_eps must be positive")
        self.lat = lat
        self.tau = lat.tau
        self.trunc_eps = float(trunc_eps)
        self.max_terms = int(max_terms)
        self.tol = float(tol)
        self.q = cmath.exp(1j * PI * self.tau)
        if not abs(self.q) < 1:
            raise NonConvergence("nome has modulus >= 1")

        n = np.arange(1, self.max_terms + 1, dtype=float)
        self._n = n
        self._Q = self.q ** (2 * n)  # q^{2n}
        self._c = self._Q / (1 - self._Q)
        absc = np.abs(self._c)
        eps = self.trunc_eps

        self.eta1 = PI**2 / 3 - _truncated_sum(
            8 * PI**2 * n * self._c, 8 * PI**2 * n * absc, eps, "eta1")
        self.g2 = 4 * PI**4 / 3 * (1 + _truncated_sum(
            240 * n**3 * self._c, 240 * n**3 * absc, eps / (4 * PI**4 / 3), "g2"))
        self.g3 = 8 * PI**6 / 27 * (1 - _truncated_sum(
            504 * n**5 * self._c, 504 * n**5 * absc, eps / (8 * PI**6 / 27), "g3"))
        self.eta2 = 2 * self._zeta_series(self.tau / 2)

    def __repr__(self):
        return f"WeierstrassContext(tau={self.tau!r}, trunc_eps={self.trunc_eps:g})"

    # -- raw series, valid for |Im z| < Im tau -------------------------------------

    def _modes(self, z: complex):
        x = cmath.exp(2j * PI * z)
        xn = x ** self._n
        xm = 1 / xn
        env = np.abs(self._c) * np.exp(2 * PI * self._n * abs(z.imag))
        return xn, xm, env

    def _zeta_series(self, z: complex) -> complex:
        xn, xm, env = self._modes(z)
        sin_n = (xn - xm) / 2j
        s = _truncated_sum(4 * PI * self._c * sin_n, 4 * PI * env, self.trunc_eps, "zeta")
        return self.eta1 * z + PI / cmath.tan(PI * z) + s

    def _wp_series(self, z: complex) -> complex:
        xn, xm, env = self._modes(z)
        cos_n = (xn + xm) / 2
        n = self._n
        s = _truncated_sum(8 * PI**2 * n * self._c * cos_n, 8 * PI**2 * n * env,
                           self.trunc_eps, "wp")
        return -self.eta1 + (PI / cmath.sin(PI * z)) ** 2 - s

    def _wp_prime_series(self, z: complex) -> complex:
        xn, xm, env = self._modes(z)
        sin_n = (xn - xm) / 2j
        n = self._n
        s = _truncated_sum(16 * PI**3 * n**2 * self._c * sin_n, 16 * PI**3 * n**2 * env,
                           self.trunc_eps, "wp'")
        sz = cmath.sin(PI * z)
        return -2 * PI**3 * cmath.cos(PI * z) / sz**3 + s

    def _sigma_series(self, z: complex) -> complex:
        x = cmath.exp(2j * PI * z)
        Q = self._Q
        env = np.abs(Q) * math.exp(2 * PI * abs(z.imag))
        logs = np.log1p(-Q * x) + np.log1p(-Q / x) - 2 * np.log1p(-Q)
        s = _truncated_sum(logs, 2 * env, self.trunc_eps, "sigma")
        return cmath.sin(PI * z) / PI * cmath.exp(self.eta1 * z * z / 2 + s)

    # -- reduction -----------------------------------------------------------------

    def centre(self, z: complex) -> tuple[complex, int, int]:
        """Split ``z = z0 + m + n tau`` with ``z0`` in the centred cell."""
        z = complex(z)
        s, r = lattice_coords(z, self.tau)
        n = math.floor(r + 0.5)
        z1 = z - n * self.tau
        s, _ = lattice_coords(z1, self.tau)
        m = math.floor(s + 0.5)
        return z1 - m, m, n

    def wp_raw(self, z: complex) -> complex:
        """p-function as a complex number (``inf`` at lattice points)."""
        z0, _, _ = self.centre(z)
        if z0 == 0:
            return complex(math.inf, 0)
        return self._wp_series(z0)

    def wp_prime_raw(self, z: complex) -> complex:
        z0, _, _ = self.centre(z)
        if z0 == 0:
            return complex(math.inf, 0)
        return self._wp_prime_series(z0)

    def zeta_raw(self, z: complex) -> complex:
        z0, m, n = self.centre(z)
        if z0 == 0:
            return complex(math.inf, 0)
        return self._zeta_series(z0) + m * self.eta1 + n * self.eta2

    def sigma_raw(self, z: complex) -> complex:
        z0, m, n = self.centre(z)
        if z0 == 0:
            return 0j
        omega = m + n * self.tau
        eta = m * self.eta1 + n * self.eta2
        sign = -1 if (m + n + m * n) % 2 else 1
        return sign * cmath.exp(eta * (z0 + omega / 2)) * self._sigma_series(z0)

    def wp_grid(self, z: np.ndarray) -> np.ndarray:
        """Vectorised p-function on points already inside the centred cell."""
        z = np.asarray(z, dtype=complex)
        n = self._n[:, None]
        x = np.exp(2j * PI * z)[None, :]
        c = self._c[:, None]
        s = (8 * PI**2 * n * c * (x**n + x**-n) / 2).sum(axis=0)
        with np.errstate(divide="ignore", invalid="ignore"):
            return -self.eta1 + (PI / np.sin(PI * z)) ** 2 - s

    # -- checks --------------------------------------------------------------------

    def legendre_residual(self) -> float:
        return abs(self.eta1 * self.tau - self.eta2 - 2j * PI)

    def ode_residual(self, z: complex) -> float:
        w = self.wp_raw(z)
        dw = self.wp_prime_raw(z)
        return abs(dw * dw - (4 * w**3 - self.g2 * w - self.g3))

    def cubic_roots(self) -> np.ndarray:
        return np.roots([4, 0, -self.g2, -self.g3])


def _as_z(ctx: WeierstrassContext, z) -> complex:
    return z.z if isinstance(z, TorusPoint) else complex(z)


def wp(ctx: WeierstrassContext, z) -> ProjPoint:
    return proj(ctx.wp_raw(_as_z(ctx, z)))


def wp_prime(ctx: WeierstrassContext, z) -> ProjPoint:
    return proj(ctx.wp_prime_raw(_as_z(ctx, z)))


def zeta_w(ctx: WeierstrassContext, z) -> ProjPoint:
    return proj(ctx.zeta_raw(_as_z(ctx, z)))


def sigma(ctx: WeierstrassContext, z) -> complex:
    return ctx.sigma_raw(_as_z(ctx, z))


# -- pillowcase ---------------------------------------------------------------------

def pillowcase_map(ctx: WeierstrassContext, lam: TorusPoint) -> ProjPoint:
    """The class ``[L + L^-1]`` of ``lam`` in M^ss(X) = CP^1, in the p-function coordinate."""
    if torus_equal(lam, lam.lat.zero):
        return INF
    return proj(ctx.wp_raw(lam.z))


def branch_values(ctx: WeierstrassContext) -> list[ProjPoint]:
    """Images of the four 2-torsion points, in torsion-index order."""
    return [pillowcase_map(ctx, t) for t in two_torsion_points(ctx.lat)]


def _newton(ctx: WeierstrassContext, z: complex, c: complex, iters: int = 80) -> complex:
    invert = abs(c) > 1
    for _ in range(iters):
        w = ctx.wp_raw(z)
        dw = ctx.wp_prime_raw(z)
        if not (cmath.isfinite(w) and cmath.isfinite(dw)) or dw == 0:
            break
        if invert:
            f = 1 / w - 1 / c
            df = -dw / (w * w)
        else:
            f = w - c
            df = dw
        step = f / df
        if abs(step) > 0.25:
            step *= 0.25 / abs(step)
        z -= step
        if abs(step) < 1e-16 * (1 + abs(z)):
            break
    return z


def pillowcase_preimages(ctx: WeierstrassContext, c: ProjLike,
                         residual: float = 1e-7, grid: int = 16) -> tuple[TorusPoint, TorusPoint]:
    """The pair ``(lam, -lam)`` with ``pillowcase_map(lam) = c``.

    A coarse grid supplies starting points; Newton refinement then runs
    on ``p - c`` (or on ``1/p - 1/c`` when ``|c| > 1``).
    """
    c = proj(c)
    lat = ctx.lat
    if c.inf:
        return lat.zero, lat.zero
    for t, b in zip(two_torsion_points(lat), branch_values(ctx)):
        if chordal(b, c) <= 1e-15:
            return t, t

    u = (np.arange(grid) + 0.5) / grid - 0.5
    s, r = np.meshgrid(u, u)
    pts = (s + r * ctx.tau).ravel()
    vals = ctx.wp_grid(pts)
    fin = np.isfinite(vals)
    cz = c.z
    dist = np.full(pts.shape, np.inf)
    dist[fin] = np.abs(vals[fin] - cz) / (np.hypot(1, np.abs(vals[fin])) * math.hypot(1, abs(cz)))
    best_res, best = math.inf, None
    for k in np.argsort(dist)[:6]:
        z = _newton(ctx, complex(pts[k]), cz)
        res = chordal(proj(ctx.wp_raw(z)), c)
        if res < best_res:
            best_res, best = res, z
        if res < 1e-13:
            break
    if best is None or best_res >= residual:
        raise ToleranceFailure(f"could not solve p(lam) = {c} (residual {best_res:.3g})")
    lam = canonical_sign(reduce_mod_lattice(best, lat))
    return lam, torus_neg(lam)


# -- oracle -------------------------------------------------------------------------

def wp_lattice_sum(z: complex, tau: complex, m_max: int = 200, n_max: int = 200) -> complex:
    """Brute-force p-function by Eisenstein summation over the lattice.

    Rows ``m + n tau`` (fixed ``n``) are summed explicitly for ``|m| <= m_max``
    and completed with Hurwitz zeta tails; rows are added for ``|n| <= n_max``,
    stopping early once two consecutive rows contribute below 1e-16.  Independent of the
    nome expansions.
    """
    z = complex(z)
    tau = complex(tau)
    m = np.arange(-m_max, m_max + 1)
    m_nz = m[m != 0]

    def row(w: complex, skip_zero: bool) -> complex:
        mm = m_nz if skip_zero else m
        s = complex(np.sum(1.0 / (w - mm) ** 2))
        a = m_max + 1
        s += complex(mpmath.zeta(2, a - w)) + complex(mpmath.zeta(2, a + w))
        return s

    total = row(z, False) - PI**2 / 3
    quiet = 0
    for n in range(1, n_max + 1):
        contrib = 0j
        for sgn in (1, -1):
            w0 = -sgn * n * tau
            contrib += row(z + w0, False) - row(w0, False)
        total += contrib
        quiet = quiet + 1 if abs(contrib) < 1e-16 else 0
        if quiet >= 2:
            break
    return total
