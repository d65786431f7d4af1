"""Reference values computed without the package's own series code.

Weierstrass functions come from Jacobi theta functions in mpmath, which
share nothing with the nome expansions under test beyond the value of tau.
"""
import mpmath as mp


def _thetas(tau):
    q = mp.exp(1j * mp.pi * mp.mpc(tau))
    t2, t3 = mp.jtheta(2, 0, q), mp.jtheta(3, 0, q)
    t1p = mp.jtheta(1, 0, q, 1)
    return q, t2, t3, t1p


def theta_eta1(tau) -> complex:
    with mp.workdps(30):
        q, _, _, t1p = _thetas(tau)
        return complex(-mp.pi**2 * mp.jtheta(1, 0, q, 3) / (3 * t1p))


def theta_wp(z, tau) -> complex:
    with mp.workdps(30):
        q, t2, t3, _ = _thetas(tau)
        u = mp.pi * mp.mpc(z)
        val = (mp.pi * t2 * t3 * mp.jtheta(4, u, q) / mp.jtheta(1, u, q)) ** 2
        return complex(val - mp.pi**2 / 3 * (t2**4 + t3**4))


def theta_sigma(z, tau) -> complex:
    with mp.workdps(30):
        q, _, _, t1p = _thetas(tau)
        z = mp.mpc(z)
        eta1 = -mp.pi**2 * mp.jtheta(1, 0, q, 3) / (3 * t1p)
        return complex(mp.exp(eta1 * z**2 / 2) * mp.jtheta(1, mp.pi * z, q) / (mp.pi * t1p))


def theta_zeta(z, tau) -> complex:
    with mp.workdps(30):
        q, _, _, t1p = _thetas(tau)
        z = mp.mpc(z)
        eta1 = -mp.pi**2 * mp.jtheta(1, 0, q, 3) / (3 * t1p)
        u = mp.pi * z
        return complex(eta1 * z + mp.pi * mp.jtheta(1, u, q, 1) / mp.jtheta(1, u, q))


def theta_invariants(tau) -> tuple[complex, complex]:
    """``g2, g3`` from the three half-period values ``e1, e2, e3``."""
    e = [theta_wp(w, tau) for w in (0.5, tau / 2, (1 + tau) / 2)]
    g2 = -4 * (e[0] * e[1] + e[1] * e[2] + e[2] * e[0])
    g3 = 4 * e[0] * e[1] * e[2]
    return g2, g3


def poly_mul(a, b):
    """Schoolbook product of integer coefficient lists."""
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    while out and out[-1] == 0:
        out.pop()
    return out
