import cmath

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import theta_eta1, theta_invariants, theta_sigma, theta_wp, theta_zeta
from pbmoduli import (
    INF,
    LatticeTau,
    NonConvergence,
    WeierstrassContext,
    chordal,
    pillowcase_map,
    pillowcase_preimages,
    sigma,
    torus_distance,
    torus_equal,
    two_torsion_points,
    wp,
    wp_prime,
    zeta_w,
)
from pbmoduli.weierstrass import branch_values, wp_lattice_sum

CTX_I = WeierstrassContext(1j)
CTX_G = WeierstrassContext(0.3 + 1.1j)


def random_z(ctx, rng, min_dist=0.25, spread=1.0):
    """Random complex number at least ``min_dist`` from the lattice."""
    lat = ctx.lat
    while True:
        a, b = rng.uniform(-spread, 1 + spread, size=2)
        z = a + b * lat.tau
        if torus_distance(lat.point(z), lat.zero) >= min_dist:
            return z


# -- independent oracles ---------------------------------------------------------

def test_eta1_and_invariants_match_theta_oracle(ctx):
    assert abs(ctx.eta1 - theta_eta1(ctx.tau)) < 1e-12
    g2, g3 = theta_invariants(ctx.tau)
    assert abs(ctx.g2 - g2) < 1e-10 * abs(g2)
    assert abs(ctx.g3 - g3) < 1e-10 * max(1, abs(g3))


def test_functions_match_theta_oracle(ctx, rng):
    for _ in range(20):
        z = random_z(ctx, rng, 0.05)
        assert abs(ctx.wp_raw(z) - theta_wp(z, ctx.tau)) < 1e-9 * max(1, abs(theta_wp(z, ctx.tau)))
        assert abs(ctx.zeta_raw(z) - theta_zeta(z, ctx.tau)) < 1e-9 * max(1, abs(theta_zeta(z, ctx.tau)))
        assert abs(ctx.sigma_raw(z) - theta_sigma(z, ctx.tau)) < 1e-9 * max(1, abs(theta_sigma(z, ctx.tau)))


def test_wp_at_03_matches_lattice_sum():
    assert abs(CTX_I.wp_raw(0.3) - wp_lattice_sum(0.3, 1j)) < 1e-8


def test_lattice_sum_oracle_agrees_with_theta_oracle():
    # the two oracles share no code; their agreement validates the lattice sum itself
    for z in (0.3, 0.21 + 0.47j):
        assert abs(wp_lattice_sum(z, 0.3 + 1.1j) - theta_wp(z, 0.3 + 1.1j)) < 1e-10


def test_wp_matches_lattice_sum_on_20_points(ctx, rng):
    for _ in range(20):
        z = random_z(ctx, rng, spread=0)
        assert abs(ctx.wp_raw(z) - wp_lattice_sum(z, ctx.tau)) < 1e-8


# -- identities ------------------------------------------------------------------

def test_legendre_relation(ctx):
    assert ctx.legendre_residual() < 10 * ctx.trunc_eps


def test_differential_equation(ctx, rng):
    for _ in range(50):
        assert ctx.ode_residual(random_z(ctx, rng)) < 1e-8


def test_cubic_roots_are_half_period_values(ctx):
    roots = np.sort_complex(ctx.cubic_roots())
    vals = np.sort_complex(np.array([ctx.wp_raw(w) for w in (0.5, ctx.tau / 2, (1 + ctx.tau) / 2)]))
    assert np.max(np.abs(roots - vals)) < 1e-9


def test_wp_prime_vanishes_at_half_periods(ctx):
    for w in (0.5, ctx.tau / 2, (1 + ctx.tau) / 2):
        assert abs(ctx.wp_prime_raw(w)) < 1e-9


def test_parity(ctx, rng):
    for _ in range(100):
        z = random_z(ctx, rng, 0.05)
        assert abs(ctx.wp_raw(z) - ctx.wp_raw(-z)) < 1e-9
        assert abs(ctx.sigma_raw(z) + ctx.sigma_raw(-z)) < 1e-9
        assert abs(ctx.zeta_raw(z) + ctx.zeta_raw(-z)) < 1e-9


def test_quasi_periodicity(ctx, rng):
    tau = ctx.tau
    for _ in range(50):
        z = random_z(ctx, rng, 0.05)
        s = ctx.sigma_raw(z)
        assert abs(ctx.sigma_raw(z + 1) + s * cmath.exp(ctx.eta1 * (z + 0.5))) < 1e-8 * max(1, abs(s))
        assert abs(ctx.sigma_raw(z + tau) + s * cmath.exp(ctx.eta2 * (z + tau / 2))) < 1e-8 * max(1, abs(s))
        assert abs(ctx.zeta_raw(z + 1) - ctx.zeta_raw(z) - ctx.eta1) < 1e-8
        assert abs(ctx.zeta_raw(z + tau) - ctx.zeta_raw(z) - ctx.eta2) < 1e-8
        assert abs(ctx.wp_raw(z + 1 + tau) - ctx.wp_raw(z)) < 1e-8 * max(1, abs(ctx.wp_raw(z)))


@given(st.floats(-2, 2), st.floats(-2, 2))
def test_wp_periodic_property(a, b):
    z = a + b * CTX_G.tau
    lat = CTX_G.lat
    if torus_distance(lat.point(z), lat.zero) < 0.05:
        return
    w = CTX_G.wp_raw(z)
    assert chordal(CTX_G.wp_raw(z + 3 - 2 * CTX_G.tau), w) < 1e-9


def test_poles_are_explicit():
    tau = CTX_G.tau
    for w in (0, 1, tau, 2 - tau):
        assert wp(CTX_G, w) == INF
        assert wp_prime(CTX_G, w) == INF
        assert zeta_w(CTX_G, w) == INF
        assert sigma(CTX_G, w) == 0


def test_vectorised_grid_matches_pointwise(rng):
    # the grid routine expects points of the centred cell
    zs = np.array([CTX_G.centre(random_z(CTX_G, rng, 0.05))[0] for _ in range(30)])
    grid = CTX_G.wp_grid(zs)
    assert np.max(np.abs(grid - np.array([CTX_G.wp_raw(z) for z in zs]))) < 1e-10


def test_truncation_failure_raises():
    with pytest.raises(NonConvergence):
        WeierstrassContext(0.02j)
    with pytest.raises(NonConvergence):
        WeierstrassContext(1j, max_terms=2)


def test_invalid_truncation_threshold():
    with pytest.raises(ValueError):
        WeierstrassContext(1j, trunc_eps=0)


def test_loose_truncation_breaks_legendre():
    assert WeierstrassContext(0.3 + 1.1j, trunc_eps=1e-4).legendre_residual() > 1e-10


# -- pillowcase -------------------------------------------------------------------

def test_pillowcase_at_zero_is_infinity(ctx):
    assert pillowcase_map(ctx, ctx.lat.zero) == INF


def test_pillowcase_parity(ctx, rng):
    lat = ctx.lat
    for _ in range(200):
        lam = lat.point(rng.random() + rng.random() * lat.tau)
        assert chordal(pillowcase_map(ctx, lam), pillowcase_map(ctx, -lam)) < 1e-9


def test_branch_values_distinct(ctx):
    b = branch_values(ctx)
    assert b[0] == INF
    for i in range(4):
        for j in range(i + 1, 4):
            assert chordal(b[i], b[j]) > ctx.lat.tol


def test_preimages_of_infinity(ctx):
    a, b = pillowcase_preimages(ctx, INF)
    assert a.z == 0 and b.z == 0


def test_preimages_round_trip(ctx, rng):
    lat = ctx.lat
    for _ in range(100):
        lam = lat.point(rng.random() + rng.random() * lat.tau)
        c = pillowcase_map(ctx, lam)
        a, b = pillowcase_preimages(ctx, c)
        assert torus_equal(a, -b)
        assert min(torus_distance(lam, a), torus_distance(lam, b)) < 1e-7
        assert chordal(pillowcase_map(ctx, a), c) < 1e-7


def test_preimages_at_branch_value(ctx):
    half = ctx.lat.point(0.5)
    assert abs(ctx.wp_prime_raw(0.5)) < 1e-9
    a, b = pillowcase_preimages(ctx, wp(ctx, 0.5))
    assert torus_equal(a, half) and torus_equal(b, half)
    for t, c in zip(two_torsion_points(ctx.lat), branch_values(ctx)):
        a, b = pillowcase_preimages(ctx, c)
        assert torus_equal(a, t, 1e-7) and torus_equal(b, t, 1e-7)


def test_pillowcase_two_to_one(ctx, rng):
    lat = ctx.lat
    for _ in range(500):
        lam = lat.point(rng.random() + rng.random() * lat.tau)
        other = lat.point(rng.random() + rng.random() * lat.tau)
        if min(torus_distance(other, lam), torus_distance(other, -lam)) < 1e-3:
            continue
        assert chordal(pillowcase_map(ctx, lam), pillowcase_map(ctx, other)) > lat.tol


def test_lattice_tau_accepted_directly():
    ctx = WeierstrassContext(LatticeTau(1j, 1e-8))
    assert ctx.lat.tol == 1e-8
