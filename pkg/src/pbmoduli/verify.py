"""Invariant suites with machine-readable reports.

Each check draws from its own generator seeded by ``(seed, crc32(name))``,
so reports do not depend on which suites run or in what order.
"""
from __future__ import annotations

import math
import zlib
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .elliptic import LatticeTau, TorusPoint, half_sum, torus_distance
from .errors import ModuliError
from .hecke import HeckeQuery, hecke_mobius, hecke_point, nonsplit_sample, split_sample
from .moduli import (
    GoodLocus,
    ModuliConfig,
    ModuliTriple,
    OnCurve,
    f_embed,
    forget_p3,
    h_bad,
    invert_bad,
    invert_good,
    locate,
    m2_map,
    pi_map,
    pi_tilde_1,
)
from .parabolic import NonSplit, ParabolicBundle, SplitGeneric, SplitTorsion, canonical_form, torsion_point
from .poincare import T, decomposition_poincare, poincare_formula, poincare_formula_divmod
from .projective import INF, ProjPoint, chordal, cross_ratio
from .sampling import (
    random_bad_bundle,
    random_generic_point,
    random_good_bundle,
    random_line,
    random_point,
)
from .weierstrass import (
    WeierstrassContext,
    pillowcase_map,
    pillowcase_preimages,
    wp_lattice_sum,
)

__all__ = ["RunConfig", "CheckResult", "SUITES", "run_suite", "DEFAULT_POINTS"]

DEFAULT_POINTS = (0.11 + 0.07j, 0.53 + 0.41j, 0.29 + 0.83j)


@dataclass(frozen=True)
class RunConfig:
    tau: complex = 0.3 + 1.1j
    points: tuple[complex, complex, complex] = DEFAULT_POINTS
    tol: float = 1e-9
    trunc_eps: float = 1e-14
    seed: int = 42
    samples: int = 200

    def moduli_config(self) -> ModuliConfig:
        return ModuliConfig.from_values(self.tau, self.points, tol=self.tol, trunc_eps=self.trunc_eps)


@dataclass
class CheckResult:
    name: str
    passed: bool
    max_residual: float

    def to_json(self) -> dict:
        return {"name": self.name, "pass": bool(self.passed), "max_residual": float(self.max_residual)}


@dataclass
class _Env:
    run: RunConfig
    cfg: ModuliConfig
    ctx: WeierstrassContext = field(init=False)
    lat: LatticeTau = field(init=False)

    def __post_init__(self):
        self.ctx = self.cfg.ctx
        self.lat = self.cfg.lat

    def rng(self, name: str) -> np.random.Generator:
        return np.random.default_rng(np.random.SeedSequence([self.run.seed, zlib.crc32(name.encode())]))

    def n(self, cap: int | None = None) -> int:
        return self.run.samples if cap is None else min(self.run.samples, cap)

    def scaled(self, factor: float) -> int:
        return max(1, int(round(factor * self.run.samples)))


def _residual_check(name: str, values, bound: float) -> CheckResult:
    worst = max(values, default=0.0)
    if not math.isfinite(worst):
        return CheckResult(name, False, math.inf)
    return CheckResult(name, worst < bound, worst)


def _count_check(name: str, violations: int) -> CheckResult:
    # for separation and classification checks the residual is the violation count
    return CheckResult(name, violations == 0, float(violations))


# -- weierstrass ----------------------------------------------------------------

def _away_from_lattice(env: _Env, rng, min_dist: float = 0.25) -> TorusPoint:
    return random_point(env.lat, rng, [env.lat.zero], min_dist)


def _w_legendre(env):
    return [_residual_check("legendre_relation", [env.ctx.legendre_residual()], 1e-10)]


def _w_ode(env):
    rng = env.rng("wp_ode")
    vals = [env.ctx.ode_residual(_away_from_lattice(env, rng).z) for _ in range(env.n(50))]
    return [_residual_check("wp_ode", vals, 1e-8)]


def _w_oracle(env):
    rng = env.rng("lattice_sum_oracle")
    vals = []
    for _ in range(env.n(20)):
        z = _away_from_lattice(env, rng).z
        vals.append(abs(env.ctx.wp_raw(z) - wp_lattice_sum(z, env.lat.tau)))
    return [_residual_check("lattice_sum_oracle", vals, 1e-8)]


def _w_parity(env):
    rng = env.rng("parity")
    ctx, wpv, sig = env.ctx, [], []
    for _ in range(env.n(100)):
        z = _away_from_lattice(env, rng, 0.05).z
        wpv.append(abs(ctx.wp_raw(z) - ctx.wp_raw(-z)))
        sig.append(abs(ctx.sigma_raw(z) + ctx.sigma_raw(-z)))
    return [_residual_check("wp_even", wpv, 1e-8), _residual_check("sigma_odd", sig, 1e-8)]


def _w_quasi(env):
    rng = env.rng("quasi_periodicity")
    ctx = env.ctx
    tau = env.lat.tau
    res = []
    for _ in range(env.n(50)):
        z = _away_from_lattice(env, rng, 0.05).z - 0.5 - 0.5 * tau
        s = ctx.sigma_raw(z)
        res.append(abs(ctx.sigma_raw(z + 1) + s * np.exp(ctx.eta1 * (z + 0.5))))
        res.append(abs(ctx.sigma_raw(z + tau) + s * np.exp(ctx.eta2 * (z + tau / 2))))
        res.append(abs(ctx.zeta_raw(z + 1) - ctx.zeta_raw(z) - ctx.eta1))
        res.append(abs(ctx.zeta_raw(z + tau) - ctx.zeta_raw(z) - ctx.eta2))
    return [_residual_check("quasi_periodicity", res, 1e-8)]


def _w_preimages(env):
    rng = env.rng("pillowcase_preimages")
    ctx, res = env.ctx, []
    for _ in range(env.n(100)):
        lam = random_point(env.lat, rng)
        c = pillowcase_map(ctx, lam)
        a, b = pillowcase_preimages(ctx, c)
        res.append(max(chordal(pillowcase_map(ctx, a), c), min(torus_distance(lam, a), torus_distance(lam, b))))
    return [_residual_check("pillowcase_preimages", res, 1e-7)]


# -- hecke ----------------------------------------------------------------------

def _pq(env, rng):
    p = random_point(env.lat, rng)
    q = random_point(env.lat, rng, [p], 0.1)
    return p, q


def _h_eval(env):
    """The four closed forms against the fast paths and against good-line limits."""
    ctx, lat = env.ctx, env.lat
    rng = env.rng("hecke_closed_forms")
    big = 1e12
    res = {"L_p": [], "Linv_p": [], "nonsplit": [], "torsion": []}
    for _ in range(env.n(100)):
        p, q = _pq(env, rng)
        e = half_sum(p, q)[0]
        lq = random_line(rng)
        u = np.exp(2j * np.pi * rng.random())
        lam = random_generic_point(lat, rng)
        E = SplitGeneric(lam)

        want = pillowcase_map(ctx, lam + p - e)
        fast = hecke_point(ctx, HeckeQuery(E, p, q, INF, lq, e))
        lim = hecke_point(ctx, HeckeQuery(E, p, q, big * u, lq, e))
        res["L_p"].append(max(chordal(want, fast), chordal(want, lim)))

        want = pillowcase_map(ctx, lam + e - p)
        fast = hecke_point(ctx, HeckeQuery(E, p, q, 0j, lq, e))
        lim = hecke_point(ctx, HeckeQuery(E, p, q, u / big, lq, e))
        res["Linv_p"].append(max(chordal(want, fast), chordal(want, lim)))

        i = int(rng.integers(1, 5))
        lam_i = torsion_point(lat, i)
        want = pillowcase_map(ctx, lam_i + p - e)
        fast = hecke_point(ctx, HeckeQuery(NonSplit(i), p, q, INF, lq, e))
        lim = hecke_point(ctx, HeckeQuery(NonSplit(i), p, q, big * u, lq, e))
        res["nonsplit"].append(max(chordal(want, fast), chordal(want, lim)))

        # L_i + L_i: every line is bad; the limit comes from split bundles
        # L + L^-1 with L -> L_i, extrapolated from three offsets (error O(eps^3))
        lp = random_line(rng)
        fast = hecke_point(ctx, HeckeQuery(SplitTorsion(i), p, q, lp, lq, e))
        h = [hecke_point(ctx, HeckeQuery(SplitGeneric(lat.point(lam_i.z + k * 1e-5 * u)), p, q, lp, lq, e))
             for k in (1, 2, 3)]
        lim = INF if any(x.inf for x in h) else ProjPoint(3 * h[0].z - 3 * h[1].z + h[2].z)
        res["torsion"].append(max(chordal(want, fast), chordal(want, lim)))
    return [_residual_check(f"closed_form_{k}", v, 1e-6) for k, v in res.items()]


def _h_cross_ratio(env):
    ctx, lat = env.ctx, env.lat
    out = []
    for kind in ("split", "nonsplit"):
        rng = env.rng(f"mobius_cross_ratio_{kind}")
        res = []
        for _ in range(env.n(100)):
            p, q = _pq(env, rng)
            E = SplitGeneric(random_generic_point(lat, rng)) if kind == "split" else NonSplit(int(rng.integers(1, 5)))
            lp = random_line(rng)
            lqs = [random_line(rng) for _ in range(4)]
            hs = [hecke_point(ctx, HeckeQuery(E, p, q, lp, lq)) for lq in lqs]
            res.append(chordal(cross_ratio(*lqs), cross_ratio(*hs)))
        out.append(_residual_check(f"mobius_cross_ratio_{kind}", res, 1e-6))
    return out


def random_query(env: _Env, rng) -> HeckeQuery:
    """A Hecke query over any of the three classes, with bad lines mixed in."""
    lat = env.lat
    p, q = _pq(env, rng)
    kind = rng.random()
    lp, lq = random_line(rng), random_line(rng)
    if kind < 0.5:
        E = SplitGeneric(random_generic_point(lat, rng))
        bad = [INF, ProjPoint(0j)]
        if rng.random() < 0.2:
            lp = bad[int(rng.integers(2))]
        if rng.random() < 0.2:
            lq = [b for b in bad if b != lp][0] if lp in bad else bad[int(rng.integers(2))]
    elif kind < 0.85:
        E = NonSplit(int(rng.integers(1, 5)))
        r = rng.random()
        if r < 0.15:
            lp = INF
        elif r < 0.3:
            lq = INF
    else:
        E = SplitTorsion(int(rng.integers(1, 5)))
    return HeckeQuery(E, p, q, lp, lq)


def _h_symmetry_gauge(env):
    ctx = env.ctx
    rng = env.rng("hecke_symmetry")
    sym = [chordal(hecke_point(ctx, Q), hecke_point(ctx, Q.swapped()))
           for Q in (random_query(env, rng) for _ in range(env.n()))]
    rng = env.rng("hecke_gauge")
    gauge = []
    for _ in range(env.n()):
        Q = random_query(env, rng)
        if isinstance(Q.E, SplitTorsion):
            continue
        if isinstance(Q.E, SplitGeneric):
            c = 10 ** rng.uniform(-1, 1) * np.exp(2j * np.pi * rng.random())
            move = (lambda x: x if x.inf else ProjPoint(c * x.z))
        else:
            b = complex(*rng.normal(size=2))
            move = (lambda x: x if x.inf else ProjPoint(x.z + b))
        Q2 = HeckeQuery(Q.E, Q.p, Q.q, move(Q.lp), move(Q.lq), Q.e)
        gauge.append(chordal(hecke_point(ctx, Q), hecke_point(ctx, Q2)))
    return [_residual_check("hecke_symmetry", sym, 1e-7), _residual_check("hecke_gauge", gauge, 1e-7)]


def _h_generator(env):
    ctx, lat = env.ctx, env.lat
    rng = env.rng("hecke_generator")
    consistency, independence = [], []
    for _ in range(env.n(100)):
        p, q = _pq(env, rng)
        e = half_sum(p, q)[0]
        if rng.random() < 0.5:
            lam = random_generic_point(lat, rng)
            E = SplitGeneric(lam)
            sample = lambda a: split_sample(ctx, lam, p, q, a, e)  # noqa: E731
        else:
            E = NonSplit(int(rng.integers(1, 5)))
            sample = lambda a: nonsplit_sample(ctx, E.i, p, q, a, e)  # noqa: E731
        M = hecke_mobius(ctx, E, p, q, e)
        a4 = random_point(lat, rng, [p, q], 0.05)
        w, r = sample(a4)
        consistency.append(chordal(M(w), r))
        M2 = hecke_mobius(ctx, E, p, q, e, seed_start=101)
        independence.append(max(chordal(M(x), M2(x)) for x in (random_line(rng) for _ in range(10))))
    return [_residual_check("generator_consistency", consistency, 1e-7),
            _residual_check("fit_independence", independence, 1e-7)]


# -- moduli ---------------------------------------------------------------------

def _m_diagram(env):
    cfg = env.cfg
    rng = env.rng("commutative_diagram")
    res = []
    for _ in range(env.n()):
        pb = random_bad_bundle(cfg, rng)
        res.append(pi_map(cfg, pb).distance(f_embed(cfg, pi_tilde_1(cfg, pb))))
    # both torsion classes over the same lam_i land on f(lam_i)
    for i in (1, 2, 3, 4):
        ns = ParabolicBundle.build(NonSplit(i), cfg.points, (random_line(rng), random_line(rng), INF))
        st = ParabolicBundle.build(SplitTorsion(i), cfg.points, (0j, 1.0, INF))
        f = f_embed(cfg, torsion_point(env.lat, i))
        res.append(max(pi_map(cfg, ns).distance(f), pi_map(cfg, st).distance(f)))
    return [_residual_check("pi_equals_f_of_pi_tilde", res, 1e-6)]


def _m_injectivity(env):
    cfg, lat = env.cfg, env.lat
    rng = env.rng("f_injectivity")
    bad = 0
    for _ in range(env.scaled(2.5)):
        a = random_point(lat, rng)
        b = random_point(lat, rng, [a, -a], 0.01)
        if chordal(f_embed(cfg, a).c1, f_embed(cfg, b).c1) <= 10 * cfg.tol:
            bad += 1
        if not a.is_two_torsion(0.01):
            if chordal(f_embed(cfg, a).c2, f_embed(cfg, -a).c2) <= 10 * cfg.tol:
                bad += 1
    return [_count_check("f_injectivity", bad)]


def _m_collapse(env):
    cfg = env.cfg
    rng = env.rng("fiber_collapse")
    lam = random_generic_point(env.lat, rng)
    target = f_embed(cfg, lam)
    res = [pi_map(cfg, random_bad_bundle(cfg, rng, lam=lam)).distance(target) for _ in range(env.n(50))]
    return [_residual_check("fiber_collapse", res, 1e-6)]


def _same_class(a, b) -> float:
    a, b = canonical_form(a), canonical_form(b)
    if type(a.bundle) is not type(b.bundle):
        return math.inf
    d = max(chordal(x, y) for x, y in zip(a.coords, b.coords))
    if isinstance(a.bundle, SplitGeneric):
        d = max(d, torus_distance(a.bundle.lam, b.bundle.lam))
    elif a.bundle.i != b.bundle.i:
        return math.inf
    return d


def _random_triple(rng) -> ModuliTriple:
    return ModuliTriple(random_line(rng), random_line(rng), random_line(rng))


def _m_round_trips(env):
    cfg = env.cfg
    rng = env.rng("good_round_trip")
    back, iso = [], []
    for _ in range(env.n()):
        pb = random_good_bundle(cfg, rng)
        t = pi_map(cfg, pb)
        back.append(_same_class(invert_good(cfg, t), pb))
        iso.append(pi_map(cfg, canonical_form(pb)).distance(t))
    rng = env.rng("good_forward_trip")
    fwd = []
    for _ in range(env.n()):
        t = _random_triple(rng)
        fwd.append(pi_map(cfg, invert_good(cfg, t)).distance(t))
    rng = env.rng("bad_round_trip")
    bad = []
    for _ in range(env.n()):
        pb = random_bad_bundle(cfg, rng)
        lam, m = pi_tilde_1(cfg, pb), h_bad(cfg, pb)
        inv = invert_bad(cfg, lam, m)
        bad.append(max(_same_class(inv, pb), torus_distance(pi_tilde_1(cfg, inv), lam), chordal(h_bad(cfg, inv), m)))
    return [
        _residual_check("isomorphism_invariance", iso, 1e-6),
        _residual_check("invert_good_after_pi", back, 1e-6),
        _residual_check("pi_after_invert_good", fwd, 1e-6),
        _residual_check("invert_bad_round_trip", bad, 1e-6),
    ]


def _m_omitted(env):
    cfg, ctx = env.cfg, env.ctx
    rng = env.rng("omitted_values")
    res, misses = [], 0
    p1, p2, e3 = cfg.p1, cfg.p2, cfg.e3
    for _ in range(env.n(100)):
        lam = random_generic_point(env.lat, rng)
        E = SplitGeneric(lam)
        M = hecke_mobius(ctx, E, p1, p2, e3)
        o1 = pillowcase_map(ctx, lam + e3 - p1)
        o2 = pillowcase_map(ctx, lam + e3 - p2)
        # good-good lines have parameter in C^*; its closure adds exactly 0 and inf
        res.append(max(chordal(M(INF), o1), chordal(M(ProjPoint(0j)), o2)))
        for o, k in ((o1, 0), (o2, 1)):
            pb = invert_bad(cfg, lam, o)
            if not (pb.coords[k] == ProjPoint(0j)):
                misses += 1
    return [_residual_check("omitted_values", res, 1e-6), _count_check("omitted_values_bad_line", misses)]


def _m_square(env):
    cfg = env.cfg
    rng = env.rng("m2_square")
    res = []
    for _ in range(env.n(100)):
        pb = random_bad_bundle(cfg, rng)
        a, b = m2_map(cfg, forget_p3(pb))
        res.append(max(chordal(a, pillowcase_map(env.ctx, pi_tilde_1(cfg, pb))), chordal(b, h_bad(cfg, pb))))
    return [_residual_check("m2_square", res, 1e-6)]


def _m_partition(env):
    cfg = env.cfg
    rng = env.rng("locate_partition")
    wrong = 0
    for _ in range(env.scaled(2.5)):
        if rng.random() < 0.5:
            tag = locate(cfg, pi_map(cfg, random_good_bundle(cfg, rng)))
            wrong += not isinstance(tag, GoodLocus)
        else:
            pb = random_bad_bundle(cfg, rng)
            tag = locate(cfg, pi_map(cfg, pb))
            wrong += not (isinstance(tag, OnCurve)
                          and min(torus_distance(tag.lam, pi_tilde_1(cfg, pb)),
                                  torus_distance(tag.lam, -pi_tilde_1(cfg, pb))) < 1e-6)
    return [_count_check("locate_partition", wrong)]


def _m_good_injectivity(env):
    cfg = env.cfg
    rng = env.rng("good_injectivity")
    pbs = [random_good_bundle(cfg, rng) for _ in range(env.n(300))]
    ts = np.array([[c.homogeneous() for c in pi_map(cfg, pb)] for pb in pbs])
    # chordal distances between all pairs, coordinate by coordinate
    num = np.abs(ts[:, None, :, 0] * ts[None, :, :, 1] - ts[:, None, :, 1] * ts[None, :, :, 0])
    nrm = np.linalg.norm(ts, axis=-1)
    d = (num / (nrm[:, None] * nrm[None, :])).max(axis=-1)
    np.fill_diagonal(d, np.inf)
    return [_count_check("good_locus_injectivity", int((d <= cfg.tol).sum() // 2))]


# -- poincare -------------------------------------------------------------------

def _p_all(env):
    target = 1 + 4 * T**2 + 2 * T**3 + 4 * T**4 + T**6

    def diff(a, b) -> float:
        return float(sum(abs(c) for c in (a - b).coeffs))

    P13 = poincare_formula(1, 3)
    out = [
        CheckResult("formula_g1_n3", P13 == target, diff(P13, target)),
        CheckResult("decomposition", decomposition_poincare() == target, diff(decomposition_poincare(), target)),
        CheckResult("formula_g0_n3", poincare_formula(0, 3) == T**0, diff(poincare_formula(0, 3), T**0)),
    ]
    rem = poincare_formula_divmod(1, 3)[1]
    out.append(CheckResult("exact_division", not rem, float(sum(abs(c) for c in rem.coeffs))))
    out.append(CheckResult("euler_characteristic", P13(-1) == 8, float(abs(P13(-1) - 8))))
    pal = sum(abs(a - b) for a, b in zip(P13.coeffs, reversed(P13.coeffs)))
    out.append(CheckResult("palindromic", pal == 0, float(pal)))
    bad_deg = bad_const = 0
    for g in range(4):
        for n in range(1, 10, 2):
            P = poincare_formula(g, n)
            expect = 2 * (3 * (g - 1) + n)
            if expect >= 0:
                bad_deg += P.degree != expect
                bad_const += P(0) != 1
    out.append(_count_check("degree_is_real_dimension", bad_deg))
    out.append(_count_check("constant_term_one", bad_const))
    return out


SUITES: dict[str, list[Callable[[_Env], list[CheckResult]]]] = {
    "weierstrass": [_w_legendre, _w_ode, _w_oracle, _w_parity, _w_quasi, _w_preimages],
    "hecke": [_h_eval, _h_cross_ratio, _h_symmetry_gauge, _h_generator],
    "moduli": [_m_diagram, _m_injectivity, _m_collapse, _m_round_trips, _m_omitted, _m_square,
               _m_partition, _m_good_injectivity],
    "poincare": [_p_all],
}
SUITES["all"] = [f for k in ("weierstrass", "hecke", "moduli", "poincare") for f in SUITES[k]]


def run_suite(suite: str, run: RunConfig | None = None) -> dict:
    """Run a suite and return ``{suite, checks: [{name, pass, max_residual}], seed}``."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {sorted(SUITES)}")
    run = run or RunConfig()
    env = _Env(run, run.moduli_config())
    checks: list[CheckResult] = []
    for fn in SUITES[suite]:
        try:
            checks.extend(fn(env))
        except ModuliError as exc:
            checks.append(CheckResult(f"{fn.__name__.lstrip('_')}:{type(exc).__name__}", False, math.inf))
    return {"suite": suite, "checks": [c.to_json() for c in checks], "seed": run.seed}
