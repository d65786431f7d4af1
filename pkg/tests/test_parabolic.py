import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pbmoduli import (
    INF,
    LatticeTau,
    MarkedLine,
    NonSplit,
    NotStable,
    ParabolicBundle,
    ProjPoint,
    SplitGeneric,
    SplitTorsion,
    Stability,
    bad_same_direction,
    canonical_form,
    chordal,
    classify_stability,
    line_is_bad,
    torus_equal,
)
from pbmoduli.parabolic import torsion_point

LAT = LatticeTau(0.3 + 1.1j)
PTS = [LAT.point(z) for z in (0.11 + 0.07j, 0.53 + 0.41j, 0.29 + 0.83j)]
LAM = LAT.point(0.23 + 0.31j)
ZERO = ProjPoint(0j)

finite = st.complex_numbers(min_magnitude=1e-3, max_magnitude=1e3, allow_nan=False, allow_infinity=False)
line = st.one_of(finite.map(ProjPoint), st.just(INF), st.just(ZERO))
bundle = st.one_of(
    st.just(SplitGeneric(LAM)),
    st.integers(1, 4).map(NonSplit),
    st.integers(1, 4).map(SplitTorsion),
)


def pb(E, coords, points=PTS):
    return ParabolicBundle.build(E, points[: len(coords)], coords)


# -- construction ----------------------------------------------------------------

def test_split_generic_rejects_torsion():
    for i in range(1, 5):
        with pytest.raises(ValueError):
            SplitGeneric(torsion_point(LAT, i))


@pytest.mark.parametrize("cls", [NonSplit, SplitTorsion])
def test_torsion_index_range(cls):
    with pytest.raises(ValueError):
        cls(5)


def test_split_generic_orientation_matters():
    assert SplitGeneric(LAM) != SplitGeneric(-LAM)


def test_marks_must_be_distinct():
    with pytest.raises(ValueError):
        pb(SplitGeneric(LAM), [1, 2], [PTS[0], PTS[0]])


def test_weight_must_be_small():
    with pytest.raises(ValueError):
        ParabolicBundle.build(SplitGeneric(LAM), PTS, (1, 2, 3), weight=0.4)
    assert ParabolicBundle.build(SplitGeneric(LAM), PTS, (1, 2, 3), weight=0.3).weight == 0.3


# -- badness --------------------------------------------------------------------

def test_line_is_bad_examples():
    E = SplitGeneric(LAM)
    assert line_is_bad(E, INF) and line_is_bad(E, ZERO) and not line_is_bad(E, 1e-12)
    assert not line_is_bad(NonSplit(2), ZERO) and line_is_bad(NonSplit(2), INF)
    assert all(line_is_bad(SplitTorsion(3), c) for c in (0, 1, INF, 2 + 1j))
    assert line_is_bad(E, MarkedLine(PTS[0], INF))


def test_bad_same_direction_examples():
    E = SplitGeneric(LAM)
    assert bad_same_direction(E, INF, INF)
    assert bad_same_direction(E, ZERO, ZERO)
    assert not bad_same_direction(E, INF, ZERO)
    assert bad_same_direction(SplitTorsion(1), 1, 1)
    assert not bad_same_direction(SplitTorsion(1), 1, 2)
    assert bad_same_direction(NonSplit(1), INF, INF)
    assert not bad_same_direction(NonSplit(1), ZERO, ZERO)


@given(bundle, line, line)
def test_same_direction_implies_bad(E, a, b):
    if bad_same_direction(E, a, b):
        assert line_is_bad(E, a) and line_is_bad(E, b)


# -- stability ------------------------------------------------------------------

def test_stability_examples():
    E = SplitGeneric(LAM)
    assert classify_stability(pb(E, (1, 2, 3))) == (Stability.STABLE, 0)
    assert classify_stability(pb(E, (INF, INF, 5))) == (Stability.UNSTABLE, 2)
    assert classify_stability(pb(SplitTorsion(2), (0, 1, INF))) == (Stability.STABLE, 1)
    assert classify_stability(pb(SplitTorsion(2), (1, 1, INF)))[0] is Stability.UNSTABLE
    assert classify_stability(pb(NonSplit(2), (INF, 0, INF)))[0] is Stability.UNSTABLE


def test_two_marks_can_be_strictly_semistable():
    assert classify_stability(pb(SplitGeneric(LAM), (INF, 3)))[0] is Stability.SEMISTABLE


@given(bundle, line, line, line)
def test_three_marks_never_strictly_semistable(E, a, b, c):
    verdict, m = classify_stability(pb(E, (a, b, c)))
    assert verdict is not Stability.SEMISTABLE
    assert (verdict is Stability.STABLE) == (m <= 1)


# -- canonical form -------------------------------------------------------------

def test_canonical_swap_example():
    z1, z2 = 2 + 1j, -0.5 + 3j
    out = canonical_form(pb(SplitGeneric(LAM), (z1, z2, 0)))
    assert torus_equal(out.bundle.lam, -LAM)
    s = z1  # the gauge scale making the first coordinate 1
    assert out.coords[0].z == pytest.approx(1)
    assert out.coords[1].z == pytest.approx((1 / z2) * s)
    assert out.coords[2] == INF


def test_canonical_torsion_example():
    out = canonical_form(pb(SplitTorsion(1), (2, 5, 7)))
    assert out.coords == (ZERO, ProjPoint(1.0), INF)


def test_canonical_nonsplit_shift():
    out = canonical_form(pb(NonSplit(3), (INF, 2 + 1j, 4)))
    assert out.coords[0] == INF and out.coords[1] == ZERO
    assert out.coords[2].z == pytest.approx(2 - 1j)


def test_canonical_rejects_unstable():
    with pytest.raises(NotStable):
        canonical_form(pb(SplitGeneric(LAM), (INF, INF, 1)))


@given(bundle, line, line, line)
def test_canonical_form_idempotent_and_stability_invariant(E, a, b, c):
    x = pb(E, (a, b, c))
    verdict = classify_stability(x)
    if verdict[0] is Stability.UNSTABLE:
        return
    y = canonical_form(x)
    assert classify_stability(y) == verdict
    z = canonical_form(y)
    assert type(z.bundle) is type(y.bundle)
    assert all(chordal(u, v) < 1e-12 for u, v in zip(y.coords, z.coords))


@given(finite, finite, finite, finite)
def test_canonical_form_identifies_gauge_orbits(a, b, c, k):
    E = SplitGeneric(LAM)
    x = canonical_form(pb(E, (a, b, c)))
    y = canonical_form(pb(E, (k * a, k * b, k * c)))
    assert all(chordal(u, v) < 1e-9 for u, v in zip(x.coords, y.coords))
    x = canonical_form(pb(NonSplit(1), (a, b, c)))
    y = canonical_form(pb(NonSplit(1), (a + k, b + k, c + k)))
    assert all(chordal(u, v) < 1e-9 for u, v in zip(x.coords, y.coords))


def test_canonical_form_identifies_swapped_presentation(rng):
    # (L + L^-1, z) and (L^-1 + L, 1/z) are the same parabolic bundle
    for _ in range(20):
        zs = rng.normal(size=3) + 1j * rng.normal(size=3)
        x = canonical_form(pb(SplitGeneric(LAM), tuple(zs)))
        y = canonical_form(pb(SplitGeneric(-LAM), tuple(1 / zs)))
        assert torus_equal(x.bundle.lam, y.bundle.lam)
        assert all(chordal(u, v) < 1e-9 for u, v in zip(x.coords, y.coords))
