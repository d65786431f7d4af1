"""Stable parabolic bundles of rank 2 on an elliptic curve with three marked points.

The moduli space is realised concretely: Weierstrass functions give the
pillowcase coordinate on M^ss(X) = CP^1, Hecke modifications are evaluated
from degree -1 subbundle families, and the map into (CP^1)^3 together with
its inverses on the good and bad loci is exposed in :mod:`pbmoduli.moduli`.
"""
from .elliptic import (
    LatticeTau,
    TorusPoint,
    canonical_sign,
    half_sum,
    reduce_mod_lattice,
    torus_add,
    torus_distance,
    torus_equal,
    torus_neg,
    torus_sub,
    translate,
    two_torsion_points,
)
from .errors import (
    BadSameDirection,
    DegenerateSamples,
    InexactDivision,
    InvalidTau,
    ModuliError,
    NonConvergence,
    NotBadLocus,
    NotStable,
    OnCurveInput,
    ToleranceFailure,
)
from .hecke import HeckeQuery, hecke_mobius, hecke_point, nonsplit_sample, split_sample
from .moduli import (
    GoodLocus,
    ModuliConfig,
    ModuliTriple,
    OnCurve,
    curve_points,
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
from .parabolic import (
    MarkedLine,
    NonSplit,
    ParabolicBundle,
    SplitGeneric,
    SplitTorsion,
    Stability,
    bad_same_direction,
    canonical_form,
    classify_stability,
    line_is_bad,
)
from .poincare import IntPoly, decomposition_poincare, poincare_formula
from .projective import INF, MobiusMap, ProjPoint, chordal, cross_ratio, mobius_apply, mobius_from_three, mobius_invert
from .weierstrass import (
    WeierstrassContext,
    pillowcase_map,
    pillowcase_preimages,
    sigma,
    wp,
    wp_prime,
    zeta_w,
)

__version__ = "0.1.0"
