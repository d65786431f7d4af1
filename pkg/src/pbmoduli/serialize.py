"""JSON and CSV encodings for the public value types.

Complex numbers are ``[re, im]``; ProjPoints are ``{"inf": true}`` or
``{"re": x, "im": y}`` in JSON and ``"re+imi"`` or ``"inf"`` in CSV.
"""
from __future__ import annotations

import csv
import io
import math
from typing import Any, Iterable

from .elliptic import LatticeTau, TorusPoint
from .moduli import ModuliTriple
from .parabolic import BundleClass, MarkedLine, NonSplit, ParabolicBundle, SplitGeneric, SplitTorsion
from .poincare import IntPoly
from .projective import INF, ProjPoint

__all__ = [
    "parse_complex",
    "complex_to_json",
    "complex_from_json",
    "proj_to_json",
    "proj_from_json",
    "proj_to_csv",
    "proj_from_csv",
    "bundle_to_json",
    "bundle_from_json",
    "parabolic_to_json",
    "parabolic_from_json",
    "triple_to_json",
    "triple_from_json",
    "poly_to_json",
    "poly_from_json",
    "CSV_HEADER",
    "curve_csv",
]

CSV_HEADER = ("lambda_re", "lambda_im", "c1", "c2", "c3")

_KINDS = {"split_generic": SplitGeneric, "split_torsion": SplitTorsion, "nonsplit": NonSplit}


def parse_complex(s: str) -> complex:
    """Accepts Python (``1+2j``) and math (``1+2i``) spellings."""
    s = s.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    return complex(s)


def complex_to_json(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def complex_from_json(v: Any) -> complex:
    if isinstance(v, str):
        return parse_complex(v)
    if isinstance(v, (int, float)):
        return complex(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, dict) and "re" in v:
        return complex(float(v["re"]), float(v.get("im", 0.0)))
    raise ValueError(f"cannot read a complex number from {v!r}")


def proj_to_json(p: ProjPoint) -> dict:
    if p.inf:
        return {"inf": True}
    return {"re": p.z.real, "im": p.z.imag}


def proj_from_json(v: Any) -> ProjPoint:
    if v is None or v == "inf" or (isinstance(v, dict) and v.get("inf")):
        return INF
    return ProjPoint(complex_from_json(v))


def _fmt_float(x: float) -> str:
    return repr(float(x))


def proj_to_csv(p: ProjPoint) -> str:
    if p.inf:
        return "inf"
    re_, im = p.z.real, p.z.imag
    sign = "-" if math.copysign(1.0, im) < 0 else "+"
    return f"{_fmt_float(re_)}{sign}{_fmt_float(abs(im))}i"


def proj_from_csv(s: str) -> ProjPoint:
    s = s.strip()
    if s == "inf":
        return INF
    if not s.endswith("i"):
        raise ValueError(f"bad ProjPoint cell {s!r}")
    body = s[:-1]
    # split at the last sign that is not an exponent sign
    for k in range(len(body) - 1, 0, -1):
        if body[k] in "+-" and body[k - 1] not in "eE":
            return ProjPoint(complex(float(body[:k]), float(body[k:])))
    raise ValueError(f"bad ProjPoint cell {s!r}")


def bundle_to_json(E: BundleClass) -> dict:
    if isinstance(E, SplitGeneric):
        return {"kind": "split_generic", "lambda": complex_to_json(E.lam.z)}
    kind = "split_torsion" if isinstance(E, SplitTorsion) else "nonsplit"
    return {"kind": kind, "i": E.i}


def bundle_from_json(v: dict, lat: LatticeTau) -> BundleClass:
    kind = v.get("kind")
    if kind not in _KINDS:
        raise ValueError(f"unknown bundle kind {kind!r}")
    if kind == "split_generic":
        return SplitGeneric(lat.point(complex_from_json(v["lambda"])))
    return _KINDS[kind](int(v["i"]))


def parabolic_to_json(pb: ParabolicBundle) -> dict:
    return {
        "bundle": bundle_to_json(pb.bundle),
        "marks": [{"at": complex_to_json(m.at.z), "coord": proj_to_json(m.coord)} for m in pb.marks],
        "weight": pb.weight,
    }


def parabolic_from_json(v: dict, lat: LatticeTau, points: Iterable[TorusPoint] | None = None) -> ParabolicBundle:
    """Reads a bundle; marks without ``at`` fall back to ``points`` in order."""
    E = bundle_from_json(v["bundle"], lat)
    fallback = list(points) if points is not None else []
    marks = []
    for k, m in enumerate(v["marks"]):
        if "at" in m:
            at = lat.point(complex_from_json(m["at"]))
        elif k < len(fallback):
            at = fallback[k]
        else:
            raise ValueError(f"mark {k} has no 'at' and no default point")
        marks.append(MarkedLine(at, proj_from_json(m["coord"])))
    return ParabolicBundle(E, tuple(marks), float(v.get("weight", 0.1)))


def triple_to_json(t: ModuliTriple) -> list[dict]:
    return [proj_to_json(c) for c in t]


def triple_from_json(v: Any) -> ModuliTriple:
    if not isinstance(v, (list, tuple)) or len(v) != 3:
        raise ValueError("a moduli triple is a 3-array of ProjPoints")
    return ModuliTriple(*(proj_from_json(c) for c in v))


def poly_to_json(p: IntPoly) -> list[int]:
    return p.to_list()


def poly_from_json(v: Iterable[int]) -> IntPoly:
    return IntPoly(tuple(int(c) for c in v))


def curve_csv(rows) -> str:
    """CSV text for ``(lam, triple)`` rows."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for lam, t in rows:
        w.writerow([_fmt_float(lam.z.real), _fmt_float(lam.z.imag), *(proj_to_csv(c) for c in t)])
    return buf.getvalue()
