"""Exact integer polynomials in t and the Poincare polynomial identities.

Coefficients are Python ints, so nothing here ever touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import InexactDivision

__all__ = [
    "IntPoly",
    "T",
    "ONE",
    "poincare_formula",
    "poincare_formula_divmod",
    "decomposition_poincare",
    "decomposition_terms",
]


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = [int(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


@dataclass(frozen=True)
class IntPoly:
    """Polynomial ``sum coeffs[k] t^k``; the zero polynomial has no coefficients."""

    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> "IntPoly":
        return cls((0,) * k + (c,))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other) -> "IntPoly":
        if isinstance(other, IntPoly):
            return other
        if isinstance(other, int):
            return IntPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-x for x in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self or not other:
            return IntPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __divmod__(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        """Long division over Z; raises InexactDivision if a leading coefficient does not divide."""
        if not other:
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        lead = other.coeffs[-1]
        dq = other.degree
        quot = [0] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k]
            if c == 0:
                continue
            if c % lead:
                raise InexactDivision(f"coefficient {c} not divisible by {lead}")
            f = c // lead
            quot[k - dq] = f
            for j, y in enumerate(other.coeffs):
                rem[k - dq + j] -= f * y
        return IntPoly(quot), IntPoly(rem)

    def __floordiv__(self, other: "IntPoly") -> "IntPoly":
        q, r = divmod(self, other)
        if r:
            raise InexactDivision(f"nonzero remainder {r}")
        return q

    def __call__(self, t: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def to_list(self) -> list[int]:
        return list(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                mono = str(abs(c))
            else:
                power = "t" if k == 1 else f"t^{k}"
                mono = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out


ONE = IntPoly.const(1)
T = IntPoly.monomial(1)


def poincare_formula_divmod(g: int, n: int) -> tuple[IntPoly, IntPoly]:
    """Quotient and remainder of the closed formula's numerator by ``(1 - t^2)(1 - t^4)``."""
    if g < 0:
        raise ValueError("genus must be nonnegative")
    if n < 1 or n % 2 == 0:
        raise ValueError("the closed formula needs an odd number of marked points")
    num = (1 + T**2) ** n * (1 + T**3) ** (2 * g) \
        - 2 ** (n - 1) * T ** (2 * g + n - 1) * (1 + T) ** (2 * g) * (1 + T**2)
    den = (1 - T**2) * (1 - T**4)
    return divmod(num, den)


def poincare_formula(g: int, n: int) -> IntPoly:
    """Poincare polynomial of the moduli space for genus ``g`` and ``n`` (odd) marked points."""
    q, r = poincare_formula_divmod(g, n)
    if r:
        raise InexactDivision(f"closed formula leaves remainder {r} for g={g}, n={n}")
    return q


def decomposition_terms() -> dict[str, IntPoly]:
    """Compactly supported pieces of the good/bad decomposition for three points on X."""
    p1 = 1 + T**2  # CP^1
    jac = 1 + 2 * T + T**2  # elliptic curve
    return {
        "ambient": p1**3,
        "curve": jac,
        "bad_locus": jac * p1,
    }


def decomposition_poincare() -> IntPoly:
    """``P(ambient) - P(curve) + P(bad locus)``: the good locus is ambient minus curve."""
    d = decomposition_terms()
    return d["ambient"] - d["curve"] + d["bad_locus"]
