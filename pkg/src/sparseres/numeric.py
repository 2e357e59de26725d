"""Shared numeric settings and coefficient conversions."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Any, Optional

import mpmath
from mpmath import mp


@dataclass(frozen=True)
class NumericOptions:
    precision: int = 53
    tol: Optional[float] = None
    cluster_tol: float = 1e-6
    seed: int = 0
    guard_bits: int = 32
    max_iterations: int = 200

    @property
    def tolerance(self) -> float:
        # 1e-8 at double precision, scaled with the mantissa length
        if self.tol is not None:
            return self.tol
        return 1e-8 * 2.0 ** (-(self.precision - 53))

    @property
    def work_prec(self) -> int:
        return self.precision + self.guard_bits

    def with_(self, **kw) -> "NumericOptions":
        return replace(self, **kw)


DEFAULT = NumericOptions()


def _is_gaussian(c) -> bool:
    return type(c).__name__ == "GaussianRational"


def is_exact(c: Any) -> bool:
    return isinstance(c, (int, Fraction)) or _is_gaussian(c)


def to_mpc(c: Any) -> mpmath.mpc:
    if isinstance(c, mpmath.mpc):
        return c
    if isinstance(c, (int, Fraction)):
        c = Fraction(c)
        return mpmath.mpc(mpmath.mpf(c.numerator) / c.denominator)
    if _is_gaussian(c):
        re = mpmath.mpf(int(c.x.numerator)) / int(c.x.denominator)
        im = mpmath.mpf(int(c.y.numerator)) / int(c.y.denominator)
        return mpmath.mpc(re, im)
    return mpmath.mpc(c)


def gaussian(re: Fraction, im: Fraction):
    from sympy.polys.domains import QQ_I

    return QQ_I(Fraction(re), Fraction(im))


def exact_to_complex_parts(c) -> tuple[Fraction, Fraction]:
    if isinstance(c, (int, Fraction)):
        return Fraction(c), Fraction(0)
    return (
        Fraction(int(c.x.numerator), int(c.x.denominator)),
        Fraction(int(c.y.numerator), int(c.y.denominator)),
    )


def rel_err(a, b) -> float:
    a, b = to_mpc(a), to_mpc(b)
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0 else float(abs(a - b) / scale)


def mp_str(x) -> str:
    """Full-precision decimal string of a real mpf."""
    return mpmath.nstr(x, max(17, int(mp.prec * 0.30103) + 2), strip_zeros=False)
