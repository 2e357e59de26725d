"""Sparse Laurent polynomials with exact or multiprecision coefficients.

A polynomial is a map from exponent vectors to coefficients.  Coefficients
may be ``Fraction`` (exact-rational), Gaussian rationals from sympy's
``QQ_I`` (rational-complex) or ``mpmath.mpc`` (float-complex).  The domain
tag is inferred from the stored coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

import mpmath

from .lattice import IntVector, apply, determinant, dot
from .numeric import _is_gaussian, is_exact, to_mpc
from .polytopes import Polytope, convex_hull

EXACT_RATIONAL = "exact-rational"
RATIONAL_COMPLEX = "rational-complex"
FLOAT_COMPLEX = "float-complex"


def _normalize(c):
    if isinstance(c, bool):
        raise TypeError("boolean coefficient")
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (float, complex, mpmath.mpf)):
        return mpmath.mpc(c)
    return c


def _domain(values: Iterable[Any]) -> str:
    tag = EXACT_RATIONAL
    for c in values:
        if isinstance(c, Fraction):
            continue
        if _is_gaussian(c):
            tag = RATIONAL_COMPLEX
        else:
            return FLOAT_COMPLEX
    return tag


@dataclass(frozen=True, eq=False)
class LaurentPolynomial:
    n: int
    terms: Mapping[IntVector, Any]

    def __post_init__(self):
        clean = {}
        for a, c in self.terms.items():
            a = tuple(int(x) for x in a)
            if len(a) != self.n:
                raise ValueError(f"exponent {a} does not have length {self.n}")
            c = _normalize(c)
            if not c:
                continue
            clean[a] = clean[a] + c if a in clean else c
        object.__setattr__(self, "terms", {a: clean[a] for a in sorted(clean) if clean[a]})

    @classmethod
    def constant(cls, n: int, c) -> "LaurentPolynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def monomial(cls, a: Sequence[int], c=1) -> "LaurentPolynomial":
        return cls(len(a), {tuple(a): c})

    @classmethod
    def variable(cls, n: int, k: int) -> "LaurentPolynomial":
        return cls.monomial(tuple(int(j == k - 1) for j in range(n)))

    @property
    def domain(self) -> str:
        return _domain(self.terms.values())

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: Sequence[int]):
        return self.terms.get(tuple(a), Fraction(0))

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __add__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out[a] + c if a in out else c
        return LaurentPolynomial(self.n, out)

    def __neg__(self) -> "LaurentPolynomial":
        return LaurentPolynomial(self.n, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other: "LaurentPolynomial") -> "LaurentPolynomial":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPolynomial":
        if not isinstance(other, LaurentPolynomial):
            return self.scale(other)
        out: dict = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                e = tuple(x + y for x, y in zip(a, b))
                out[e] = out[e] + c * d if e in out else c * d
        return LaurentPolynomial(self.n, out)

    __rmul__ = __mul__

    def scale(self, s) -> "LaurentPolynomial":
        s = _normalize(s)
        return LaurentPolynomial(self.n, {a: s * c for a, c in self.terms.items()})

    def shift(self, b: Sequence[int]) -> "LaurentPolynomial":
        """Multiply by the monomial t^b."""
        return LaurentPolynomial(
            self.n, {tuple(x + y for x, y in zip(a, b)): c for a, c in self.terms.items()}
        )

    def map_coefficients(self, fn) -> "LaurentPolynomial":
        return LaurentPolynomial(self.n, {a: fn(c) for a, c in self.terms.items()})

    def to_mpc(self) -> "LaurentPolynomial":
        return self.map_coefficients(to_mpc)

    def norm1(self):
        return sum((abs(to_mpc(c)) for c in self.terms.values()), mpmath.mpf(0))

    def __repr__(self) -> str:
        return f"LaurentPolynomial({self.n}, {self.terms!r})"


@dataclass(frozen=True)
class TorusPoint:
    coordinates: tuple

    def __post_init__(self):
        coords = tuple(self.coordinates)
        if any(not c for c in coords):
            raise ValueError("torus points have nonzero coordinates")
        object.__setattr__(self, "coordinates", coords)

    def __len__(self) -> int:
        return len(self.coordinates)

    def __getitem__(self, i):
        return self.coordinates[i]

    def monomial(self, a: Sequence[int]):
        val = 1
        for x, k in zip(self.coordinates, a):
            if k:
                val = val * x**k
        return val


def support_of(f: LaurentPolynomial) -> list[IntVector]:
    if f.is_zero():
        raise ValueError("zero polynomial has no support")
    return list(f.terms)


def newton_polytope(f: LaurentPolynomial) -> Polytope:
    return convex_hull(support_of(f))


def initial_part(f: LaurentPolynomial, v: Sequence[int]) -> LaurentPolynomial:
    if f.is_zero():
        raise ValueError("zero polynomial has no initial part")
    h = min(dot(v, a) for a in f.terms)
    return LaurentPolynomial(f.n, {a: c for a, c in f.terms.items() if dot(v, a) == h})


def evaluate(f: LaurentPolynomial, xi) -> Any:
    """f(xi); exact when both f and xi are exact, multiprecision complex otherwise."""
    point = xi if isinstance(xi, TorusPoint) else TorusPoint(tuple(xi))
    exact = all(is_exact(c) for c in point.coordinates) and f.domain != FLOAT_COMPLEX
    if exact:
        coords = [Fraction(c) if isinstance(c, int) else c for c in point.coordinates]
        total = Fraction(0)
        for a, c in f.terms.items():
            total = total + c * TorusPoint(tuple(coords)).monomial(a)
        return total
    coords = [to_mpc(c) for c in point.coordinates]
    total = mpmath.mpc(0)
    for a, c in f.terms.items():
        m = mpmath.mpc(1)
        for x, k in zip(coords, a):
            if k:
                m *= x**k
        total += to_mpc(c) * m
    return total


def factor_out_monomial(f: LaurentPolynomial) -> tuple[IntVector, LaurentPolynomial]:
    """f = t^b * g with b the lexicographically smallest exponent of f."""
    b = min(support_of(f))
    return b, f.shift(tuple(-x for x in b))


def change_coordinates(f: LaurentPolynomial, u: Sequence[Sequence[int]]) -> LaurentPolynomial:
    """Map every exponent a to u a (u unimodular)."""
    if len(u) != f.n or any(len(r) != f.n for r in u):
        raise ValueError("matrix size does not match the number of variables")
    if f.n and abs(determinant(u)) != 1:
        raise ValueError("change of coordinates must be unimodular")
    return LaurentPolynomial(f.n, {apply(u, a): c for a, c in f.terms.items()})


def hide_variable(f: LaurentPolynomial, k: int) -> LaurentPolynomial:
    """Regroup f as a polynomial in the other n-1 variables over Laurent polynomials in t_k."""
    if not 1 <= k <= f.n:
        raise ValueError(f"variable index {k} out of range 1..{f.n}")
    groups: dict[IntVector, dict] = {}
    for a, c in f.terms.items():
        rest = a[: k - 1] + a[k:]
        groups.setdefault(rest, {})[(a[k - 1],)] = c
    return _HiddenPolynomial(f.n - 1, {r: LaurentPolynomial(1, g) for r, g in groups.items()}, k)


class _HiddenPolynomial(LaurentPolynomial):
    """Coefficients are univariate LaurentPolynomial objects in the hidden variable."""

    def __init__(self, n, terms, hidden_index):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", {a: terms[a] for a in sorted(terms) if not terms[a].is_zero()})
        object.__setattr__(self, "hidden_index", hidden_index)

    @property
    def domain(self) -> str:
        return "laurent[" + _domain(c for g in self.terms.values() for c in g.terms.values()) + "]"


def unhide_variable(h: LaurentPolynomial, k: int | None = None) -> LaurentPolynomial:
    k = getattr(h, "hidden_index", None) if k is None else k
    out = {}
    for rest, g in h.terms.items():
        for (e,), c in g.terms.items():
            out[rest[: k - 1] + (e,) + rest[k - 1 :]] = c
    return LaurentPolynomial(h.n + 1, out)


def specialize(f: LaurentPolynomial, k: int, value) -> LaurentPolynomial:
    """Substitute t_k = value, giving a polynomial in the remaining n-1 variables."""
    h = hide_variable(f, k)
    return LaurentPolynomial(h.n, {r: evaluate(g, (value,)) for r, g in h.terms.items()})
