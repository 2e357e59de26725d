"""JSON problem files and JSON encoding of results.

A problem file looks like::

    {"n": 1,
     "supports": [[[0]], [[0], [1], [2]]],
     "polynomials": [[[[0], "3"]], [[[0], "1/2"], [[1], [0.5, -1.0]], [[2], 1]]],
     "options": {"precision": 53, "tol": 1e-8, "seed": 0}}

Coefficients are rational strings ``"p/q"``, integers, or ``[re, im]`` pairs
(numbers give float-complex values, strings give Gaussian rationals).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

import mpmath

from .errors import InputError
from .laurent import LaurentPolynomial
from .numeric import NumericOptions, exact_to_complex_parts, gaussian, mp_str, to_mpc
from .supports import SupportFamily


@dataclass
class ProblemFile:
    n: int
    supports: list
    polynomials: Optional[list] = None
    options: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)

    def family(self) -> SupportFamily:
        try:
            return SupportFamily(self.n, tuple(tuple(tuple(p) for p in a) for a in self.supports))
        except ValueError as exc:
            raise InputError(str(exc)) from None

    def numeric_options(self, **overrides) -> NumericOptions:
        kw = {k: self.options[k] for k in ("precision", "tol", "seed") if k in self.options}
        kw.update({k: v for k, v in overrides.items() if v is not None})
        return NumericOptions(**kw)


def parse_coefficient(raw: Any):
    if isinstance(raw, bool):
        raise InputError(f"invalid coefficient {raw!r}")
    if isinstance(raw, int):
        return Fraction(raw)
    if isinstance(raw, str):
        try:
            return Fraction(raw)
        except (ValueError, ZeroDivisionError):
            raise InputError(f"invalid rational coefficient {raw!r}") from None
    if isinstance(raw, float):
        return mpmath.mpc(raw)
    if isinstance(raw, list) and len(raw) == 2:
        if all(isinstance(x, str) for x in raw):
            try:
                re, im = Fraction(raw[0]), Fraction(raw[1])
            except (ValueError, ZeroDivisionError):
                raise InputError(f"invalid complex coefficient {raw!r}") from None
            return re if im == 0 else gaussian(re, im)
        if all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in raw):
            return mpmath.mpc(raw[0], raw[1])
    raise InputError(f"invalid coefficient {raw!r}")


def parse_polynomial(n: int, raw: Any) -> LaurentPolynomial:
    if not isinstance(raw, list):
        raise InputError("a polynomial is a list of [exponent, coefficient] terms")
    terms: dict = {}
    for term in raw:
        if not (isinstance(term, list) and len(term) == 2 and isinstance(term[0], list)):
            raise InputError(f"invalid term {term!r}")
        exp = term[0]
        if len(exp) != n or not all(isinstance(x, int) and not isinstance(x, bool) for x in exp):
            raise InputError(f"exponent {exp!r} is not an integer vector of length {n}")
        key = tuple(exp)
        c = parse_coefficient(term[1])
        terms[key] = terms[key] + c if key in terms else c
    return LaurentPolynomial(n, terms)


def _check_points(n: int, supports: Any) -> None:
    if not isinstance(supports, list) or not supports:
        raise InputError("'supports' must be a nonempty list")
    for a in supports:
        if not isinstance(a, list) or not a:
            raise InputError("every support must be a nonempty list of points")
        for p in a:
            if not (isinstance(p, list) and len(p) == n and all(isinstance(x, int) and not isinstance(x, bool) for x in p)):
                raise InputError(f"point {p!r} is not an integer vector of length {n}")


def load_problem(text: str) -> ProblemFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None
    if not isinstance(data, dict) or "n" not in data or "supports" not in data:
        raise InputError("problem file needs the fields 'n' and 'supports'")
    n = data["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 0:
        raise InputError("'n' must be a nonnegative integer")
    _check_points(n, data["supports"])
    polys = data.get("polynomials")
    parsed = None
    if polys is not None:
        if not isinstance(polys, list):
            raise InputError("'polynomials' must be a list")
        parsed = [parse_polynomial(n, p) for p in polys]
        offset = len(data["supports"]) - len(parsed)
        if offset < 0:
            raise InputError("more polynomials than supports")
        for i, f in enumerate(parsed):
            declared = {tuple(p) for p in data["supports"][i + offset]}
            if not set(f.terms) <= declared:
                raise InputError(f"polynomial {i} uses exponents outside its declared support")
    options = data.get("options", {})
    if not isinstance(options, dict):
        raise InputError("'options' must be an object")
    extra = {k: v for k, v in data.items() if k not in ("n", "supports", "polynomials", "options")}
    return ProblemFile(n, data["supports"], parsed, options, extra)


def encode_number(x: Any) -> Any:
    """Rationals as strings, complex values as [re, im] full-precision strings."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, int):
        return x
    if type(x).__name__ == "GaussianRational":
        re, im = exact_to_complex_parts(x)
        return [str(re), str(im)]
    if isinstance(x, mpmath.mpf):
        return mp_str(x)
    z = to_mpc(x)
    return [mp_str(z.real), mp_str(z.imag)]


def encode(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, (bool, str)) or obj is None:
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return obj
    return encode_number(obj)


def dumps(obj: Any) -> str:
    return json.dumps(encode(obj), sort_keys=True, indent=2)
