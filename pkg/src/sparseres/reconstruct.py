"""Exact recovery of tiny sparse resultants as integer polynomials.

The resultant is multihomogeneous of known multidegree and quasi-homogeneous
for the torus action, which fixes a finite list of candidate monomials.  The
coefficients are solved for from high-precision evaluations at random
rational points, rounded to integers and checked at fresh points.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product
from typing import Mapping, Sequence

import mpmath
from mpmath import mp

from .errors import HypothesisError, InputError, NumericalError
from .laurent import LaurentPolynomial
from .numeric import NumericOptions, to_mpc
from .poisson import eval_sparse_resultant
from .supports import SupportFamily, analyze

TERM_GATE = 10_000
SAMPLE_BOUND = 97
VERIFY_POINTS = 20


@dataclass(frozen=True, eq=False)
class MultihomogeneousIntPolynomial:
    """Integer polynomial in blocks u_0, ..., u_n; u_i has one variable per point of A_i.

    Exponent keys are the concatenation of the block exponent vectors.
    """

    block_sizes: tuple[int, ...]
    multidegree: tuple[int, ...]
    terms: Mapping[tuple[int, ...], int]

    def __post_init__(self):
        width = sum(self.block_sizes)
        for e, c in self.terms.items():
            if len(e) != width:
                raise ValueError("exponent length does not match the blocks")
            if self.block_degrees(e) != tuple(self.multidegree):
                raise ValueError(f"term {e} is not of multidegree {self.multidegree}")
        object.__setattr__(self, "terms", {e: int(self.terms[e]) for e in sorted(self.terms) if self.terms[e]})

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultihomogeneousIntPolynomial):
            return NotImplemented
        return self.block_sizes == other.block_sizes and self.terms == other.terms

    def block_degrees(self, e) -> tuple[int, ...]:
        out, pos = [], 0
        for s in self.block_sizes:
            out.append(sum(e[pos : pos + s]))
            pos += s
        return tuple(out)

    def __len__(self) -> int:
        return len(self.terms)

    def content(self) -> int:
        return reduce(math.gcd, (abs(c) for c in self.terms.values()), 0)

    def negate(self) -> "MultihomogeneousIntPolynomial":
        return MultihomogeneousIntPolynomial(self.block_sizes, self.multidegree, {e: -c for e, c in self.terms.items()})

    def equal_up_to_sign(self, other: "MultihomogeneousIntPolynomial") -> bool:
        return self == other or self == other.negate()

    def evaluate(self, blocks: Sequence[Sequence]):
        flat = [x for b in blocks for x in b]
        total = 0
        for e, c in self.terms.items():
            m = c
            for x, k in zip(flat, e):
                if k:
                    m = m * x**k
            total = total + m
        return total

    def labels(self) -> list[str]:
        return [f"u{i}_{j}" for i, s in enumerate(self.block_sizes) for j in range(s)]

    def to_text(self) -> str:
        names = self.labels()
        parts = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            body = mono or "1"
            if abs(c) != 1:
                body = f"{abs(c)}*{body}" if mono else str(abs(c))
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        if not parts:
            return "0"
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


_FACTOR = re.compile(r"^u(\d+)_(\d+)(?:\^(\d+))?$")


def parse_polynomial(text: str, block_sizes: Sequence[int]) -> MultihomogeneousIntPolynomial:
    """Inverse of ``to_text`` (terms like ``3*u0_0^2*u1_1``)."""
    offsets = [sum(block_sizes[:i]) for i in range(len(block_sizes))]
    terms: dict[tuple[int, ...], int] = {}
    degree = None
    for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text.replace(" ", "")):
        coeff = -1 if sign == "-" else 1
        e = [0] * sum(block_sizes)
        for factor in body.split("*"):
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _FACTOR.match(factor)
            if not m:
                raise ValueError(f"cannot parse factor {factor!r}")
            i, j, k = int(m.group(1)), int(m.group(2)), int(m.group(3) or 1)
            e[offsets[i] + j] += k
        key = tuple(e)
        terms[key] = terms.get(key, 0) + coeff
        degs = tuple(sum(key[o : o + s]) for o, s in zip(offsets, block_sizes))
        degree = degs if degree is None else degree
    return MultihomogeneousIntPolynomial(tuple(block_sizes), degree or (0,) * len(block_sizes), terms)


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def term_count_bound(family: SupportFamily) -> int:
    report = analyze(family)
    return math.prod(math.comb(d + len(a) - 1, len(a) - 1) for d, a in zip(report.degrees, family.supports))


def _random_rational(rng: random.Random) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-SAMPLE_BOUND, SAMPLE_BOUND)
    return Fraction(num, rng.randint(1, SAMPLE_BOUND))


def _polys(family: SupportFamily, blocks) -> list[LaurentPolynomial]:
    return [LaurentPolynomial(family.n, dict(zip(a, b))) for a, b in zip(family.supports, blocks)]


class _Sampler:
    def __init__(self, family: SupportFamily, opts: NumericOptions):
        self.family = family
        self.opts = opts
        self.rng = random.Random(opts.seed)

    def value(self, blocks):
        res = eval_sparse_resultant(self.family, _polys(self.family, blocks), self.opts)
        for entry in res.trace:
            if "direction" in entry and abs(to_mpc(entry["value"])) <= mpmath.mpf("1e-3"):
                raise HypothesisError("directional resultant too close to zero")
        return to_mpc(res.value)

    def draw(self):
        for _ in range(1000):
            blocks = [[_random_rational(self.rng) for _ in a] for a in self.family.supports]
            try:
                return blocks, self.value(blocks)
            except HypothesisError:
                continue
        raise NumericalError("could not find a sample point away from the discriminant")


def _torus_weights(sampler: _Sampler) -> list[int]:
    """w_k with Res(u_{i,a} 2^{a_k}) = 2^{w_k} Res(u)."""
    family = sampler.family
    blocks, base = sampler.draw()
    weights = []
    for k in range(family.n):
        scaled = [[c * Fraction(2) ** p[k] for c, p in zip(b, a)] for b, a in zip(blocks, family.supports)]
        ratio = abs(sampler.value(scaled) / base)
        w = mpmath.log(ratio, 2)
        if abs(w - mpmath.nint(w)) > mpmath.mpf("1e-6"):
            raise NumericalError("torus weight is not an integer; increase precision")
        weights.append(int(mpmath.nint(w)))
    return weights


def candidate_monomials(family: SupportFamily, degrees: Sequence[int], weights: Sequence[int] | None = None):
    per_block = [list(_compositions(d, len(a))) for d, a in zip(degrees, family.supports)]
    out = []
    for combo in product(*per_block):
        if weights is not None:
            ok = True
            for k in range(family.n):
                w = sum(e * p[k] for block, a in zip(combo, family.supports) for e, p in zip(block, a))
                if w != weights[k]:
                    ok = False
                    break
            if not ok:
                continue
        out.append(tuple(x for block in combo for x in block))
    return out


def _monomial_value(e, flat):
    m = Fraction(1)
    for x, k in zip(flat, e):
        if k:
            m *= x**k
    return m


def reconstruct(family: SupportFamily, precision: int = 256, seed: int = 0) -> MultihomogeneousIntPolynomial:
    report = analyze(family)
    if report.resultant_trivial:
        raise InputError("the resultant of this family is 1; nothing to reconstruct")
    if term_count_bound(family) > TERM_GATE:
        raise InputError(f"term-count bound {term_count_bound(family)} exceeds the gate {TERM_GATE}")
    opts = NumericOptions(precision=precision, seed=seed)
    sizes = tuple(len(a) for a in family.supports)
    with mp.workprec(opts.work_prec):
        sampler = _Sampler(family, opts)
        weights = _torus_weights(sampler)
        cands = candidate_monomials(family, report.degrees, weights)
        rows, rhs = [], []
        while len(rows) < len(cands):
            blocks, val = sampler.draw()
            flat = [x for b in blocks for x in b]
            rows.append([to_mpc(_monomial_value(e, flat)) for e in cands])
            rhs.append(val)
        try:
            sol = mpmath.lu_solve(mpmath.matrix(rows), mpmath.matrix(rhs))
        except ZeroDivisionError:
            raise NumericalError("interpolation matrix is singular; insufficient precision") from None
        coeffs = {}
        for e, x in zip(cands, sol):
            if abs(x.imag) > mpmath.mpf("0.25"):
                raise NumericalError("insufficient precision: coefficient has an imaginary part")
            r = int(mpmath.nint(x.real))
            if abs(x.real - r) > mpmath.mpf("0.25"):
                raise NumericalError(f"insufficient precision: coefficient {mpmath.nstr(x.real, 8)} is not near an integer")
            if r:
                coeffs[e] = r
        if not coeffs:
            raise NumericalError("reconstruction produced the zero polynomial")
        content = reduce(math.gcd, (abs(c) for c in coeffs.values()))
        first = coeffs[min(coeffs)]
        sign = 1 if first > 0 else -1
        poly = MultihomogeneousIntPolynomial(
            sizes, tuple(report.degrees), {e: sign * c // content for e, c in coeffs.items()}
        )
        scale = None
        for _ in range(VERIFY_POINTS):
            blocks, val = sampler.draw()
            pval = to_mpc(poly.evaluate(blocks))
            if scale is None:
                scale = val / pval if pval else None
                if scale is None or abs(abs(scale) - content) > mpmath.mpf("1e-6") * content:
                    raise NumericalError("verification failed: evaluation and reconstruction disagree in scale")
            if abs(val - scale * pval) > mpmath.mpf("1e-6") * max(abs(val), abs(scale * pval)):
                raise NumericalError("verification failed at a fresh sample point")
    return poly


def verify_height_bound(p: MultihomogeneousIntPolynomial, family: SupportFamily) -> tuple[float, float, bool]:
    report = analyze(family)
    height = math.log(max(abs(c) for c in p.terms.values()))
    bound = sum(d * math.log(len(a)) for d, a in zip(report.degrees, family.supports))
    return height, bound, height <= bound + 1e-12
