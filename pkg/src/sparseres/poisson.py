"""Evaluation of sparse resultants through the Poisson product formula.

    Res(f_0, ..., f_n) = prod_v Res_v(f_{1,v}, ..., f_{n,v})^(-h_{A_0}(v)) * prod_xi f_0(xi)^m_xi

The first product runs over the candidate directions of the tail
(A_1, ..., A_n) and recurses into rank n-1; the second runs over the torus
roots of f_1 = ... = f_n = 0.  All values are defined up to one global sign.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional, Sequence

import mpmath
from mpmath import mp

from .errors import HypothesisError, InputError, NumericalError
from .lattice import IntVector, LatticeBasis, coordinates_in_basis, dot
from .laurent import (
    FLOAT_COMPLEX,
    LaurentPolynomial,
    change_coordinates,
    evaluate,
    specialize,
)
from .numeric import DEFAULT, NumericOptions, to_mpc
from .solver import RootList, solve_square_system, solve_univariate
from .supports import (
    SupportFamily,
    analyze,
    directional_family,
    nontrivial_directions,
    support_function,
)


@dataclass(frozen=True)
class ResultantValue:
    value: Any
    sign_ambiguous: bool = True
    precision: int = 53
    trace: tuple = field(default=(), compare=False)

    def as_complex(self) -> mpmath.mpc:
        return to_mpc(self.value)

    @property
    def magnitude(self) -> mpmath.mpf:
        return abs(to_mpc(self.value))


def _is_exact_system(polys) -> bool:
    return all(f.domain != FLOAT_COMPLEX for f in polys)


def _check_family(family: SupportFamily, polys: Sequence[LaurentPolynomial]) -> None:
    if len(polys) != family.n + 1:
        raise InputError(f"expected {family.n + 1} polynomials, got {len(polys)}")
    for i, (a, f) in enumerate(zip(family.supports, polys)):
        if f.n != family.n:
            raise InputError(f"polynomial {i} has {f.n} variables, expected {family.n}")
        extra = set(f.terms) - set(a)
        if extra:
            raise InputError(f"support of f_{i} is not contained in A_{i}: {sorted(extra)}")


def _field_det(rows):
    """Determinant over a field (Fraction or Gaussian rationals) by elimination."""
    m = [list(r) for r in rows]
    size = len(m)
    det = Fraction(1)
    for c in range(size):
        piv = next((r for r in range(c, size) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det = det * m[c][c]
        inv = 1 / m[c][c] if not isinstance(m[c][c], Fraction) else Fraction(1) / m[c][c]
        for r in range(c + 1, size):
            if m[r][c]:
                factor = m[r][c] * inv
                m[r] = [x - factor * y for x, y in zip(m[r], m[c])]
    return det


def _mat_mul(a, b):
    size = len(a)
    return [[sum((a[i][k] * b[k][j] for k in range(size)), Fraction(0)) for j in range(size)] for i in range(size)]


def _exact_norm(f0: LaurentPolynomial, g: Sequence) -> Any:
    """prod f0(xi) over the roots xi of g_0 + g_1 t + ... + g_D t^D (g_0, g_D nonzero)."""
    deg = len(g) - 1
    if deg == 0:
        return Fraction(1)
    zero = Fraction(0)
    # multiplication by t and by 1/t on the basis 1, t, ..., t^(D-1); columns are images
    mul_t = [[zero] * deg for _ in range(deg)]
    mul_inv = [[zero] * deg for _ in range(deg)]
    for j in range(deg):
        if j + 1 < deg:
            mul_t[j + 1][j] = Fraction(1)
        else:
            for i in range(deg):
                mul_t[i][j] = -g[i] / g[deg]
        if j >= 1:
            mul_inv[j - 1][j] = Fraction(1)
        else:
            for i in range(deg):
                mul_inv[i][j] = -g[i + 1] / g[0]
    ident = [[Fraction(int(i == j)) for j in range(deg)] for i in range(deg)]
    total = [[zero] * deg for _ in range(deg)]
    for (e,), c in f0.terms.items():
        power = ident
        base = mul_t if e > 0 else mul_inv
        for _ in range(abs(e)):
            power = _mat_mul(power, base)
        total = [[x + c * y for x, y in zip(r1, r2)] for r1, r2 in zip(total, power)]
    return _field_det(total)


def _exact_rank_one(family: SupportFamily, polys) -> tuple[Any, tuple]:
    a0, a1 = family.supports
    f0, f1 = polys
    lo = min(a1)[0]
    hi = max(a1)[0]
    c_lo = f1.coefficient((lo,))
    c_hi = f1.coefficient((hi,))
    for v, c in (((1,), c_lo), ((-1,), c_hi)):
        if not c:
            raise HypothesisError(f"Poisson hypothesis fails: directional resultant in direction {v} vanishes")
    e_lo = -min(a0)[0]
    e_hi = max(a0)[0]
    g = [f1.coefficient((lo + k,)) for k in range(hi - lo + 1)]
    norm = _exact_norm(f0, g)
    value = c_lo**e_lo * c_hi**e_hi * norm
    trace = (
        {"direction": (-1,), "exponent": e_hi, "value": c_hi},
        {"direction": (1,), "exponent": e_lo, "value": c_lo},
        {"roots": hi - lo, "exact": True},
    )
    return value, trace


def _norm1(f: LaurentPolynomial) -> mpmath.mpf:
    return mpmath.fsum(abs(to_mpc(c)) for c in f.terms.values())


def _reduced_polys(df, polys: Sequence[LaurentPolynomial]) -> list[LaurentPolynomial]:
    out = []
    m = len(df.direction) - 1
    for face, b, f in zip(df.faces, df.translations, polys):
        face_set = set(face)
        exps = [a for a in f.terms if a in face_set]
        shifted = [tuple(x - y for x, y in zip(a, b)) for a in exps]
        coords = coordinates_in_basis(shifted, df.basis) if shifted else []
        out.append(LaurentPolynomial(m, {c: f.terms[a] for c, a in zip(coords, exps)}))
    return out


def eval_directional_resultant(
    tail: Sequence[Sequence[Sequence[int]]],
    v: Sequence[int],
    polys: Sequence[LaurentPolynomial],
    opts: NumericOptions = DEFAULT,
    basis: Optional[LatticeBasis] = None,
    translations: Optional[Sequence[Sequence[int]]] = None,
) -> ResultantValue:
    df = directional_family(tail, v, translations=translations, basis=basis)
    reduced = _reduced_polys(df, polys)
    return eval_sparse_resultant(df.reduced_supports, reduced, opts)


def directional_values(
    tail: Sequence[Sequence[Sequence[int]]],
    polys: Sequence[LaurentPolynomial],
    opts: NumericOptions = DEFAULT,
) -> dict[IntVector, tuple[Any, bool]]:
    """Directional resultant for every candidate direction, flagged when it vanishes.

    A value is flagged when |value| <= tol * prod_i ||f_i||_1^deg_i, the degrees
    being those of the directional family.
    """
    out = {}
    norms = [_norm1(f) for f in polys]
    for v in nontrivial_directions(tail):
        df = directional_family(tail, v)
        report = analyze(df.reduced_supports)
        if report.resultant_trivial:
            out[v] = (Fraction(1), False)
            continue
        try:
            val = eval_sparse_resultant(df.reduced_supports, _reduced_polys(df, polys), opts).value
        except HypothesisError:
            out[v] = (Fraction(0), True)
            continue
        scale = mpmath.mpf(1)
        for nrm, d in zip(norms, report.degrees):
            scale *= nrm**d
        out[v] = (val, bool(abs(to_mpc(val)) <= opts.tolerance * scale))
    return out


def product_over_roots(f0: LaurentPolynomial, roots: RootList):
    total = mpmath.mpc(1)
    for point, m in roots.roots:
        total *= to_mpc(evaluate(f0, point)) ** m
    return total


def eval_sparse_resultant(
    family: SupportFamily,
    polys: Sequence[LaurentPolynomial],
    opts: NumericOptions = DEFAULT,
) -> ResultantValue:
    polys = list(polys)
    _check_family(family, polys)
    report = analyze(family)
    exact = _is_exact_system(polys)
    if report.resultant_trivial:
        one = Fraction(1) if exact else mpmath.mpc(1)
        return ResultantValue(one, precision=opts.precision, trace=({"trivial": True},))
    if family.n == 0:
        c = polys[0].coefficient(())
        return ResultantValue(c if exact else to_mpc(c), precision=opts.precision, trace=({"base": True},))
    if exact and family.n == 1:
        value, trace = _exact_rank_one(family, polys)
        return ResultantValue(value, precision=opts.precision, trace=trace)
    with mp.workprec(opts.work_prec):
        tail = family.tail
        tail_polys = polys[1:]
        a0 = family.supports[0]
        value = mpmath.mpc(1)
        trace = []
        for v, (val, flagged) in directional_values(tail, tail_polys, opts).items():
            if flagged:
                raise HypothesisError(f"Poisson hypothesis fails: directional resultant in direction {v} vanishes")
            e = -support_function(a0, v)
            trace.append({"direction": v, "exponent": e, "value": val})
            if e:
                value *= to_mpc(val) ** e
        roots = solve_square_system(tail_polys, opts, supports=tail, check=False)
        value *= product_over_roots(polys[0], roots)
        trace.append({"roots": len(roots.roots), "multiplicity": roots.total_multiplicity})
        if exact and abs(value.imag) > math.sqrt(opts.tolerance) * max(abs(value), mpmath.mpf(1e-300)):
            raise NumericalError("resultant of rational polynomials came out non-real; increase precision")
        return ResultantValue(+value, precision=opts.precision, trace=tuple(trace))


def product_of_roots_monomial(
    tail: Sequence[Sequence[Sequence[int]]],
    polys: Sequence[LaurentPolynomial],
    a: Sequence[int],
    opts: NumericOptions = DEFAULT,
):
    """prod_v Res_v^<a, v>, equal up to sign to prod_xi xi^(a m_xi)."""
    with mp.workprec(opts.work_prec):
        total = mpmath.mpc(1)
        for v, (val, flagged) in directional_values(tail, polys, opts).items():
            if flagged:
                raise HypothesisError(f"hypothesis fails: directional resultant in direction {v} vanishes")
            e = dot(a, v)
            if e:
                total *= to_mpc(val) ** e
        return total


def _permute_last(supports, polys, k):
    """Swap coordinates k and n so that the hidden variable is the last one."""
    n = len(polys)
    perm = list(range(n))
    perm[k - 1], perm[n - 1] = perm[n - 1], perm[k - 1]
    mat = [[int(perm[i] == j) for j in range(n)] for i in range(n)]
    sups = [tuple(tuple(p[perm[i]] for i in range(n)) for p in a) for a in supports]
    return sups, [change_coordinates(f, mat) for f in polys]


def hidden_variable_resultant(
    supports: Sequence[Sequence[Sequence[int]]],
    polys: Sequence[LaurentPolynomial],
    opts: NumericOptions = DEFAULT,
    hide_index: Optional[int] = None,
    check: bool = True,
) -> LaurentPolynomial:
    """Res^{t_k}(f_1, ..., f_n) as a univariate Laurent polynomial, up to a scalar.

    Sampled at roots of unity scaled by a random radius in [0.5, 2] with 25%
    oversampling; the extra Fourier coefficients must vanish.
    """
    n = len(polys)
    k = n if hide_index is None else hide_index
    if not 1 <= k <= n:
        raise InputError(f"hide index {k} out of range 1..{n}")
    supports = [tuple(tuple(p) for p in a) for a in supports]
    if k != n:
        supports, polys = _permute_last(supports, polys, k)
    if n == 1:
        return polys[0]
    with mp.workprec(opts.work_prec):
        if check:
            for v, (_, flagged) in directional_values(supports, polys, opts).items():
                if flagged:
                    raise HypothesisError(f"hypothesis fails: directional resultant in direction {v} vanishes")
        projected = SupportFamily(n - 1, tuple(tuple(sorted(set(p[:-1] for p in a))) for a in supports))
        report = analyze(projected)
        if report.resultant_trivial:
            return LaurentPolynomial.constant(1, mpmath.mpc(1))
        lo = [min(p[-1] for p in a) for a in supports]
        hi = [max(p[-1] for p in a) for a in supports]
        e_lo = sum(d * x for d, x in zip(report.degrees, lo))
        width = sum(d * (y - x) for d, x, y in zip(report.degrees, lo, hi))
        count = width + 1 + math.ceil((width + 1) / 4)
        mpolys = [f.to_mpc() for f in polys]
        rng = random.Random(opts.seed)
        last_error: Exception | None = None
        for _ in range(4):
            radius = mpmath.mpf(rng.uniform(0.5, 2.0))
            phase = mpmath.mpf(rng.random())
            try:
                scaled = []
                for j in range(count):
                    unit = mpmath.expjpi(2 * (j + phase) / count)
                    t = radius * unit
                    spec = [specialize(f, n, t) for f in mpolys]
                    val = eval_sparse_resultant(projected, spec, opts).as_complex()
                    scaled.append((val * t ** (-e_lo), unit))
            except HypothesisError as exc:
                last_error = exc
                continue
            coeffs = []
            for deg in range(count):
                s = mpmath.fsum(p * u ** (-deg) for p, u in scaled) / count
                coeffs.append(s)
            top = max(abs(c) for c in coeffs[: width + 1])
            alias = max((abs(c) for c in coeffs[width + 1 :]), default=mpmath.mpf(0))
            if top == 0:
                raise NumericalError("hidden-variable resultant vanishes identically; hypothesis fails")
            if alias > mpmath.sqrt(opts.tolerance) * top:
                raise NumericalError(
                    "hidden-variable interpolation is inconsistent (aliasing "
                    f"{mpmath.nstr(alias / top, 3)}); increase precision/samples"
                )
            floor = max(100 * alias, top * mpmath.mpf(2) ** (-0.6 * mp.prec))
            terms = {
                (e_lo + deg,): coeffs[deg] / radius**deg
                for deg in range(width + 1)
                if abs(coeffs[deg]) > floor
            }
            return LaurentPolynomial(1, terms)
        raise HypothesisError(f"hidden forms hit a vanishing directional resultant at every sample: {last_error}")


def addition_formula_check(
    a0: Sequence[Sequence[int]],
    a0p: Sequence[Sequence[int]],
    tail: Sequence[Sequence[Sequence[int]]],
    f0: LaurentPolynomial,
    f0p: LaurentPolynomial,
    tail_polys: Sequence[LaurentPolynomial],
    opts: NumericOptions = DEFAULT,
) -> tuple[Any, Any]:
    """(Res(f_0 f_0', f_1, ...), Res(f_0, f_1, ...) * Res(f_0', f_1, ...)) for the support A_0 + A_0'."""
    n = len(tail)
    summed = tuple(sorted(set(tuple(x + y for x, y in zip(p, q)) for p in a0 for q in a0p)))
    tail = tuple(tuple(tuple(p) for p in a) for a in tail)
    fam = SupportFamily(n, (summed,) + tail)
    fam1 = SupportFamily(n, (tuple(map(tuple, a0)),) + tail)
    fam2 = SupportFamily(n, (tuple(map(tuple, a0p)),) + tail)
    tail_polys = list(tail_polys)
    with mp.workprec(opts.work_prec):
        lhs = eval_sparse_resultant(fam, [f0 * f0p] + tail_polys, opts).value
        r1 = eval_sparse_resultant(fam1, [f0] + tail_polys, opts).value
        r2 = eval_sparse_resultant(fam2, [f0p] + tail_polys, opts).value
        rhs = r1 * r2
    return lhs, rhs
