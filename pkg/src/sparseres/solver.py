"""Numeric root finding for square Laurent systems on the torus.

Univariate equations are solved by Aberth iteration.  For n >= 2 the last
variable is hidden: the nonzero roots of the hidden-variable resultant are
the last coordinates of the solutions, counted with multiplicity, and the
remaining coordinates are found by back substitution into n-1 of the
specialized equations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import mpmath
from mpmath import mp

from .errors import HypothesisError, InputError, NumericalError
from .lattice import IntVector
from .laurent import LaurentPolynomial, TorusPoint, factor_out_monomial, specialize, support_of
from .numeric import DEFAULT, NumericOptions, to_mpc
from .polytopes import convex_hull, mixed_volume


@dataclass(frozen=True)
class RootList:
    roots: tuple[tuple[TorusPoint, int], ...]
    residual: float

    @property
    def total_multiplicity(self) -> int:
        return sum(m for _, m in self.roots)

    def points(self) -> list[TorusPoint]:
        return [p for p, _ in self.roots]

    def __len__(self) -> int:
        return len(self.roots)


EMPTY = RootList((), 0.0)


def _sort_key(point: Sequence):
    key = []
    for z in point:
        key += [float(abs(z)), float(mpmath.arg(z))]
    return tuple(key)


def _cluster(values: Sequence, tol: float) -> list[list[int]]:
    """Single-linkage clusters under the relative distance |x - y| <= tol * max(|x|, |y|)."""
    parent = list(range(len(values)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            a, b = values[i], values[j]
            dist = max(abs(x - y) for x, y in zip(a, b))
            size = max(max(abs(x) for x in a), max(abs(y) for y in b))
            if dist <= tol * size:
                parent[find(i)] = find(j)
    groups: dict[int, list[int]] = {}
    for i in range(len(values)):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


def _horner(coeffs, z):
    p = coeffs[-1]
    dp = mpmath.mpc(0)
    bound = abs(coeffs[-1])
    az = abs(z)
    for c in reversed(coeffs[:-1]):
        dp = dp * z + p
        p = p * z + c
        bound = bound * az + abs(c)
    return p, dp, bound


def polynomial_roots(coeffs: Sequence, opts: NumericOptions = DEFAULT) -> list:
    """All roots (with repetition) of c_0 + c_1 z + ... + c_D z^D, c_0 and c_D nonzero."""
    coeffs = [to_mpc(c) for c in coeffs]
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    if deg == 1:
        return [-coeffs[0] / coeffs[1]]
    eps = mpmath.mpf(2) ** (-mp.prec)
    radius = (abs(coeffs[0]) / abs(coeffs[-1])) ** (mpmath.mpf(1) / deg)
    z = [radius * mpmath.expjpi(mpmath.mpf(2 * k) / deg + mpmath.mpf(1) / (2 * deg) + mpmath.mpf("0.1")) for k in range(deg)]
    done = [False] * deg
    for _ in range(opts.max_iterations):
        for k in range(deg):
            if done[k]:
                continue
            p, dp, bound = _horner(coeffs, z[k])
            if abs(p) <= 8 * deg * eps * bound:
                done[k] = True
                continue
            if dp == 0:
                z[k] = z[k] * (1 + mpmath.sqrt(eps))
                continue
            ratio = p / dp
            s = mpmath.fsum(1 / (z[k] - z[j]) for j in range(deg) if j != k and z[j] != z[k])
            z[k] -= ratio / (1 - ratio * s)
        if all(done):
            return z
    worst = max(abs(_horner(coeffs, x)[0]) / _horner(coeffs, x)[2] for x in z)
    raise NumericalError(
        f"Aberth iteration did not converge in {opts.max_iterations} steps "
        f"(degree {deg}, worst backward error {mpmath.nstr(worst, 3)})"
    )


def _refine_cluster(coeffs, x, m, steps=4):
    """Newton on the (m-1)-th derivative, which has a simple root at an m-fold root."""
    deriv = list(coeffs)
    for _ in range(m - 1):
        deriv = [k * c for k, c in enumerate(deriv)][1:]
    if len(deriv) < 2:
        return x
    for _ in range(steps):
        p, dp, _ = _horner(deriv, x)
        if dp == 0:
            break
        x = x - p / dp
    return x


def _is_multiple_root(coeffs, x, m, tol) -> bool:
    """p, p', ..., p^(m-1) all vanish at x relative to their term bounds."""
    deriv = list(coeffs)
    for _ in range(m):
        if not deriv:
            return False
        p, _, bound = _horner(deriv, x)
        if abs(p) > tol * bound:
            return False
        deriv = [k * c for k, c in enumerate(deriv)][1:]
    return True


def _merge_clusters(coeffs, raw, opts: NumericOptions) -> list[list[int]]:
    """Clusters of Aberth roots, merging nearby clusters that form one multiple root.

    An m-fold root is perturbed by about eps^(1/m), which can exceed the
    clustering tolerance; clusters within the square root of that tolerance
    are merged when the derivative test confirms a root of the combined
    multiplicity.
    """
    groups = _cluster([(x,) for x in raw], opts.cluster_tol)
    if len(groups) < 2:
        return groups
    centers = [(mpmath.fsum(raw[i] for i in g) / len(g),) for g in groups]
    merged = []
    for family in _cluster(centers, opts.cluster_tol**0.5):
        if len(family) == 1:
            merged.append(groups[family[0]])
            continue
        members = [i for j in family for i in groups[j]]
        m = len(members)
        x = _refine_cluster(coeffs, mpmath.fsum(raw[i] for i in members) / m, m)
        if _is_multiple_root(coeffs, x, m, mpmath.sqrt(opts.tolerance)):
            merged.append(members)
        else:
            merged.extend(groups[j] for j in family)
    return merged


def _univariate_residual(f: LaurentPolynomial, z) -> mpmath.mpf:
    num = mpmath.mpc(0)
    den = mpmath.mpf(0)
    for (e,), c in f.terms.items():
        term = to_mpc(c) * z**e
        num += term
        den += abs(term)
    return abs(num) / den if den else mpmath.mpf(0)


def solve_univariate(f: LaurentPolynomial, opts: NumericOptions = DEFAULT) -> RootList:
    if f.n != 1:
        raise InputError("solve_univariate needs a polynomial in one variable")
    if len(f.terms) < 2:
        return EMPTY
    with mp.workprec(opts.work_prec):
        b, g = factor_out_monomial(f)
        deg = max(e for (e,) in g.terms)
        coeffs = [to_mpc(g.coefficient((k,))) for k in range(deg + 1)]
        raw = polynomial_roots(coeffs, opts)
        roots = []
        for group in _merge_clusters(coeffs, raw, opts):
            if len(group) == 1:
                x = raw[group[0]]
                for _ in range(2):
                    p, dp, _ = _horner(coeffs, x)
                    if dp == 0:
                        break
                    x = x - p / dp
            else:
                x = _refine_cluster(coeffs, mpmath.fsum(raw[i] for i in group) / len(group), len(group))
            roots.append(((x,), len(group)))
        roots.sort(key=lambda r: _sort_key(r[0]))
        residual = max((_univariate_residual(f, x[0]) for x, _ in roots), default=mpmath.mpf(0))
        return RootList(tuple((TorusPoint(x), m) for x, m in roots), float(residual))


def bernstein_number(supports: Sequence[Sequence[Sequence[int]]]) -> int:
    supports = [list(a) for a in supports]
    if not supports:
        return 1
    n = len(supports[0][0])
    if len(supports) != n:
        raise InputError(f"expected {n} supports in rank {n}, got {len(supports)}")
    return mixed_volume([convex_hull(a) for a in supports], ambient_rank=n)


def directional_nonvanishing_check(
    polys: Sequence[LaurentPolynomial],
    opts: NumericOptions = DEFAULT,
    supports: Optional[Sequence] = None,
) -> list[tuple[IntVector, object, bool]]:
    """(v, directional resultant, flagged) for every candidate direction of the system."""
    from .poisson import directional_values

    supports = _supports(polys, supports)
    return [(v, val, flag) for v, (val, flag) in directional_values(supports, polys, opts).items()]


def _supports(polys, supports):
    if supports is None:
        supports = []
        for f in polys:
            if f.is_zero():
                raise InputError("zero polynomial in the system")
            supports.append(support_of(f))
    return [tuple(tuple(p) for p in a) for a in supports]


def _residual_terms(f: LaurentPolynomial, point) -> tuple:
    num = mpmath.mpc(0)
    den = mpmath.mpf(0)
    for a, c in f.terms.items():
        m = to_mpc(c)
        for x, k in zip(point, a):
            if k:
                m *= x**k
        num += m
        den += abs(m)
    return abs(num), den


def normalized_residual(polys: Sequence[LaurentPolynomial], point) -> mpmath.mpf:
    """max_i |f_i(x)| / sum_a |c_a x^a|."""
    worst = mpmath.mpf(0)
    for f in polys:
        num, den = _residual_terms(f, point)
        if den:
            worst = max(worst, num / den)
    return worst


def _newton_polish(polys, point, steps=3):
    n = len(point)
    x = list(point)
    best = normalized_residual(polys, x)
    for _ in range(steps):
        vals = []
        jac = []
        for f in polys:
            val = mpmath.mpc(0)
            row = [mpmath.mpc(0)] * n
            for a, c in f.terms.items():
                m = to_mpc(c)
                for xk, k in zip(x, a):
                    if k:
                        m *= xk**k
                val += m
                for k in range(n):
                    if a[k]:
                        row[k] += m * a[k] / x[k]
            vals.append(val)
            jac.append(row)
        try:
            step = mpmath.lu_solve(mpmath.matrix(jac), mpmath.matrix(vals))
        except ZeroDivisionError:
            break
        trial = [x[k] - step[k] for k in range(n)]
        if any(t == 0 for t in trial):
            break
        res = normalized_residual(polys, trial)
        if res > best:
            break
        x, best = trial, res
    return x


def _back_substitute(spec, orig_scale, m, opts, polys, tau):
    """Points of the (n-1)-variable specialized system; returns [(point, multiplicity)].

    Candidates are accepted by their residual in the original system at
    (point, tau): a specialized equation that nearly vanishes identically
    carries no information about the point.
    """
    tol = opts.tolerance
    live = [g for g, s in zip(spec, orig_scale) if g.norm1() > tol * s]
    k = len(spec) - 1
    if len(live) < k:
        raise NumericalError("specialized system is underdetermined; increase precision")

    def spread(g):
        mags = [abs(to_mpc(c)) for c in g.terms.values()]
        return max(mags) / min(mags)

    order = sorted(range(len(live)), key=lambda i: -spread(live[i]))
    threshold = tol ** (1.0 / (m + 1))
    choices = [None] if len(live) == k else order
    for drop in choices:
        sub = [g for i, g in enumerate(live) if i != drop][:k]
        try:
            cands = solve_univariate(sub[0], opts) if k == 1 else solve_square_system(sub, opts)
        except (HypothesisError, NumericalError):
            continue
        accepted = [
            (p.coordinates, mult)
            for p, mult in cands.roots
            if normalized_residual(polys, list(p.coordinates) + [tau]) <= threshold
        ]
        if not accepted:
            continue
        if len(accepted) == 1:
            return [(accepted[0][0], m)]
        if sum(mult for _, mult in accepted) == m:
            return accepted
        raise NumericalError(
            f"{len(accepted)} back-substituted points share one hidden coordinate of multiplicity {m}; "
            "increase precision"
        )
    raise NumericalError("back substitution found no point for a root of the hidden-variable resultant")


def solve_square_system(
    polys: Sequence[LaurentPolynomial],
    opts: NumericOptions = DEFAULT,
    supports: Optional[Sequence] = None,
    check: bool = True,
) -> RootList:
    """Torus roots of f_1 = ... = f_n = 0 with multiplicities.

    ``supports`` defaults to the supports of the polynomials.  With
    ``check`` the directional nonvanishing hypothesis is verified first.
    """
    from .poisson import directional_values, hidden_variable_resultant

    n = len(polys)
    if any(f.n != n for f in polys):
        raise InputError("system is not square")
    if n == 0:
        return RootList(((TorusPoint(()), 1),), 0.0)
    supports = _supports(polys, supports)
    if n == 1:
        return solve_univariate(polys[0], opts)
    with mp.workprec(opts.work_prec):
        if check:
            for v, (val, flagged) in directional_values(supports, polys, opts).items():
                if flagged:
                    raise HypothesisError(
                        f"Bernstein hypothesis fails: directional resultant in direction {v} vanishes"
                    )
        total = bernstein_number(supports)
        if total == 0:
            return EMPTY
        hidden = hidden_variable_resultant(supports, polys, opts, check=False)
        troots = solve_univariate(hidden, opts)
        if troots.total_multiplicity != total:
            raise NumericalError(
                f"hidden-variable resultant has {troots.total_multiplicity} torus roots, "
                f"expected the Bernstein number {total}; increase precision"
            )
        found = []
        for tpt, m in troots.roots:
            tau = tpt[0]
            spec = [specialize(f.to_mpc(), n, tau) for f in polys]
            scale = [
                mpmath.fsum(abs(to_mpc(c)) * abs(tau) ** a[-1] for a, c in f.terms.items()) for f in polys
            ]
            for point, mult in _back_substitute(spec, scale, m, opts, polys, tau):
                full = list(point) + [tau]
                if mult == 1:
                    full = _newton_polish(polys, full)
                found.append((tuple(full), mult))
        found.sort(key=lambda r: _sort_key(r[0]))
        residual = max((normalized_residual(polys, p) for p, _ in found), default=mpmath.mpf(0))
        if residual > opts.tolerance:
            raise NumericalError(f"root residual {mpmath.nstr(residual, 3)} above tolerance; increase precision")
        return RootList(tuple((TorusPoint(p), m) for p, m in found), float(residual))
