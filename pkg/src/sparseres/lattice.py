"""Exact integer linear algebra for sublattices of Z^n.

Matrices are plain nested lists (or tuples) of Python ints, so every
computation is arbitrary precision.  Vectors are tuples of ints.

Conventions:
  * Hermite normal form is row-style: row operations only, the nonzero
    rows come first in echelon form with positive pivots, and the
    entries above each pivot are reduced to ``[0, pivot)``.
  * A sublattice is given by generator rows; the rank-0 lattice has no
    generators and only records its ambient rank.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

IntVector = tuple[int, ...]
IntMatrix = list[list[int]]


class LatticeError(ValueError):
    """Raised on invalid lattice input (zero direction, point not in lattice, ...)."""


def _identity(k: int) -> IntMatrix:
    return [[int(i == j) for j in range(k)] for i in range(k)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> IntMatrix:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][t] * b[t][j] for t in range(inner)) for j in range(cols)] for i in range(len(a))]


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    k = len(m)
    if k == 0:
        return 1
    a = [list(row) for row in m]
    sign = 1
    prev = 1
    for c in range(k - 1):
        if a[c][c] == 0:
            swap = next((r for r in range(c + 1, k) if a[r][c] != 0), None)
            if swap is None:
                return 0
            a[c], a[swap] = a[swap], a[c]
            sign = -sign
        for r in range(c + 1, k):
            for j in range(c + 1, k):
                a[r][j] = (a[r][j] * a[c][c] - a[r][c] * a[c][j]) // prev
        prev = a[c][c]
    return sign * a[k - 1][k - 1]


def rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a list of integer row vectors."""
    a = [[Fraction(x) for x in row] for row in rows if any(row)]
    if not a:
        return 0
    n = len(a[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, len(a)):
            if a[i][c] != 0:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    return r


def hermite_normal_form(m: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix]:
    """Row Hermite normal form ``h`` and unimodular ``u`` with ``h = u @ m``."""
    h = [list(map(int, row)) for row in m]
    k = len(h)
    n = len(h[0]) if k else 0
    u = _identity(k)
    r = 0
    for c in range(n):
        if r == k:
            break
        while True:
            nz = [i for i in range(r, k) if h[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(h[i][c]))
            if piv != r:
                h[r], h[piv] = h[piv], h[r]
                u[r], u[piv] = u[piv], u[r]
            clean = True
            for i in range(r + 1, k):
                if h[i][c]:
                    q = h[i][c] // h[r][c]
                    h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if h[i][c]:
                        clean = False
            if clean:
                break
        if h[r][c] == 0:
            continue
        if h[r][c] < 0:
            h[r] = [-x for x in h[r]]
            u[r] = [-x for x in u[r]]
        for i in range(r):
            q = h[i][c] // h[r][c]
            if q:
                h[i] = [x - q * y for x, y in zip(h[i], h[r])]
                u[i] = [x - q * y for x, y in zip(u[i], u[r])]
        r += 1
    return h, u


@dataclass(frozen=True)
class SnfDecomposition:
    diagonal: tuple[int, ...]
    left_unimodular: IntMatrix
    right_unimodular: IntMatrix


def smith_normal_form(m: Sequence[Sequence[int]]) -> SnfDecomposition:
    """Smith normal form: ``left @ m @ right`` is diagonal with d_i | d_{i+1}."""
    a = [list(map(int, row)) for row in m]
    k = len(a)
    n = len(a[0]) if k else 0
    left = _identity(k)
    right = _identity(n)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in right:
            row[i], row[j] = row[j], row[i]

    for t in range(min(k, n)):
        entries = [(abs(a[i][j]), i, j) for i in range(t, k) for j in range(t, n) if a[i][j]]
        if not entries:
            break
        _, i0, j0 = min(entries)
        if i0 != t:
            swap_rows(t, i0)
        if j0 != t:
            swap_cols(t, j0)
        while True:
            cand = [(abs(a[i][t]), i, t) for i in range(t, k) if a[i][t]]
            cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
            _, pi, pj = min(cand)
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = a[t][t]
            done = True
            for i in range(t + 1, k):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    left[i] = [x - q * y for x, y in zip(left[i], left[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                    for row in right:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                continue
            bad = next(
                (i for i in range(t + 1, k) for j in range(t + 1, n) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
            left[t] = [x + y for x, y in zip(left[t], left[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            left[t] = [-x for x in left[t]]
    diagonal = tuple(a[i][i] for i in range(min(k, n)))
    return SnfDecomposition(diagonal, left, right)


def kernel(rows: Sequence[Sequence[int]], n: int) -> list[IntVector]:
    """HNF-canonical basis of the saturated lattice {x in Z^n : r.x = 0 for all rows r}."""
    rows = [list(r) for r in rows]
    k = len(rows)
    if k == 0:
        return [tuple(r) for r in _identity(n)]
    # row-reduce [rows^T | I_n]; rows with vanishing left block span the kernel
    aug = [[rows[i][j] for i in range(k)] + e for j, e in enumerate(_identity(n))]
    h, _ = hermite_normal_form(aug)
    ker = [row[k:] for row in h if not any(row[:k])]
    ker_h, _ = hermite_normal_form(ker)
    return [tuple(r) for r in ker_h if any(r)]


def primitive(v: Sequence[int]) -> IntVector:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        raise LatticeError("zero direction")
    return tuple(x // g for x in v)


def is_primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))


@dataclass(frozen=True)
class LatticeBasis:
    """A sublattice of Z^ambient_rank spanned by ``generators`` (possibly dependent)."""

    ambient_rank: int
    generators: tuple[IntVector, ...] = ()
    rank: int = field(init=False, compare=False)

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        for g in gens:
            if len(g) != self.ambient_rank:
                raise LatticeError(f"generator {g} does not have length {self.ambient_rank}")
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "rank", rank(gens))

    @classmethod
    def zero(cls, n: int) -> "LatticeBasis":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "LatticeBasis":
        return cls(n, tuple(tuple(r) for r in _identity(n)))

    def hnf(self) -> tuple[IntVector, ...]:
        """Canonical basis: the nonzero rows of the Hermite normal form."""
        if not self.generators:
            return ()
        h, _ = hermite_normal_form(self.generators)
        return tuple(tuple(r) for r in h if any(r))

    def basis(self) -> tuple[IntVector, ...]:
        """Independent generators: the given ones when already independent, else the HNF rows."""
        nonzero = tuple(g for g in self.generators if any(g))
        if len(nonzero) == self.rank:
            return nonzero
        return self.hnf()

    def same_lattice(self, other: "LatticeBasis") -> bool:
        return self.ambient_rank == other.ambient_rank and self.hnf() == other.hnf()

    def __contains__(self, v) -> bool:
        try:
            coordinates_in_basis([v], self)
        except LatticeError:
            return False
        return True


def sum_lattices(lattices: Sequence[LatticeBasis], n: int) -> LatticeBasis:
    gens = [g for lat in lattices for g in lat.generators]
    return LatticeBasis(n, tuple(gens))


def saturation(lat: LatticeBasis) -> LatticeBasis:
    """Basis of (L tensor Q) cap Z^n, as the double orthogonal of L."""
    n = lat.ambient_rank
    if lat.rank == 0:
        return LatticeBasis.zero(n)
    perp = kernel(lat.generators, n)
    return LatticeBasis(n, tuple(kernel(perp, n)))


def lattice_index(lat: LatticeBasis) -> int:
    """The index [L^sat : L], i.e. the product of the nonzero invariant factors."""
    if lat.rank == 0:
        return 1
    out = 1
    for d in smith_normal_form(lat.generators).diagonal:
        if d:
            out *= d
    return out


def orthogonal_basis(v: Sequence[int]) -> LatticeBasis:
    """Saturated basis of the rank n-1 lattice {a in Z^n : <a, v> = 0}."""
    v = tuple(v)
    if not any(v):
        raise LatticeError("zero direction")
    if not is_primitive(v):
        raise LatticeError(f"direction {v} is not primitive")
    return LatticeBasis(len(v), tuple(kernel([v], len(v))))


def coordinates_in_basis(points: Sequence[Sequence[int]], basis: LatticeBasis) -> list[IntVector]:
    """Integer coordinates of each point with respect to ``basis.basis()``."""
    b = basis.basis()
    r = len(b)
    n = basis.ambient_rank
    out = []
    for p in points:
        p = tuple(p)
        if len(p) != n:
            raise LatticeError(f"point {p} does not have length {n}")
        # solve x . b = p, i.e. b^T x = p^T, by elimination over Q
        aug = [[Fraction(b[i][j]) for i in range(r)] + [Fraction(p[j])] for j in range(n)]
        row = 0
        pivots = []
        for c in range(r):
            piv = next((i for i in range(row, n) if aug[i][c] != 0), None)
            if piv is None:
                continue
            aug[row], aug[piv] = aug[piv], aug[row]
            pv = aug[row][c]
            aug[row] = [x / pv for x in aug[row]]
            for i in range(n):
                if i != row and aug[i][c] != 0:
                    f = aug[i][c]
                    aug[i] = [x - f * y for x, y in zip(aug[i], aug[row])]
            pivots.append(c)
            row += 1
        if any(aug[i][r] != 0 for i in range(row, n)):
            raise LatticeError(f"point {p} not in lattice")
        x = [Fraction(0)] * r
        for i, c in enumerate(pivots):
            x[c] = aug[i][r]
        if any(xi.denominator != 1 for xi in x):
            raise LatticeError(f"point {p} not in lattice")
        out.append(tuple(int(xi) for xi in x))
    return out


def from_coordinates(coords: Sequence[Sequence[int]], basis: LatticeBasis) -> list[IntVector]:
    b = basis.basis()
    n = basis.ambient_rank
    return [tuple(sum(c[i] * b[i][j] for i in range(len(b))) for j in range(n)) for c in coords]


def quotient_projection(lsat: LatticeBasis) -> IntMatrix:
    """Integer matrix of Z^n -> Z^n / L^sat (rank n - rank L) with kernel exactly L^sat."""
    if lattice_index(lsat) != 1:
        raise LatticeError("lattice is not saturated")
    n = lsat.ambient_rank
    if lsat.rank == 0:
        return [list(r) for r in _identity(n)]
    return [list(r) for r in kernel(lsat.generators, n)]


def apply(matrix: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector:
    return tuple(dot(row, v) for row in matrix)
