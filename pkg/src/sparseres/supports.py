"""Combinatorics of a support family A = (A_0, ..., A_n) in Z^n.

Everything here is exact: ranks of difference lattices, essential
subfamilies, partial degrees as mixed volumes, the exponent relating the
resultant to the eliminant, and the faces used by the Poisson recursion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from .lattice import (
    IntVector,
    LatticeBasis,
    coordinates_in_basis,
    dot,
    is_primitive,
    lattice_index,
    orthogonal_basis,
    quotient_projection,
    saturation,
    sum_lattices,
)
from .polytopes import (
    PolytopeError,
    convex_hull,
    face_in_direction,
    minkowski_sum,
    mixed_volume,
    project,
)

Support = tuple[IntVector, ...]


@dataclass(frozen=True)
class SupportFamily:
    n: int
    supports: tuple[Support, ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("ambient rank must be nonnegative")
        sups = tuple(tuple(tuple(int(x) for x in p) for p in a) for a in self.supports)
        if len(sups) != self.n + 1:
            raise ValueError(f"expected {self.n + 1} supports, got {len(sups)}")
        for i, a in enumerate(sups):
            if not a:
                raise ValueError(f"support {i} is empty")
            if any(len(p) != self.n for p in a):
                raise ValueError(f"support {i} has points of length other than {self.n}")
            if len(set(a)) != len(a):
                raise ValueError(f"support {i} has duplicate points")
        object.__setattr__(self, "supports", sups)

    @classmethod
    def of(cls, supports: Sequence[Sequence[Sequence[int]]]) -> "SupportFamily":
        return cls(len(supports) - 1, tuple(tuple(tuple(p) for p in a) for a in supports))

    @property
    def tail(self) -> tuple[Support, ...]:
        return self.supports[1:]

    def sizes(self) -> list[int]:
        return [len(a) for a in self.supports]


@dataclass(frozen=True)
class AnalysisReport:
    essential_index_sets: tuple[tuple[int, ...], ...]
    unique_essential: Optional[tuple[int, ...]]
    resultant_trivial: bool
    degrees: tuple[int, ...]
    exponent_dA: int
    height_bound: float


@dataclass(frozen=True)
class DirectionalFamily:
    direction: IntVector
    translations: tuple[IntVector, ...]
    basis: LatticeBasis
    reduced_supports: SupportFamily
    faces: tuple[Support, ...]


def difference_lattice(a: Sequence[Sequence[int]]) -> LatticeBasis:
    a0 = tuple(a[0])
    n = len(a0)
    return LatticeBasis(n, tuple(tuple(x - y for x, y in zip(p, a0)) for p in a[1:]))


def _family_lattice(supports: Sequence[Support], idx: Sequence[int], n: int) -> LatticeBasis:
    return sum_lattices([difference_lattice(supports[i]) for i in idx], n)


def _masks(k: int):
    return range(1, 1 << k)


def _members(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _subset_ranks(f: SupportFamily) -> dict[int, int]:
    return {m: _family_lattice(f.supports, _members(m), f.n).rank for m in _masks(f.n + 1)}


def essential_subfamilies(f: SupportFamily) -> list[tuple[int, ...]]:
    ranks = _subset_ranks(f)
    out = []
    for mask, r in ranks.items():
        size = bin(mask).count("1")
        if size != r + 1:
            continue
        proper_ok = True
        sub = (mask - 1) & mask
        while sub:
            if bin(sub).count("1") > ranks[sub]:
                proper_ok = False
                break
            sub = (sub - 1) & mask
        if proper_ok:
            out.append(_members(mask))
    return sorted(out, key=lambda j: (len(j), j))


def rank_criterion(f: SupportFamily) -> bool:
    """rank(L_{A_I}) >= #I - 1 for every nonempty I."""
    return all(r >= bin(m).count("1") - 1 for m, r in _subset_ranks(f).items())


def partial_degrees(f: SupportFamily) -> tuple[int, ...]:
    hulls = [convex_hull(a) for a in f.supports]
    return tuple(
        mixed_volume(hulls[:i] + hulls[i + 1 :], ambient_rank=f.n) for i in range(f.n + 1)
    )


def eliminant_exponent(f: SupportFamily, essential: Sequence[int]) -> int:
    lat = _family_lattice(f.supports, essential, f.n)
    sat = saturation(lat)
    index = lattice_index(lat)
    rest = [i for i in range(f.n + 1) if i not in essential]
    if not rest:
        return index
    proj = quotient_projection(sat)
    images = [project(convex_hull(f.supports[i]), proj) for i in rest]
    return index * mixed_volume(images, ambient_rank=len(proj))


@lru_cache(maxsize=1024)
def analyze(f: SupportFamily) -> AnalysisReport:
    ess = essential_subfamilies(f)
    crit = rank_criterion(f)
    unique = ess[0] if len(ess) == 1 else None
    if crit != (unique is not None):
        raise ArithmeticError("triviality criteria disagree")
    if unique is None:
        zeros = (0,) * (f.n + 1)
        return AnalysisReport(tuple(ess), None, True, zeros, 0, 0.0)
    degrees = partial_degrees(f)
    d_a = eliminant_exponent(f, unique)
    height = sum(d * math.log(len(a)) for d, a in zip(degrees, f.supports))
    return AnalysisReport(tuple(ess), unique, False, degrees, d_a, height)


def directional_family(
    tail: Sequence[Sequence[Sequence[int]]],
    v: Sequence[int],
    translations: Optional[Sequence[Sequence[int]]] = None,
    basis: Optional[LatticeBasis] = None,
) -> DirectionalFamily:
    """Faces of the tail in direction v, rewritten in the rank n-1 lattice v-perp.

    ``translations`` and ``basis`` override the default choices (lexicographically
    smallest face point, canonical basis of v-perp); results downstream do not
    depend on them up to sign.
    """
    v = tuple(int(x) for x in v)
    if not any(v) or not is_primitive(v):
        raise ValueError(f"direction {v} is not primitive")
    n = len(v)
    if len(tail) != n:
        raise ValueError("directional family needs exactly n supports")
    faces = tuple(tuple(face_in_direction(a, v)) for a in tail)
    if translations is None:
        bs = tuple(min(face) for face in faces)
    else:
        bs = tuple(tuple(b) for b in translations)
        for b, face in zip(bs, faces):
            if b not in face:
                raise ValueError(f"translation {b} is not a point of the face")
    if basis is None:
        basis = orthogonal_basis(v)
    reduced = []
    for b, face in zip(bs, faces):
        shifted = [tuple(x - y for x, y in zip(p, b)) for p in face]
        reduced.append(tuple(coordinates_in_basis(shifted, basis)))
    return DirectionalFamily(v, bs, basis, SupportFamily(n - 1, tuple(reduced)), faces)


def tail_minkowski_sum(tail: Sequence[Sequence[Sequence[int]]]):
    total = convex_hull(tail[0])
    for a in tail[1:]:
        total = minkowski_sum(total, convex_hull(a))
    return total


def nontrivial_directions(tail: Sequence[Sequence[Sequence[int]]]) -> list[IntVector]:
    """Candidate directions v with possibly nontrivial directional resultant."""
    if not tail:
        return []
    n = len(tail[0][0])
    if len(tail) != n:
        raise PolytopeError("tail must have n supports in rank n")
    total = tail_minkowski_sum(tail)
    if total.dim == n:
        return sorted(nrm for nrm, _ in total.facets)
    if total.dim == n - 1:
        (u,) = total.affine_normals()
        return sorted([u, tuple(-x for x in u)])
    return []


def support_function(a: Sequence[Sequence[int]], v: Sequence[int]) -> int:
    return min(dot(v, p) for p in a)
