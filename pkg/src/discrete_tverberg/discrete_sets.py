"""Discrete ground sets: lattices, lattice differences, and their bounds.

A ground set S is either a lattice L = B * Z^r, a difference
L \\ (L_1 | ... | L_m) with each L_i a sublattice of L, or the mixed
product Z^a x R^b.  The first two are enumerable inside polytopes; the
mixed variant exists only to evaluate bound formulas.

Bound formulas implemented here:
  * quantitative Helly for a rank-r lattice: (2^r - 2) * ceil(2(k+1)/3) + 2,
    with the k=1 classical bound 2^r available in best mode;
  * lattice difference: (2^(m+1) k + 1)^r, which in fact bounds the largest
    k-hollow set directly;
  * mixed, k=1 only: (b+1) 2^a;
  * Tverberg composition: helly_bound * (m-1) * k * dim + k, plus the
    strict lower bound 2^dim (m-1) for full-rank lattices at k=1.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from fractions import Fraction
from math import ceil, floor
from typing import Optional, Sequence

import numpy as np

from . import geom2d
from .errors import CapExceededError
from .exact_geometry import extreme_points, membership, rank_of_vectors
from .vectors import ONE, ZERO, Vec, common_denominator, vec


class LatticeBasis:
    """Lattice B * Z^r given by r independent rational vectors in R^dim.

    Precomputes a transform T with T @ B = [I_r; 0], so lattice coordinates
    of any ambient point cost one matrix-vector product.
    """

    def __init__(self, vectors: Sequence, dim: Optional[int] = None):
        vecs = [vec(v) for v in vectors]
        if not vecs:
            raise ValueError("a lattice needs at least one basis vector")
        self.dim = dim if dim is not None else len(vecs[0])
        if any(len(v) != self.dim for v in vecs):
            raise ValueError("basis vectors of mixed dimension")
        self.rank = len(vecs)
        if rank_of_vectors(vecs) != self.rank:
            raise ValueError("basis vectors are linearly dependent")
        self.vectors = tuple(vecs)
        self._transform = self._reduce()

    @classmethod
    def identity(cls, dim: int) -> "LatticeBasis":
        rows = [
            tuple(ONE if i == j else ZERO for i in range(dim)) for j in range(dim)
        ]
        return cls(rows, dim)

    def _reduce(self) -> list:
        d, r = self.dim, self.rank
        rows = [
            [self.vectors[j][i] for j in range(r)]
            + [ONE if t == i else ZERO for t in range(d)]
            for i in range(d)
        ]
        for cj in range(r):
            pivot = next(i for i in range(cj, d) if rows[i][cj] != 0)
            rows[cj], rows[pivot] = rows[pivot], rows[cj]
            pv = rows[cj][cj]
            rows[cj] = [x / pv for x in rows[cj]]
            for i in range(d):
                if i != cj and rows[i][cj] != 0:
                    f = rows[i][cj]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[cj])]
        return [row[r:] for row in rows]

    def projected_coords(self, x) -> tuple:
        """First-r rows of T applied to x; exact on the lattice span."""
        x = vec(x)
        return tuple(
            sum(self._transform[i][j] * x[j] for j in range(self.dim))
            for i in range(self.rank)
        )

    def to_lattice(self, x) -> Optional[tuple]:
        """Coordinates z with B z = x, or None when x is off the span."""
        x = vec(x)
        t = [
            sum(self._transform[i][j] * x[j] for j in range(self.dim))
            for i in range(self.dim)
        ]
        if any(t[i] != 0 for i in range(self.rank, self.dim)):
            return None
        return tuple(t[: self.rank])

    def from_lattice(self, z: Sequence) -> Vec:
        return tuple(
            sum(self.vectors[j][i] * z[j] for j in range(self.rank))
            for i in range(self.dim)
        )

    def contains(self, x) -> bool:
        z = self.to_lattice(x)
        return z is not None and all(c.denominator == 1 for c in z)

    def is_identity(self) -> bool:
        if self.rank != self.dim:
            return False
        return all(
            self.vectors[j][i] == (1 if i == j else 0)
            for j in range(self.rank)
            for i in range(self.dim)
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, LatticeBasis):
            return NotImplemented
        return self.dim == other.dim and self.vectors == other.vectors

    def __hash__(self) -> int:
        return hash((self.dim, self.vectors))

    def __repr__(self) -> str:
        return f"LatticeBasis({list(self.vectors)!r}, dim={self.dim})"


@dataclass(frozen=True)
class DiscreteSetSpec:
    dim: int
    variant: str  # "lattice" | "difference" | "mixed"
    base: Optional[LatticeBasis] = None
    sublattices: tuple = ()
    a: Optional[int] = None
    b: Optional[int] = None

    def __post_init__(self):
        if self.variant in ("lattice", "difference"):
            if self.base is None:
                object.__setattr__(self, "base", LatticeBasis.identity(self.dim))
            if self.base.dim != self.dim:
                raise ValueError("lattice dimension does not match spec dimension")
            for sub in self.sublattices:
                _check_sublattice(self.base, sub)
            if self.variant == "lattice" and self.sublattices:
                raise ValueError("plain lattice cannot carry sublattices")
            if self.variant == "difference" and not self.sublattices:
                raise ValueError("difference variant needs at least one sublattice")
        elif self.variant == "mixed":
            if self.a is None or self.b is None or self.a < 0 or self.b < 0:
                raise ValueError("mixed variant needs nonnegative factors a, b")
            if self.a + self.b != self.dim:
                raise ValueError("mixed factors must sum to the dimension")
        else:
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def enumerable(self) -> bool:
        return self.variant in ("lattice", "difference")

    @property
    def rank(self) -> int:
        if self.base is not None:
            return self.base.rank
        return self.dim


def _check_sublattice(base: LatticeBasis, sub: LatticeBasis) -> None:
    if sub.dim != base.dim:
        raise ValueError("sublattice dimension mismatch")
    for v in sub.vectors:
        z = base.to_lattice(v)
        if z is None or any(c.denominator != 1 for c in z):
            raise ValueError("sublattice basis vector is not a lattice member")


def _as_basis(basis, dim: int):
    if basis is None or isinstance(basis, LatticeBasis):
        return basis
    return LatticeBasis(basis, dim)


def lattice_set(dim: int, basis=None) -> DiscreteSetSpec:
    return DiscreteSetSpec(dim=dim, variant="lattice", base=_as_basis(basis, dim))


def difference_set(dim: int, sublattices, basis=None) -> DiscreteSetSpec:
    base = _as_basis(basis, dim)
    subs = tuple(
        s if isinstance(s, LatticeBasis) else LatticeBasis(s, dim) for s in sublattices
    )
    return DiscreteSetSpec(dim=dim, variant="difference", base=base, sublattices=subs)


def mixed_set(a: int, b: int) -> DiscreteSetSpec:
    return DiscreteSetSpec(dim=a + b, variant="mixed", a=a, b=b)


def set_contains(spec: DiscreteSetSpec, point) -> bool:
    if not spec.enumerable:
        raise ValueError("pointwise membership is defined only for enumerable sets")
    p = vec(point)
    if len(p) != spec.dim:
        raise ValueError("dimension mismatch")
    if not spec.base.contains(p):
        return False
    if spec.variant == "difference":
        return not any(sub.contains(p) for sub in spec.sublattices)
    return True


# ---------------------------------------------------------------------------
# polytopes and enumeration


@dataclass(frozen=True)
class PolytopeV:
    """Polytope as a vertex list (points need not be extreme)."""

    vertices: tuple

    def __post_init__(self):
        pts = tuple(vec(v) for v in self.vertices)
        if not pts:
            raise ValueError("a polytope needs at least one vertex")
        if any(len(v) != len(pts[0]) for v in pts):
            raise ValueError("vertices of mixed dimension")
        object.__setattr__(self, "vertices", pts)

    @property
    def dim(self) -> int:
        return len(self.vertices[0])


def box_polytope(bounds: Sequence) -> PolytopeV:
    """Axis box as a PolytopeV; bounds is a (lo, hi) pair per coordinate."""
    iv = []
    for lo, hi in bounds:
        lo, hi = Fraction(lo), Fraction(hi)
        if lo > hi:
            raise ValueError("empty box bound")
        iv.append((lo, hi))
    return PolytopeV(tuple(itertools.product(*iv)))


class _HullTester:
    """Containment tester for one polytope, amortized over many queries."""

    def __init__(self, verts: list, scale_with: list):
        self.verts = verts
        self.dim = len(verts[0])
        if self.dim == 1:
            xs = [v[0] for v in verts]
            self.lo, self.hi = min(xs), max(xs)
        elif self.dim == 2:
            self.den = common_denominator(list(verts) + list(scale_with))
            self.hull = geom2d.hull2d(
                [tuple(int(c * self.den) for c in v) for v in verts]
            )

    def __call__(self, x: Vec) -> bool:
        if self.dim == 1:
            return self.lo <= x[0] <= self.hi
        if self.dim == 2:
            xi = tuple(int(c * self.den) for c in x)
            return geom2d.point_in_hull2d(xi, self.hull)
        return membership(x, self.verts).inside


def enumerate_in_polytope(
    spec: DiscreteSetSpec, polytope: PolytopeV, cap: Optional[int] = None
) -> list:
    """All points of S inside the polytope, sorted lexicographically.

    Scans the integer bounding box of the polytope in lattice coordinates
    and filters by exact hull membership (the box bound is valid even for
    vertices off the lattice span, since lattice coordinates are linear).
    """
    if not spec.enumerable:
        raise ValueError("enumeration is defined only for enumerable sets")
    if polytope.dim != spec.dim:
        raise ValueError("dimension mismatch")
    lat = spec.base
    verts = list(dict.fromkeys(polytope.vertices))
    proj = [lat.projected_coords(v) for v in verts]
    ranges = []
    total = 1
    for j in range(lat.rank):
        lo = ceil(min(p[j] for p in proj))
        hi = floor(max(p[j] for p in proj))
        if lo > hi:
            return []
        ranges.append(range(lo, hi + 1))
        total *= hi - lo + 1
    if cap is not None and total > cap:
        raise CapExceededError(
            f"enumeration box holds {total} candidates, cap is {cap}"
        )
    flat_basis = [tuple(v) for v in lat.vectors]
    tester = _HullTester(verts, flat_basis)
    bulk = _bulk_candidates(lat, ranges, total, verts)
    out = []
    if bulk is not None:
        for x in bulk:
            if _in_set_filter(spec, x):
                out.append(x)
    else:
        for z in itertools.product(*ranges):
            x = lat.from_lattice(z)
            if tester(x) and _in_set_filter(spec, x):
                out.append(x)
    out.sort()
    return out


def _in_set_filter(spec: DiscreteSetSpec, x: Vec) -> bool:
    if spec.variant == "difference":
        return not any(sub.contains(x) for sub in spec.sublattices)
    return True


def _bulk_candidates(lat, ranges, total, verts) -> Optional[list]:
    # numpy mask path: planar identity lattice, integer vertices, small coords
    if lat.dim != 2 or not lat.is_identity() or total < 256:
        return None
    flat = [c for v in verts for c in v]
    if any(x.denominator != 1 for x in flat):
        return None
    iverts = [tuple(int(c) for c in v) for v in verts]
    if not geom2d.coords_fit_numpy(iverts):
        return None
    xs, ys = np.meshgrid(
        np.arange(ranges[0].start, ranges[0].stop, dtype=np.int64),
        np.arange(ranges[1].start, ranges[1].stop, dtype=np.int64),
        indexing="ij",
    )
    grid = np.stack([xs.ravel(), ys.ravel()], axis=1)
    mask = geom2d.hull_grid_mask(geom2d.hull2d(iverts), grid)
    return [
        (Fraction(int(gx)), Fraction(int(gy))) for gx, gy in grid[mask]
    ]


# ---------------------------------------------------------------------------
# hollow / Hoffman predicates


@dataclass(frozen=True)
class HollowCertificate:
    """Asserts k-hollowness of ``points`` when ``len(nonvertex_points) < k``."""

    points: tuple
    k: int
    nonvertex_points: tuple

    @property
    def asserts_hollow(self) -> bool:
        return len(self.nonvertex_points) < self.k

    def verify(self, spec: DiscreteSetSpec) -> bool:
        pts = list(self.points)
        if not pts:
            return True
        verts = set(extreme_points(pts))
        for q in self.nonvertex_points:
            if not set_contains(spec, q):
                return False
            if q in verts or not membership(q, pts).inside:
                return False
        return True


def _require_in_set(spec: DiscreteSetSpec, points: list) -> None:
    for p in points:
        if not set_contains(spec, p):
            raise ValueError(f"point {p} is not a member of the ground set")


def count_nonvertex(
    spec: DiscreteSetSpec, points, cap: Optional[int] = None
) -> tuple:
    """|(conv(P) minus hull vertices) . S| with the witnessing point list.

    Non-extreme members of P count (the vertex set is the extreme points of
    P itself).  Returns ``(count, HollowCertificate)`` where the
    certificate's k is the smallest k for which P is k-hollow.
    """
    pts = [vec(p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    _require_in_set(spec, pts)
    verts = set(extreme_points(pts))
    inside = enumerate_in_polytope(spec, PolytopeV(tuple(pts)), cap=cap)
    nonvertex = tuple(q for q in inside if q not in verts)
    cert = HollowCertificate(tuple(pts), len(nonvertex) + 1, nonvertex)
    return len(nonvertex), cert


def is_k_hollow(points, spec: DiscreteSetSpec, k: int, cap: Optional[int] = None) -> bool:
    if k < 1:
        raise ValueError("k must be at least 1")
    count, _ = count_nonvertex(spec, points, cap=cap)
    return count < k


def is_k_hoffman(points, spec: DiscreteSetSpec, k: int, cap: Optional[int] = None) -> bool:
    """Fewer than k points of S survive every leave-one-out hull of P."""
    if k < 1:
        raise ValueError("k must be at least 1")
    pts = [vec(p) for p in points]
    if len(pts) < 2:
        raise ValueError("Hoffman predicate needs at least two points")
    if len(pts) != len(set(pts)):
        raise ValueError("duplicate points")
    _require_in_set(spec, pts)
    survivors = 0
    for q in enumerate_in_polytope(spec, PolytopeV(tuple(pts)), cap=cap):
        if all(
            membership(q, pts[:i] + pts[i + 1:]).inside for i in range(len(pts))
        ):
            survivors += 1
            if survivors >= k:
                return False
    return True


def hollow_search(
    spec: DiscreteSetSpec,
    box: Sequence,
    k: int,
    mode: str = "exhaustive",
    ground_cap: int = 20,
) -> HollowCertificate:
    """Maximum (exhaustive) or single-point-maximal (greedy) k-hollow set.

    The ground set is S intersected with the axis box.  Exhaustive mode
    walks subsets in decreasing size and returns the first k-hollow one
    (combinations in lexicographic ground order, so the result is
    deterministic); it refuses ground sets larger than ``ground_cap``.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    ground = enumerate_in_polytope(spec, box_polytope(box))
    if mode == "exhaustive":
        if len(ground) > ground_cap:
            raise CapExceededError(
                f"ground set has {len(ground)} points, cap is {ground_cap}"
            )
        for size in range(len(ground), 0, -1):
            for subset in itertools.combinations(ground, size):
                count, cert = count_nonvertex(spec, subset)
                if count < k:
                    return replace(cert, k=k)
        return HollowCertificate((), k, ())
    if mode == "greedy":
        chosen: list = []
        grown = True
        while grown:
            grown = False
            for q in ground:
                if q in chosen:
                    continue
                count, _ = count_nonvertex(spec, chosen + [q])
                if count < k:
                    chosen.append(q)
                    chosen.sort()
                    grown = True
        _, cert = count_nonvertex(spec, chosen) if chosen else (0, HollowCertificate((), k, ()))
        return replace(cert, k=k)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# bound formulas


def _ceil_div(num: int, den: int) -> int:
    return -(-num // den)


def helly_upper_bound(spec: DiscreteSetSpec, k: int, mode: str = "paper") -> int:
    """Closed-form upper bound for the quantitative Helly number of S."""
    if k < 1:
        raise ValueError("k must be at least 1")
    if mode not in ("paper", "best"):
        raise ValueError(f"unknown mode {mode!r}")
    if spec.variant == "lattice":
        r = spec.rank
        value = (2 ** r - 2) * _ceil_div(2 * (k + 1), 3) + 2
        if mode == "best" and k == 1:
            value = min(value, 2 ** r)
        return value
    if spec.variant == "difference":
        r = spec.rank
        m = len(spec.sublattices)
        return (2 ** (m + 1) * k + 1) ** r
    # mixed
    if k != 1:
        raise ValueError("mixed-variant bound applies only to k = 1")
    return (spec.b + 1) * 2 ** spec.a


def tverberg_upper_bound(
    spec: DiscreteSetSpec, m: int, k: int, mode: str = "paper"
) -> int:
    """Points guaranteeing an m-partition with k common S-points in the hulls."""
    if m < 1:
        raise ValueError("m must be at least 1")
    return helly_upper_bound(spec, k, mode) * (m - 1) * k * spec.dim + k


def eckhoff_lower_bound(spec: DiscreteSetSpec, m: int) -> int:
    """Strict lower bound: with this many points a partition can still fail.

    Applies to full-rank lattices at k = 1 (affine images of the standard
    integer lattice).
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    if spec.variant != "lattice" or spec.rank != spec.dim:
        raise ValueError("lower bound applies only to full-rank lattices")
    return 2 ** spec.dim * (m - 1)
