"""Exact rational polytopes in ambient dimension 2-4.

Vertex representation over Fractions with lazily built combinatorial
structure: facet enumeration by exhaustive supporting-hyperplane tests over
candidate vertex subsets (vectorized over int64 when coordinate sizes allow,
with an exact big-integer fallback), a face lattice obtained by closing
facet vertex sets under intersection, and the normal fan as cones with
explicit lineality so lower-dimensional bodies are first class.

All derived objects are canonical (lexicographic vertex order, primitive
integer normals, Hermite-normal-form lattice bases); equality of polytopes,
cones and measures is therefore syntactic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .cone import Cone, cone_from_h
from .lp import point_in_hull
from .ratio import dot, rat, rat_str, vadd, vec, vscale, vsub

Vec = tuple[Fraction, ...]

SUPPORTED_DIMS = (2, 3, 4)
_MAX_SUBSETS = 6_000_000
_INT64_COORD_LIMIT = {1: 10**15, 2: 10**6, 3: 400_000, 4: 18_000}


class GeometryError(ValueError):
    """Base class for kernel errors."""


class UnsupportedDimension(GeometryError):
    pass


class DimensionMismatch(GeometryError):
    pass


class NotAFace(GeometryError):
    pass


class PreconditionFailure(GeometryError):
    pass


class VerificationFailure(AssertionError):
    """An exact internal cross-check failed; indicates a mathematical bug."""


@dataclass(frozen=True)
class Direction:
    """Primitive integer vector standing in for a ray of the unit sphere.

    No antipodal identification: u and -u are distinct directions.
    """

    coords: tuple[int, ...]

    def __post_init__(self):
        if not self.coords or all(c == 0 for c in self.coords):
            raise GeometryError("direction must be a nonzero vector")
        g = linalg.vec_gcd(self.coords)
        if g != 1:
            raise GeometryError("direction coordinates must be coprime; use Direction.of")

    @staticmethod
    def of(v: Sequence) -> "Direction":
        return Direction(linalg.primitive(v))

    def __neg__(self) -> "Direction":
        return Direction(tuple(-c for c in self.coords))

    @property
    def n(self) -> int:
        return len(self.coords)


def as_int_vector(u) -> linalg.IntVec:
    if isinstance(u, Direction):
        return u.coords
    return linalg.primitive(u)


@dataclass(frozen=True)
class Facet:
    """A facet within the affine hull: normal is primitive, ambient, in the
    direction span of the polytope; offset is the support value."""

    normal: linalg.IntVec
    offset: Fraction
    vertex_set: frozenset[int]


class Polytope:
    """Immutable rational polytope; structure caches are built once."""

    __slots__ = ("n", "vertices", "_cache")

    def __init__(self, vertices: Sequence[Vec], n: int, _trusted: bool = False):
        if not _trusted:
            raise GeometryError("construct polytopes with hull()")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "vertices", tuple(tuple(Fraction(x) for x in v) for v in vertices))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, k, v):  # pragma: no cover - guard
        raise AttributeError("Polytope is immutable")

    # -- identity ---------------------------------------------------------

    @property
    def canonical_vertices(self) -> tuple[Vec, ...]:
        return tuple(sorted(self.vertices))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polytope)
            and self.n == other.n
            and self.canonical_vertices == other.canonical_vertices
        )

    def __hash__(self):
        return hash((self.n, self.canonical_vertices))

    def __repr__(self):
        return f"Polytope(n={self.n}, dim={self.dim}, vertices={len(self.vertices)})"

    # -- affine structure ---------------------------------------------------

    def _affine(self):
        if "affine" not in self._cache:
            v0 = min(self.vertices)
            diffs = [vsub(v, v0) for v in self.vertices if v != v0]
            basis = linalg.saturated_span_basis(diffs, self.n) if diffs else []
            identity = basis == [
                tuple(1 if i == j else 0 for j in range(self.n)) for i in range(self.n)
            ]
            if identity:
                intrinsic = [vsub(v, v0) for v in self.vertices]
            else:
                intrinsic = [
                    tuple(linalg.coords_in_basis(basis, vsub(v, v0))) if basis else ()
                    for v in self.vertices
                ]
            self._cache["affine"] = (v0, tuple(basis), tuple(intrinsic))
        return self._cache["affine"]

    @property
    def dim(self) -> int:
        return len(self._affine()[1])

    @property
    def direction_basis(self) -> tuple[linalg.IntVec, ...]:
        """Canonical integer basis of the direction space of the affine hull."""
        return self._affine()[1]

    def perp_of_affine_hull(self) -> list[linalg.IntVec]:
        basis = self.direction_basis
        if not basis:
            return linalg.hnf_rows(
                [tuple(1 if i == j else 0 for j in range(self.n)) for i in range(self.n)]
            )
        return linalg.integer_kernel_basis(basis)

    # -- support ------------------------------------------------------------

    def support_value(self, u) -> Fraction:
        w = as_int_vector(u) if not isinstance(u, tuple) else u
        return max(dot(w, v) for v in self.vertices)

    def support_with_face(self, u) -> tuple[Fraction, frozenset[int]]:
        w = u.coords if isinstance(u, Direction) else tuple(u)
        vals = [dot(w, v) for v in self.vertices]
        m = max(vals)
        return m, frozenset(i for i, x in enumerate(vals) if x == m)

    def face_vertices(self, vset: frozenset[int]) -> list[Vec]:
        return [self.vertices[i] for i in sorted(vset)]

    def face_polytope(self, vset: frozenset[int]) -> "Polytope":
        return Polytope(sorted(self.face_vertices(vset)), self.n, _trusted=True)

    # -- facets and faces ----------------------------------------------------

    def facets(self) -> tuple[Facet, ...]:
        if "facets" not in self._cache:
            v0, basis, intrinsic = self._affine()
            d = len(basis)
            out = []
            for nrm_i, off_i, vset in _facets_intrinsic(intrinsic, d):
                nrm_a = _intrinsic_functional_to_ambient(basis, nrm_i, self.n)
                off_a = max(dot(nrm_a, v) for v in self.vertices)
                out.append(Facet(nrm_a, off_a, vset))
            out.sort(key=lambda f: (f.normal, f.offset))
            self._cache["facets"] = tuple(out)
        return self._cache["facets"]

    def faces(self) -> dict[frozenset[int], int]:
        """All nonempty faces as vertex-index sets, mapped to affine dimension."""
        if "faces" not in self._cache:
            everything = frozenset(range(len(self.vertices)))
            sets = {everything}
            frontier = {f.vertex_set for f in self.facets()}
            sets |= frontier
            while frontier:
                new = set()
                for a in frontier:
                    for f in self.facets():
                        b = a & f.vertex_set
                        if b and b not in sets:
                            new.add(b)
                sets |= new
                frontier = new
            dims = {}
            for s in sets:
                pts = self.face_vertices(s)
                dims[s] = linalg.span_dim([vsub(p, pts[0]) for p in pts[1:]]) if len(pts) > 1 else 0
            self._cache["faces"] = dims
        return self._cache["faces"]

    def is_face(self, vset: frozenset[int]) -> bool:
        return vset in self.faces()

    def normal_cone_of(self, vset: frozenset[int]) -> Cone:
        if not self.is_face(vset):
            raise NotAFace("the given vertex set is not a face of this polytope")
        key = ("cone", vset)
        if key not in self._cache:
            rays = [f.normal for f in self.facets() if vset <= f.vertex_set]
            self._cache[key] = Cone.make(self.n, rays, self.perp_of_affine_hull(), reduce=False)
        return self._cache[key]

    def normal_cone_h_rows(self, vset: frozenset[int]) -> list[Vec]:
        """Rows a with N(self, face) = {u : <a,u> <= 0}(exact H-description)."""
        pts = self.face_vertices(vset)
        x = pts[0]
        for p in pts[1:]:
            x = vadd(x, p)
        x = vscale(Fraction(1, len(pts)), x)
        return [vsub(w, x) for w in self.vertices]

    def fan_ray_candidates(self) -> list[linalg.IntVec]:
        """Primitive generators of the one-dimensional cones of the normal fan."""
        if self.dim == self.n:
            return [f.normal for f in self.facets()]
        if self.dim == self.n - 1:
            w = self.perp_of_affine_hull()[0]
            return [w, tuple(-x for x in w)]
        return []

    # -- membership -----------------------------------------------------------

    def contains(self, x: Sequence) -> bool:
        v0, basis, _ = self._affine()
        delta = vsub(vec(x), v0)
        if not basis:
            return all(c == 0 for c in delta)
        try:
            y = linalg.coords_in_basis(basis, delta)
        except ValueError:
            return False
        d = len(basis)
        for nrm, off, _vset in _facets_intrinsic(self._affine()[2], d):
            if dot(nrm, y) > off:
                return False
        return True

    def relint_contains(self, x: Sequence) -> bool:
        v0, basis, _ = self._affine()
        delta = vsub(vec(x), v0)
        if not basis:
            return all(c == 0 for c in delta)
        try:
            y = linalg.coords_in_basis(basis, delta)
        except ValueError:
            return False
        d = len(basis)
        for nrm, off, _vset in _facets_intrinsic(self._affine()[2], d):
            if dot(nrm, y) >= off:
                return False
        return True

    def interior_contains(self, x: Sequence) -> bool:
        return self.dim == self.n and self.relint_contains(x)

    # -- volume -----------------------------------------------------------------

    def intrinsic_volume(self) -> Fraction:
        """Volume in the canonical saturated coordinates of the affine hull.

        Euclidean volume differs by the square root of the Gram determinant
        of the direction basis; the coordinate value is the exact rational
        the measure pipeline stores.
        """
        if "ivol" not in self._cache:
            _, basis, intrinsic = self._affine()
            self._cache["ivol"] = _volume_recursive(list(intrinsic), len(basis))
        return self._cache["ivol"]

    def volume(self) -> Fraction:
        """Ambient n-volume; zero for lower-dimensional bodies."""
        if self.dim < self.n:
            return Fraction(0)
        return self.intrinsic_volume()

    # -- transforms ---------------------------------------------------------------

    def translate(self, t: Sequence) -> "Polytope":
        t = vec(t)
        return Polytope(sorted(vadd(v, t) for v in self.vertices), self.n, _trusted=True)

    def scale(self, c) -> "Polytope":
        c = rat(c)
        if c < 0:
            raise PreconditionFailure("scaling factor must be nonnegative")
        if c == 0:
            return Polytope([tuple(Fraction(0) for _ in range(self.n))], self.n, _trusted=True)
        return Polytope(sorted(vscale(c, v) for v in self.vertices), self.n, _trusted=True)

    # -- serialization ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "dim": self.n,
            "vertices": [[rat_str(x) for x in v] for v in self.canonical_vertices],
        }

    @staticmethod
    def from_json(data: dict) -> "Polytope":
        n = int(data["dim"])
        pts = [tuple(rat(x) for x in v) for v in data["vertices"]]
        return hull(pts, n)


# -- construction ------------------------------------------------------------------


def hull(points: Iterable[Sequence], n: int) -> Polytope:
    """Convex hull with an irredundant, lexicographically sorted vertex list."""
    if n not in SUPPORTED_DIMS:
        raise UnsupportedDimension(f"ambient dimension {n} outside supported range {SUPPORTED_DIMS}")
    return _hull_any(points, n)


def _hull_any(points: Iterable[Sequence], n: int) -> Polytope:
    pts = sorted({tuple(rat(x) for x in p) for p in points})
    if not pts:
        raise GeometryError("hull needs at least one point")
    for p in pts:
        if len(p) != n:
            raise DimensionMismatch(f"point of length {len(p)} in ambient dimension {n}")
    if len(pts) == 1:
        return Polytope(pts, n, _trusted=True)
    extreme = _extreme_points(pts, n)
    return Polytope(sorted(extreme), n, _trusted=True)


def _extreme_points(pts: list[Vec], n: int) -> list[Vec]:
    v0 = pts[0]
    diffs = [vsub(p, v0) for p in pts[1:]]
    basis = linalg.saturated_span_basis(diffs, n)
    d = len(basis)
    if d == 0:
        return [v0]
    identity = basis == [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    if identity:
        coords = [vsub(p, v0) for p in pts]
    else:
        coords = [tuple(linalg.coords_in_basis(basis, vsub(p, v0))) for p in pts]
    if d == 1:
        vals = [c[0] for c in coords]
        return [pts[vals.index(min(vals))], pts[vals.index(max(vals))]]
    if d == 2:
        keep = _hull_2d_indices(coords)
        return [pts[i] for i in keep]
    keep = _extreme_indices_lp(coords)
    return [pts[i] for i in keep]


def _hull_2d_indices(coords: list[Vec]) -> list[int]:
    order = sorted(range(len(coords)), key=lambda i: coords[i])

    def cross(o, a, b):
        return (coords[a][0] - coords[o][0]) * (coords[b][1] - coords[o][1]) - (
            coords[a][1] - coords[o][1]
        ) * (coords[b][0] - coords[o][0])

    lower: list[int] = []
    for i in order:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], i) <= 0:
            lower.pop()
        lower.append(i)
    upper: list[int] = []
    for i in reversed(order):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], i) <= 0:
            upper.pop()
        upper.append(i)
    return lower[:-1] + upper[:-1]


def _scaled_ints(coords: list[Vec]) -> tuple[list[tuple[int, ...]], int]:
    den = 1
    for p in coords:
        for x in p:
            den = den * x.denominator // gcd(den, x.denominator)
    return [tuple(int(x * den) for x in p) for p in coords], den


def _extreme_indices_lp(coords: list[Vec]) -> list[int]:
    ipts, _ = _scaled_ints(coords)
    d = len(ipts[0])
    nv = len(ipts)
    definite: set[int] = set()

    dirs: list[tuple[int, ...]] = [s for s in itertools.product((-1, 0, 1), repeat=d) if any(s)]
    total = tuple(sum(p[j] for p in ipts) for j in range(d))
    for p in ipts:
        cand = tuple(nv * p[j] - total[j] for j in range(d))
        if any(cand):
            dirs.append(cand)
    maxabs = max(max(abs(x) for x in p) for p in ipts)
    if maxabs < 10**7 and nv > 2:
        arr = np.array(ipts, dtype=np.int64)
        dmat = np.array(dirs, dtype=np.int64)
        vals = arr @ dmat.T
        top = vals.max(axis=0)
        for j in range(dmat.shape[1]):
            hits = np.nonzero(vals[:, j] == top[j])[0]
            if len(hits) == 1:
                definite.add(int(hits[0]))
    else:
        for u in dirs:
            vals = [sum(a * b for a, b in zip(p, u)) for p in ipts]
            m = max(vals)
            hits = [i for i, x in enumerate(vals) if x == m]
            if len(hits) == 1:
                definite.add(hits[0])

    keep = set(definite)
    for i in range(nv):
        if i in keep:
            continue
        others_def = [ipts[j] for j in keep if j != i]
        if others_def and point_in_hull(others_def, ipts[i]):
            continue
        others = [ipts[j] for j in range(nv) if j != i]
        if not point_in_hull(others, ipts[i]):
            keep.add(i)
    return sorted(keep)


# -- facet enumeration ----------------------------------------------------------


def _facets_intrinsic(intrinsic: Sequence[Vec], d: int):
    """Facets of a full-dimensional point set in its intrinsic coordinates."""
    if d == 0:
        return []
    coords = list(intrinsic)
    if d == 1:
        vals = [c[0] for c in coords]
        lo, hi = min(vals), max(vals)
        los = frozenset(i for i, v in enumerate(vals) if v == lo)
        his = frozenset(i for i, v in enumerate(vals) if v == hi)
        return [((-1,), -lo, los), ((1,), hi, his)]
    ipts, den = _scaled_ints(coords)
    if d == 2:
        return _facets_2d(ipts, den)
    return _facets_exhaustive(ipts, den, d)


def _facets_2d(ipts, den):
    coords = [tuple(Fraction(x) for x in p) for p in ipts]
    ring = _hull_2d_indices(coords)
    out = []
    for a, b in zip(ring, ring[1:] + ring[:1]):
        dx = ipts[b][0] - ipts[a][0]
        dy = ipts[b][1] - ipts[a][1]
        nrm = linalg.primitive((dy, -dx))
        off = nrm[0] * ipts[a][0] + nrm[1] * ipts[a][1]
        vset = frozenset(
            i for i, p in enumerate(ipts) if nrm[0] * p[0] + nrm[1] * p[1] == off
        )
        out.append((nrm, Fraction(off, den), vset))
    uniq = {}
    for nrm, off, vset in out:
        uniq[(nrm, off)] = vset
    return [(n, o, v) for (n, o), v in sorted(uniq.items())]


def _facets_exhaustive(ipts, den, d):
    """Supporting-hyperplane tests over all d-subsets of the vertex set."""
    nv = len(ipts)
    if comb(nv, d) > _MAX_SUBSETS:
        raise GeometryError(
            f"facet enumeration over C({nv},{d}) subsets exceeds the desk-scale budget"
        )
    maxabs = max((max(abs(x) for x in p) for p in ipts), default=0)
    if maxabs <= _INT64_COORD_LIMIT[d]:
        cands = _facet_candidates_numpy(ipts, d)
    else:
        cands = _facet_candidates_bigint(ipts, d)

    out = []
    for nrm in sorted(cands):
        vals = [sum(a * b for a, b in zip(nrm, p)) for p in ipts]
        hi, lo = max(vals), min(vals)
        if hi == lo:
            continue
        for sign, off in ((1, hi), (-1, lo)):
            onside = all(v <= off for v in vals) if sign == 1 else all(v >= off for v in vals)
            if not onside:
                continue
            normal = nrm if sign == 1 else tuple(-x for x in nrm)
            offset = off if sign == 1 else -off
            vset = frozenset(i for i, v in enumerate(vals) if v == off)
            pts = [ipts[i] for i in vset]
            rank = linalg.span_dim([tuple(a - b for a, b in zip(p, pts[0])) for p in pts[1:]])
            if rank == d - 1:
                out.append((normal, Fraction(offset, den), vset))
    uniq = {}
    for nrm, off, vset in out:
        uniq[(nrm, off)] = vset
    facets = [(n, o, v) for (n, o), v in sorted(uniq.items())]
    counts = [0] * nv
    for _n, _o, v in facets:
        for i in v:
            counts[i] += 1
    if any(c < d for c in counts):
        raise VerificationFailure("facet enumeration left a vertex on fewer than d facets")
    return facets


def _facet_candidates_numpy(ipts, d) -> set[tuple[int, ...]]:
    arr = np.array(ipts, dtype=np.int64)
    nv = arr.shape[0]
    idx = np.array(list(itertools.combinations(range(nv), d)), dtype=np.int64)
    base = arr[idx[:, 0]]
    diffs = [arr[idx[:, k]] - base for k in range(1, d)]
    if d == 3:
        normals = np.cross(diffs[0], diffs[1])
    else:
        a, b, c = diffs
        normals = np.empty((idx.shape[0], 4), dtype=np.int64)
        cols = [0, 1, 2, 3]
        sign = 1
        for k in range(4):
            rest = [j for j in cols if j != k]
            m00, m01, m02 = (a[:, rest[0]], a[:, rest[1]], a[:, rest[2]])
            m10, m11, m12 = (b[:, rest[0]], b[:, rest[1]], b[:, rest[2]])
            m20, m21, m22 = (c[:, rest[0]], c[:, rest[1]], c[:, rest[2]])
            det = m00 * (m11 * m22 - m12 * m21) - m01 * (m10 * m22 - m12 * m20) + m02 * (
                m10 * m21 - m11 * m20
            )
            normals[:, k] = sign * det
            sign = -sign
    nonzero = np.any(normals != 0, axis=1)
    normals = normals[nonzero]
    if normals.shape[0] == 0:
        raise VerificationFailure("no facet candidates found for a full-dimensional set")
    g = np.gcd.reduce(np.abs(normals), axis=1)
    normals = normals // g[:, None]
    out: set[tuple[int, ...]] = set()
    for row in normals:
        t = tuple(int(x) for x in row)
        lead = next(x for x in t if x != 0)
        if lead < 0:
            t = tuple(-x for x in t)
        out.add(t)
    return out


def _facet_candidates_bigint(ipts, d) -> set[tuple[int, ...]]:
    out: set[tuple[int, ...]] = set()
    for subset in itertools.combinations(range(len(ipts)), d):
        base = ipts[subset[0]]
        rows = [tuple(ipts[j][k] - base[k] for k in range(d)) for j in subset[1:]]
        if linalg.span_dim(rows) != d - 1:
            continue
        normal = linalg.integer_kernel_basis(rows)
        if len(normal) != 1:
            continue
        t = normal[0]
        lead = next(x for x in t if x != 0)
        if lead < 0:
            t = tuple(-x for x in t)
        out.add(t)
    return out


def _volume_recursive(intrinsic: list[Vec], d: int) -> Fraction:
    if d == 0:
        return Fraction(1)
    if d == 1:
        vals = [c[0] for c in intrinsic]
        return max(vals) - min(vals)
    y0 = min(intrinsic)
    total = Fraction(0)
    for nrm, off, vset in _facets_intrinsic(intrinsic, d):
        gap = off - dot(nrm, y0)
        if gap == 0:
            continue
        pts = [intrinsic[i] for i in sorted(vset)]
        p0 = min(pts)
        diffs = [vsub(p, p0) for p in pts if p != p0]
        sub_basis = linalg.saturated_span_basis(diffs, d)
        sub = [tuple(linalg.coords_in_basis(sub_basis, vsub(p, p0))) for p in pts]
        total += gap * _volume_recursive(sub, d - 1)
    return total / d


def _intrinsic_functional_to_ambient(basis, nrm_intrinsic, n) -> linalg.IntVec:
    if not basis:
        raise GeometryError("no facets on a zero-dimensional polytope")
    if basis == [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]:
        return tuple(nrm_intrinsic)
    coeffs = linalg.solve_linear(linalg.gram_matrix(basis), list(nrm_intrinsic))
    assert coeffs is not None
    amb = [sum(c * b[j] for c, b in zip(coeffs, basis)) for j in range(n)]
    return linalg.primitive(amb)


# -- spec operations -----------------------------------------------------------


def support(K: Polytope, w) -> tuple[Fraction, Polytope]:
    """Support value h_K(w) together with the exposed face it is attained on."""
    w = as_int_vector(w)
    if len(w) != K.n:
        raise DimensionMismatch("direction dimension does not match the polytope")
    val, vset = K.support_with_face(w)
    return val, K.face_polytope(vset)


def normal_cone(K: Polytope, face) -> Cone:
    """Normal cone of a face, including the lineality (aff K)^perp."""
    vset = face if isinstance(face, frozenset) else frozenset(face)
    return K.normal_cone_of(vset)


def touching_cone(K: Polytope, u, check: bool = True) -> Cone:
    """The face of N(K, F(K,u)) whose relative interior contains u.

    For polytopes this is N(K, F(K,u)) itself; with check=True both routes
    are computed and asserted equal.
    """
    w = as_int_vector(u)
    _, vset = K.support_with_face(w)
    cone = K.normal_cone_of(vset)
    if check:
        hits = [
            vs
            for vs in K.faces()
            if vset <= vs and K.normal_cone_of(vs).relint_contains(w)
        ]
        if hits != [vset]:
            raise VerificationFailure(
                "touching cone disagrees with the normal cone of the exposed face"
            )
    return cone


def minkowski_sum(K: Polytope, L: Polytope) -> Polytope:
    if K.n != L.n:
        raise DimensionMismatch("Minkowski sum needs equal ambient dimensions")
    P, _ = sum_with_decomposition([K, L])
    return P


def sum_with_decomposition(
    polys: Sequence[Polytope],
) -> tuple[Polytope, tuple[tuple[int, ...], ...]]:
    """Minkowski sum with, per sum vertex, the unique tuple of summand vertices.

    The decomposition exists and is unique because a point of the sum is a
    vertex exactly when it maximizes a common direction in every summand.
    """
    n = polys[0].n
    if any(p.n != n for p in polys):
        raise DimensionMismatch("all summands must share the ambient dimension")
    cloud: dict[Vec, list[tuple[int, ...]]] = {
        v: [(i,)] for i, v in enumerate(polys[0].vertices)
    }
    for p in polys[1:]:
        new: dict[Vec, list[tuple[int, ...]]] = {}
        for pt, decs in cloud.items():
            for j, w in enumerate(p.vertices):
                q = vadd(pt, w)
                entry = new.setdefault(q, [])
                entry.extend(d + (j,) for d in decs)
        cloud = new
        if len(cloud) > 50_000:
            raise GeometryError("Minkowski sum candidate cloud exceeds the desk-scale budget")
    pts = sorted(cloud)
    extreme = set(map(tuple, _extreme_points(pts, n)))
    kept = [p for p in pts if p in extreme]
    decomps = []
    for p in kept:
        decs = cloud[p]
        if len(decs) != 1:
            raise VerificationFailure("a sum vertex decomposed in more than one way")
        decomps.append(decs[0])
    return Polytope(kept, n, _trusted=True), tuple(decomps)


def scaled_sum_from_decomposition(
    polys: Sequence[Polytope],
    decomps: Sequence[tuple[int, ...]],
    template: Polytope,
    lams: Sequence[Fraction],
) -> Polytope:
    """sum_i lam_i * polys[i] for lam_i > 0, reusing the unscaled combinatorics.

    Valid because the normal fan of a Minkowski sum does not depend on the
    (strictly positive) scaling of the summands.
    """
    if any(rat(l) <= 0 for l in lams):
        raise PreconditionFailure("combinatorial transfer requires strictly positive weights")
    if template.dim != template.n:
        raise PreconditionFailure("combinatorial transfer is only used for full-dimensional sums")
    verts = []
    for dec in decomps:
        x = tuple(Fraction(0) for _ in range(template.n))
        for lam, poly, j in zip(lams, polys, dec):
            x = vadd(x, vscale(lam, poly.vertices[j]))
        verts.append(x)
    P = Polytope(verts, template.n, _trusted=True)
    facets = []
    for f in template.facets():
        off = max(dot(f.normal, v) for v in verts)
        facets.append(Facet(f.normal, off, f.vertex_set))
    P._cache["facets"] = tuple(facets)
    v0 = min(verts)
    P._cache["affine"] = (v0, template.direction_basis, tuple(vsub(v, v0) for v in verts))
    return P


def project(K: Polytope, v) -> "ProjectedBody":
    """Orthogonal projection onto v^perp in canonical integer coordinates."""
    w = as_int_vector(v)
    if len(w) != K.n:
        raise DimensionMismatch("projection direction dimension mismatch")
    basis = linalg.integer_kernel_basis([list(w)])
    wn = dot(w, w)
    shadow = []
    for p in K.vertices:
        t = dot(w, p) / wn
        q = vsub(p, vscale(t, w))
        shadow.append(tuple(linalg.coords_in_basis(basis, q)))
    body = _hull_any(shadow, K.n - 1)
    return ProjectedBody(body, tuple(basis), tuple(w))


@dataclass(frozen=True)
class ProjectedBody:
    """A projected polytope in the canonical basis of v^perp."""

    body: Polytope
    basis: tuple[linalg.IntVec, ...]
    direction: linalg.IntVec

    def embed_point(self, y: Sequence) -> Vec:
        return linalg.from_coords(self.basis, y)

    def functional_to_coords(self, u_ambient) -> linalg.IntVec:
        """Map an ambient direction u in v^perp to its coordinate functional."""
        u = as_int_vector(u_ambient)
        if dot(u, self.direction) != 0:
            raise PreconditionFailure("direction is not orthogonal to the projection direction")
        return linalg.primitive([dot(b, u) for b in self.basis])

    def functional_to_ambient(self, w_coords) -> linalg.IntVec:
        coeffs = linalg.solve_linear(linalg.gram_matrix(self.basis), list(w_coords))
        assert coeffs is not None
        amb = [sum(c * b[j] for c, b in zip(coeffs, self.basis)) for j in range(len(self.direction))]
        return linalg.primitive(amb)


def polar(K: Polytope) -> Polytope:
    """Polar polytope; requires the origin in the interior."""
    if K.dim != K.n:
        raise PreconditionFailure("polar needs a full-dimensional polytope")
    origin = tuple(Fraction(0) for _ in range(K.n))
    for f in K.facets():
        if f.offset <= 0:
            raise PreconditionFailure("origin is not an interior point")
    del origin
    pts = [tuple(Fraction(c, 1) / f.offset for c in f.normal) for f in K.facets()]
    return _hull_any(pts, K.n)


def volume(K: Polytope) -> Fraction:
    return K.volume()
