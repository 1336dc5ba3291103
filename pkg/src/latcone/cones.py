"""Rational polyhedral cones with exact dual descriptions and Hilbert bases.

A cone is stored by integer ray generators; the inequality description (the
dual cone's rays, called facets here) is computed on demand by an incremental
double description sweep and cached. Non-pointed cones are legal and are
presented with +/- ray pairs along the lineality space. All arithmetic is
exact.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .intlattice import (
    IntMatrix,
    Vector,
    dot,
    integer_inverse,
    is_zero,
    kernel_basis,
    primitive,
    rank_of_vectors,
    scaled_inverse,
    snf,
    vec,
    vec_add,
    vec_neg,
    vec_scale,
    vec_sub,
)


class ConeError(ValueError):
    """Raised when a cone operation's precondition fails."""


@dataclass(frozen=True)
class ShapeFlags:
    pointed: bool
    full_dimensional: bool


def _clean_rays(ambient_rank: int, rays: Iterable[Sequence[int]]) -> tuple[Vector, ...]:
    seen = set()
    out = []
    for r in rays:
        r = vec(r)
        if len(r) != ambient_rank:
            raise ConeError("ray length does not match ambient rank")
        if is_zero(r):
            raise ConeError("zero vector is not a ray")
        p = primitive(r)
        if p not in seen:
            seen.add(p)
            out.append(p)
    return tuple(sorted(out))


class Cone:
    """cone(rays) in Q^ambient_rank with lattice Z^ambient_rank.

    Rays are normalized to primitive vectors, deduplicated and sorted; the
    facet list is memoized on first use (idempotent fill, safe under
    concurrent access since the computation is deterministic and the single
    assignment is atomic).
    """

    __slots__ = ("ambient_rank", "rays", "_facets", "_lineality", "_extreme")

    def __init__(self, ambient_rank: int, rays: Iterable[Sequence[int]] = ()) -> None:
        if ambient_rank < 0:
            raise ConeError("negative ambient rank")
        self.ambient_rank = int(ambient_rank)
        self.rays = _clean_rays(self.ambient_rank, rays)
        self._facets: Optional[tuple[Vector, ...]] = None
        self._lineality: Optional[tuple[Vector, ...]] = None
        self._extreme: Optional[tuple[Vector, ...]] = None

    def __repr__(self) -> str:
        return f"Cone(rank={self.ambient_rank}, rays={list(self.rays)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cone):
            return NotImplemented
        return self.ambient_rank == other.ambient_rank and self.rays == other.rays

    def __hash__(self) -> int:
        return hash((self.ambient_rank, self.rays))

    @property
    def facets(self) -> tuple[Vector, ...]:
        """Primitive covectors h with the cone equal to {x : h.x >= 0 for all h}.

        This is exactly the canonical ray list of the dual cone; for a
        non-full-dimensional cone it contains +/- pairs cutting out the span.
        """
        if self._facets is None:
            self._facets = dual_rays(self.rays, self.ambient_rank)
        return self._facets

    def dual(self) -> "Cone":
        return Cone(self.ambient_rank, self.facets)

    def contains(self, v: Sequence[int]) -> bool:
        v = vec(v)
        if len(v) != self.ambient_rank:
            raise ConeError("vector length does not match ambient rank")
        return all(dot(f, v) >= 0 for f in self.facets)

    def contains_cone(self, inner: "Cone") -> bool:
        if inner.ambient_rank != self.ambient_rank:
            raise ConeError("ambient ranks differ")
        return all(self.contains(r) for r in inner.rays)

    def lineality_basis(self) -> tuple[Vector, ...]:
        """Saturated lattice basis of the lineality space cone cap -cone."""
        if self._lineality is None:
            if not self.facets:
                self._lineality = tuple(
                    tuple(1 if i == j else 0 for j in range(self.ambient_rank))
                    for i in range(self.ambient_rank)
                )
            else:
                matrix = IntMatrix.from_rows(list(self.facets), cols=self.ambient_rank)
                self._lineality = tuple(kernel_basis(matrix))
        return self._lineality

    def shape_flags(self) -> ShapeFlags:
        return ShapeFlags(
            pointed=not self.lineality_basis(),
            full_dimensional=rank_of_vectors(self.rays) == self.ambient_rank,
        )

    def extreme_rays(self) -> tuple[Vector, ...]:
        """Irredundant generators modulo lineality (empty for a linear space)."""
        if self._extreme is None:
            lin_dim = len(self.lineality_basis())
            target = self.ambient_rank - lin_dim - 1
            out = []
            for r in self.rays:
                tight = [f for f in self.facets if dot(f, r) == 0]
                if rank_of_vectors(tight) == target:
                    out.append(r)
            self._extreme = tuple(sorted(set(out)))
        return self._extreme

    def canonical_rays(self) -> tuple[Vector, ...]:
        """Extreme rays plus +/- pairs spanning the lineality lattice."""
        out = set(self.extreme_rays())
        for b in self.lineality_basis():
            p = primitive(b)
            out.add(p)
            out.add(vec_neg(p))
        return tuple(sorted(out))


def cone_from_inequalities(covectors: Sequence[Sequence[int]], ambient_rank: int) -> Cone:
    """The cone {x : h.x >= 0 for every h}, as a ray-presented Cone."""
    rows = []
    for h in covectors:
        h = vec(h)
        if len(h) != ambient_rank:
            raise ConeError("covector length does not match ambient rank")
        if not is_zero(h):
            rows.append(primitive(h))
    return Cone(ambient_rank, dual_rays(tuple(rows), ambient_rank))


def dual_rays(rays: Sequence[Vector], ambient_rank: int) -> tuple[Vector, ...]:
    """Canonical ray list of {y : y.r >= 0 for all r} by double description.

    Starts from the full space (lineality = standard basis) and intersects
    one halfspace per input ray, maintaining a lineality lattice basis plus a
    list of extreme rays; after each step non-extreme rays are pruned by the
    tight-constraint rank test, so no adjacency bookkeeping is needed.
    """
    n = ambient_rank
    if n == 0:
        return ()
    lin: list[Vector] = [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    extremes: list[Vector] = []
    processed: list[Vector] = []

    for h in rays:
        if is_zero(h):
            continue
        cut_index = next((k for k, b in enumerate(lin) if dot(h, b) != 0), None)
        if cut_index is not None:
            b = lin.pop(cut_index)
            if dot(h, b) < 0:
                b = vec_neg(b)
            hb = dot(h, b)
            lin = [
                primitive(vec_sub(vec_scale(hb, l), vec_scale(dot(h, l), b)))
                for l in lin
            ]
            adjusted = []
            for r in extremes:
                cand = vec_sub(vec_scale(hb, r), vec_scale(dot(h, r), b))
                if not is_zero(cand):
                    adjusted.append(primitive(cand))
            processed.append(h)
            extremes = _prune([b] + adjusted, processed, lin, n)
        else:
            pos = [r for r in extremes if dot(h, r) > 0]
            zero = [r for r in extremes if dot(h, r) == 0]
            neg = [r for r in extremes if dot(h, r) < 0]
            processed.append(h)
            if not neg:
                extremes = pos + zero
                continue
            combos = []
            for p in pos:
                hp = dot(h, p)
                for q in neg:
                    cand = vec_sub(vec_scale(hp, q), vec_scale(dot(h, q), p))
                    if not is_zero(cand):
                        combos.append(primitive(cand))
            # surviving extreme rays of the old cone stay extreme after an
            # honest cut; only the fresh combinations need the rank test
            extremes = sorted(set(pos + zero) | set(_prune(combos, processed, lin, n)))

    out = set(extremes)
    for b in lin:
        p = primitive(b)
        out.add(p)
        out.add(vec_neg(p))
    return tuple(sorted(out))


def _prune(candidates: Sequence[Vector], processed: Sequence[Vector],
           lin: Sequence[Vector], n: int) -> list[Vector]:
    """Keep exactly the extreme rays of {y : h.y >= 0 for h in processed}.

    A candidate r is extreme iff the constraints tight at r cut the minimal
    face down to lineality + Q.r, i.e. their rank is n - dim(lin) - 1. Rays
    falling into the lineality span are dropped.
    """
    lin_rank = len(lin)
    target = n - lin_rank - 1
    keep = []
    seen = set()
    for r in candidates:
        if r in seen:
            continue
        seen.add(r)
        if lin and rank_of_vectors(list(lin) + [r]) == lin_rank:
            continue
        tight = [h for h in processed if dot(h, r) == 0]
        if rank_of_vectors(tight) == target:
            keep.append(r)
    return sorted(keep)


def _span_coordinates(rays: Sequence[Vector], ambient_rank: int) -> tuple[IntMatrix, list[Vector]]:
    """Basis of the saturated span lattice plus the rays in those coordinates."""
    matrix = IntMatrix.from_columns(list(rays), rows=ambient_rank)
    decomposition = snf(matrix)
    d = len(decomposition.invariant_factors)
    basis = IntMatrix.from_columns(
        [decomposition.U_inv.col(i) for i in range(d)], rows=ambient_rank)
    coords = []
    for r in rays:
        w = decomposition.U.apply(r)
        if any(w[i] != 0 for i in range(d, ambient_rank)):
            raise AssertionError("ray outside its own span")
        coords.append(w[:d])
    return basis, coords


def _parallelepiped_points(simplex: Sequence[Vector],
                           snf_cache: Optional[dict] = None) -> list[Vector]:
    """Nonzero lattice points of {sum t_i s_i : 0 <= t_i < 1} for an
    independent generator tuple, enumerated through the quotient group."""
    d = len(simplex)
    S = IntMatrix.from_columns(list(simplex), rows=d)
    key = tuple(simplex)
    decomposition = snf_cache.get(key) if snf_cache is not None else None
    if decomposition is None:
        decomposition = snf(S)
        if snf_cache is not None:
            snf_cache[key] = decomposition
    diag = [decomposition.D[i, i] for i in range(d)]
    det = 1
    for x in diag:
        det *= x
    if det == 0:
        raise AssertionError("degenerate simplex")
    if det == 1:
        return []
    # det * S^{-1} = V diag(det/d_i) U, exact in integers
    mid = IntMatrix(d, d, tuple(
        det // diag[i] if i == j else 0 for i in range(d) for j in range(d)))
    adj = decomposition.V @ mid @ decomposition.U
    u_inv = decomposition.U_inv
    points = set()
    for residue in itertools.product(*(range(x) for x in diag)):
        if all(v == 0 for v in residue):
            continue
        x = u_inv.apply(residue)
        scaled = adj.apply(x)
        floors = [c // det for c in scaled]
        point = vec_sub(x, S.apply(floors))
        if not is_zero(point):
            points.add(point)
    return sorted(points)


def _placing_triangulation(rays: Sequence[Vector], dim: int,
                           snf_cache: Optional[dict] = None) -> list[tuple[Vector, ...]]:
    """Triangulate a pointed full-dimensional cone over the given ray order.

    Beneath-beyond: each new ray either extends the span (every simplex gains
    it) or is glued onto the visible boundary facets of the current subcone.
    """
    simplices: list[tuple[Vector, ...]] = []
    placed: list[Vector] = []
    normal_cache: dict[tuple[Vector, ...], list[Vector]] = {}
    for r in rays:
        if not placed:
            simplices = [(r,)]
            placed.append(r)
            continue
        old_rank = rank_of_vectors(placed)
        if rank_of_vectors(placed + [r]) > old_rank:
            simplices = [s + (r,) for s in simplices]
            placed.append(r)
            continue
        # r lies in the current span but outside the current subcone (it is an
        # extreme ray of the final cone, so it cannot be inside a prefix cone).
        counts: dict[frozenset, int] = {}
        facet_info: dict[frozenset, tuple[tuple[Vector, ...], int]] = {}
        for s in simplices:
            for omit in range(len(s)):
                f = s[:omit] + s[omit + 1 :]
                key = frozenset(f)
                counts[key] = counts.get(key, 0) + 1
                facet_info[key] = (s, omit)
        new_simplices = []
        for key, count in sorted(counts.items(), key=lambda kv: sorted(kv[0])):
            if count != 1:
                continue
            s, omit = facet_info[key]
            h = _simplex_facet_normal(s, omit, placed, normal_cache, snf_cache)
            if dot(h, r) < 0:
                new_simplices.append(s[:omit] + s[omit + 1 :] + (r,))
        simplices.extend(new_simplices)
        placed.append(r)
    return simplices


def _simplex_facet_normal(simplex: tuple[Vector, ...], omit: int,
                          placed: Sequence[Vector],
                          cache: dict[tuple[Vector, ...], list[Vector]],
                          snf_cache: Optional[dict]) -> Vector:
    """Normal of the facet of `simplex` omitting ray `omit`, oriented towards
    the simplex. For a square simplex all its facet normals are the rows of
    the scaled inverse; the lower-dimensional phase falls back to a kernel
    computation inside span(placed)."""
    n = len(placed[0])
    if len(simplex) == n:
        normals = cache.get(simplex)
        if normals is None:
            decomposition = snf_cache.get(simplex) if snf_cache is not None else None
            if decomposition is None:
                S = IntMatrix.from_columns(list(simplex), rows=n)
                decomposition = snf(S)
                if snf_cache is not None:
                    snf_cache[simplex] = decomposition
            diag = [decomposition.D[i, i] for i in range(n)]
            det = 1
            for x in diag:
                det *= x
            mid = IntMatrix(n, n, tuple(
                det // diag[i] if i == j else 0 for i in range(n) for j in range(n)))
            adj = decomposition.V @ mid @ decomposition.U
            # row i pairs to det > 0 with ray i and to 0 with the others
            normals = [primitive(adj.row(i)) for i in range(n)]
            cache[simplex] = normals
        return normals[omit]
    facet = simplex[:omit] + simplex[omit + 1 :]
    rows = [list(f) for f in facet]
    for w in _orthogonal_complement(placed, n):
        rows.append(list(w))
    kernel = kernel_basis(IntMatrix.from_rows(rows, cols=n))
    if len(kernel) != 1:
        raise AssertionError("facet normal is not unique")
    h = primitive(kernel[0])
    return h if dot(h, simplex[omit]) > 0 else vec_neg(h)


def _orthogonal_complement(vectors: Sequence[Vector], n: int) -> list[Vector]:
    return kernel_basis(IntMatrix.from_rows([list(v) for v in vectors], cols=n))


def hilbert_basis(cone: Cone) -> list[Vector]:
    """Unique minimal generating set of cone cap Z^rank, lexicographically
    sorted. Only defined for pointed cones."""
    if cone.lineality_basis():
        raise ConeError("cone has lines; Hilbert basis undefined in this artifact")
    rays = cone.extreme_rays()
    if not rays:
        return []
    n = cone.ambient_rank
    span_dim = rank_of_vectors(rays)
    if span_dim == n:
        return [vec(h) for h in _hilbert_full(rays, n, cone.facets)]
    basis, coords = _span_coordinates(rays, n)
    inner = _hilbert_full(tuple(sorted(coords)), span_dim, None)
    return sorted(basis.apply(h) for h in inner)


def _hilbert_full(rays: tuple[Vector, ...], dim: int,
                  known_facets: Optional[tuple[Vector, ...]]) -> list[Vector]:
    facets = known_facets if known_facets is not None else dual_rays(rays, dim)

    def in_cone(v: Vector) -> bool:
        for f in facets:
            if dot(f, v) < 0:
                return False
        return True

    snf_cache: dict = {}
    candidates = set(rays)
    for simplex in _placing_triangulation(rays, dim, snf_cache):
        if len(simplex) != dim:
            raise AssertionError("triangulation produced a degenerate simplex")
        for p in _parallelepiped_points(simplex, snf_cache):
            candidates.add(p)
    candidates = [v for v in candidates if in_cone(v)]

    grading = tuple(sum(col) for col in zip(*facets))
    candidates.sort(key=lambda v: (dot(grading, v), v))
    basis: list[Vector] = []
    for v in candidates:
        reducible = False
        for w in basis:
            if in_cone(vec_sub(v, w)):
                reducible = True
                break
        if not reducible:
            basis.append(v)
    return sorted(basis)


def enumerate_bounded(cone: Cone, height: Sequence[int], bound: int) -> list[Vector]:
    """All lattice points v of the cone with height.v <= bound, ordered by
    (height, lex). The height must be strictly positive on every ray."""
    height = vec(height)
    if len(height) != cone.ambient_rank:
        raise ConeError("height length does not match ambient rank")
    if bound < 0:
        raise ConeError("negative enumeration bound")
    for r in cone.rays:
        if dot(height, r) <= 0:
            raise ConeError("unbounded enumeration")
    origin = (0,) * cone.ambient_rank
    points = {origin}
    generators = hilbert_basis(cone)
    frontier = [origin]
    while frontier:
        next_frontier = []
        for p in frontier:
            for g in generators:
                q = vec_add(p, g)
                if dot(height, q) <= bound and q not in points:
                    points.add(q)
                    next_frontier.append(q)
        frontier = next_frontier
    return sorted(points, key=lambda v: (dot(height, v), v))
