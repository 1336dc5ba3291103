"""Comb curves against a simple normal crossings boundary.

A comb is a handle curve with rational teeth attached at nodes; the data kept
here is purely numerical: the tooth contact vectors against the n boundary
divisors through the center, the handle genus, and the normal-bundle degrees
of the boundary divisors restricted to the handle. From this the module
builds the associated monoid system, its colimit (the minimal base monoid),
the admissibility verdict, the degree-forced contact vector at the marked
point, and the rank/degree bookkeeping used by smoothing arguments.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .fsmonoid import (
    ColimitResult,
    FsMonoid,
    MonoidDiagram,
    MonoidMorphism,
    fs_colimit,
    zero_preimage_trivial,
)
from .intlattice import IntMatrix, Vector, span_report, vec

VERDICT_LIFTS = "LIFTS"
VERDICT_DEGREE_CONSISTENT_ONLY = "DEGREE_CONSISTENT_ONLY"
VERDICT_FAILS = "FAILS"


@dataclass(frozen=True)
class CombData:
    """n boundary divisors, m teeth with contact vectors, handle data."""

    n: int
    genus: int
    teeth: tuple[Vector, ...]
    handle_normal_degrees: Vector

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("comb needs at least one boundary divisor")
        if self.genus < 0:
            raise ValueError("negative genus")
        object.__setattr__(self, "teeth", tuple(vec(t) for t in self.teeth))
        object.__setattr__(self, "handle_normal_degrees", vec(self.handle_normal_degrees))
        if len(self.handle_normal_degrees) != self.n:
            raise ValueError("handle degree vector length does not match n")
        for tooth in self.teeth:
            if len(tooth) != self.n:
                raise ValueError("tooth vector length does not match n")
            if any(c < 0 for c in tooth):
                raise ValueError("tooth contact orders must be nonnegative")
            if all(c == 0 for c in tooth):
                raise ValueError("tooth with trivial contact")

    @property
    def m(self) -> int:
        return len(self.teeth)


_FREE_MONOIDS: dict[int, FsMonoid] = {}


def _free_monoid(rank: int) -> FsMonoid:
    # shared immutable instances so the orthant facet caches are reused
    monoid = _FREE_MONOIDS.get(rank)
    if monoid is None:
        monoid = FsMonoid(rank, [tuple(1 if i == j else 0 for j in range(rank))
                                 for i in range(rank)])
        monoid._is_sharp = True
        monoid._is_saturated = True
        _FREE_MONOIDS[rank] = monoid
    return monoid


def build_system(comb: CombData) -> MonoidDiagram:
    """The monoid system of the comb: one copy of N^n for the handle, one
    N^n + N per tooth, glued by delta |-> delta + (tooth . delta) l_i."""
    n = comb.n
    handle = _free_monoid(n)
    objects = [handle]
    arrows = []
    for i, tooth in enumerate(comb.teeth):
        target = _free_monoid(n + 1)
        rows = [[1 if k == j else 0 for j in range(n)] for k in range(n)]
        rows.append(list(tooth))
        matrix = IntMatrix.from_rows(rows, cols=n)
        objects.append(target)
        arrows.append((0, i + 1, MonoidMorphism(handle, target, matrix)))
    return MonoidDiagram(tuple(objects), tuple(arrows))


@dataclass(frozen=True)
class MinimalMonoidResult:
    monoid: FsMonoid
    chi_maps: tuple[MonoidMorphism, ...]
    theta_maps: tuple[MonoidMorphism, ...]
    handle_map: MonoidMorphism
    admissible: bool


def minimal_monoid(comb: CombData) -> MinimalMonoidResult:
    """Colimit of the comb system with its structure maps.

    chi_maps[i] restricts the i-th tooth object's structure map to the tooth
    chart factor, theta_maps[i] to the node factor; admissible records that
    none of them (nor the handle map) kills a nonzero monoid element.
    """
    n = comb.n
    diagram = build_system(comb)
    result: ColimitResult = fs_colimit(diagram)
    colimit = result.colimit
    handle_map = result.structure_maps[0]
    chi_maps = []
    theta_maps = []
    for i in range(comb.m):
        struct = result.structure_maps[i + 1]
        chi_cols = [struct.matrix.col(j) for j in range(n)]
        theta_col = [struct.matrix.col(n)]
        chi_maps.append(MonoidMorphism(
            _free_monoid(n), colimit,
            IntMatrix.from_columns(chi_cols, rows=struct.matrix.rows)))
        theta_maps.append(MonoidMorphism(
            _free_monoid(1), colimit,
            IntMatrix.from_columns(theta_col, rows=struct.matrix.rows)))
    admissible = zero_preimage_trivial(handle_map) and all(
        zero_preimage_trivial(f) for f in chi_maps + theta_maps)
    return MinimalMonoidResult(colimit, tuple(chi_maps), tuple(theta_maps),
                               handle_map, admissible)


@dataclass(frozen=True)
class LiftResult:
    contact_at_infinity: Vector
    verdict: str
    is_a1_curve: bool


def lift_contact_vector(comb: CombData,
                        prescribed: Optional[Sequence[int]] = None) -> LiftResult:
    """Contact vector at the handle marking forced by the degree identity
    c_infinity_j = d_j + sum_i c_ij, plus the lift verdict.

    Genus zero with all coordinates nonnegative lifts (degree equality of
    line bundles on a rational curve is an isomorphism); positive genus only
    earns DEGREE_CONSISTENT_ONLY since the isomorphism condition is a point
    on the Jacobian this artifact does not decide. A negative coordinate can
    never be a contact order, so the comb fails. A prescribed contact vector
    is rejected unless it matches the derived one.
    """
    c_infinity = tuple(
        comb.handle_normal_degrees[j] + sum(tooth[j] for tooth in comb.teeth)
        for j in range(comb.n))
    if prescribed is not None and vec(prescribed) != c_infinity:
        raise ValueError("prescribed contact at infinity is inconsistent with the degree identity")
    if any(c < 0 for c in c_infinity):
        return LiftResult(c_infinity, VERDICT_FAILS, False)
    if comb.genus == 0:
        return LiftResult(c_infinity, VERDICT_LIFTS, any(c != 0 for c in c_infinity))
    return LiftResult(c_infinity, VERDICT_DEGREE_CONSISTENT_ONLY, False)


@dataclass(frozen=True)
class FreenessReport:
    fully_free: bool
    primitive: bool
    index: Optional[int]


def center_freeness(contact_orders: Sequence[Sequence[int]], P: FsMonoid) -> FreenessReport:
    """Span report of a set of contact orders inside the dual chart lattice.

    Fully free: the covectors span rationally; primitive: they span the whole
    dual lattice. Covectors outside the dual cone of P cannot be contact
    orders of curves in the center and are rejected.
    """
    dual = P.monoid_cone.dual()
    cleaned = []
    for c in contact_orders:
        c = vec(c)
        if len(c) != P.ambient_rank:
            raise ValueError("contact order length does not match chart rank")
        if not dual.contains(c):
            raise ValueError("not an admissible contact order")
        cleaned.append(c)
    report = span_report(cleaned, P.ambient_rank)
    return FreenessReport(report.spans_rationally, report.spans_lattice, report.index)


@dataclass(frozen=True)
class SmoothingProfile:
    rank: int
    transform_degree: int
    spanning: bool


def smoothing_profile(comb: CombData) -> SmoothingProfile:
    """Rank and degree of the normal-direction elementary transform along the
    teeth (one degree drop per tooth), plus whether the teeth vectors span
    rationally - a necessary condition for the generic-ampleness heuristic."""
    report = span_report(list(comb.teeth), comb.n)
    return SmoothingProfile(comb.n, -comb.m, report.spans_rationally)
