"""Root systems and the curve-class combinatorics of wonderful compactifications.

The group case is set up in hand-checkable coordinates: for a simply
connected group the weight lattice gets the fundamental-weight basis and its
dual the coroot basis, so every color valuation is a standard basis vector;
for an adjoint group the root/coweight bases are used instead and the color
valuations become the Cartan matrix columns. The valuation cone is the
negative Weyl chamber in those coordinates. General spherical data beyond
groups is accepted as explicit input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cones import Cone, cone_from_inequalities, enumerate_bounded, hilbert_basis
from .dfchart import DFChart, enumerate_admissible
from .fsmonoid import FsMonoid, saturate
from .intlattice import (
    CokernelStructure,
    IntMatrix,
    Vector,
    cokernel_structure,
    is_zero,
    span_report,
    vec,
    vec_neg,
)

SIMPLY_CONNECTED = "simply_connected"
ADJOINT = "adjoint"

COLOR_TYPES = ("a", "a'", "b")

_EXPECTED_DETERMINANT = {
    "A": lambda n: n + 1,
    "B": lambda n: 2,
    "C": lambda n: 2,
    "D": lambda n: 4,
    "E": lambda n: {6: 3, 7: 2, 8: 1}[n],
    "F": lambda n: 1,
    "G": lambda n: 1,
}

_RANK_BOUNDS = {"A": (1, None), "B": (2, None), "C": (3, None), "D": (4, None),
                "E": (6, 8), "F": (4, 4), "G": (2, 2)}


@dataclass(frozen=True)
class RootSystem:
    type_label: str
    rank: int
    cartan: IntMatrix


def _cartan_entries(family: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def chain(indices: Sequence[int]) -> None:
        for x, y in zip(indices, indices[1:]):
            a[x][y] = -1
            a[y][x] = -1

    if family == "A":
        chain(range(n))
    elif family == "B":
        chain(range(n))
        a[n - 2][n - 1] = -2  # last root short
    elif family == "C":
        chain(range(n))
        a[n - 1][n - 2] = -2  # last root long
    elif family == "D":
        chain(range(n - 1))
        a[n - 1][n - 3] = -1
        a[n - 3][n - 1] = -1
    elif family == "E":
        chain([0] + list(range(2, n)))
        a[1][3] = -1
        a[3][1] = -1
    elif family == "F":
        chain(range(4))
        a[1][2] = -2
    elif family == "G":
        a[0][1] = -1
        a[1][0] = -3
    return a


def _validate_cartan(matrix: IntMatrix, expected_det: int) -> None:
    n = matrix.rows
    if matrix.cols != n or n == 0:
        raise ValueError("Cartan matrix must be square and nonempty")
    for i in range(n):
        if matrix[i, i] != 2:
            raise ValueError("Cartan diagonal entries must be 2")
        for j in range(n):
            if i != j:
                if matrix[i, j] > 0:
                    raise ValueError("Cartan off-diagonal entries must be <= 0")
                if (matrix[i, j] == 0) != (matrix[j, i] == 0):
                    raise ValueError("Cartan zero pattern must be symmetric")
    # connectivity of the Dynkin graph
    seen = {0}
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(n):
            if j not in seen and matrix[i, j] != 0:
                seen.add(j)
                frontier.append(j)
    if len(seen) != n:
        raise ValueError("Dynkin graph is disconnected")
    # finite type: all leading principal minors positive
    for k in range(1, n + 1):
        minor = IntMatrix.from_rows(
            [[matrix[i, j] for j in range(k)] for i in range(k)], cols=k)
        if minor.det() <= 0:
            raise ValueError("Cartan matrix is not of finite type")
    if matrix.det() != expected_det:
        raise ValueError("Cartan determinant does not match the named type")


def build_root_system(type_label: str) -> RootSystem:
    """Standard Cartan matrix for a simple type, Bourbaki numbering."""
    match = re.fullmatch(r"([A-G])(\d+)", type_label.strip())
    if not match:
        raise ValueError(f"unknown root system label: {type_label!r}")
    family, rank = match.group(1), int(match.group(2))
    if family not in _RANK_BOUNDS:
        raise ValueError(f"unknown root system family: {family}")
    low, high = _RANK_BOUNDS[family]
    if rank < low or (high is not None and rank > high):
        raise ValueError(f"rank {rank} is out of range for type {family}")
    matrix = IntMatrix.from_rows(_cartan_entries(family, rank), cols=rank)
    _validate_cartan(matrix, _EXPECTED_DETERMINANT[family](rank))
    return RootSystem(f"{family}{rank}", rank, matrix)


def dominant_chamber_cone(rs: RootSystem) -> Cone:
    """{x : (cartan row_j) . x >= 0 for all j}, the dominant chamber in the
    basis dual to the simple roots."""
    rows = [rs.cartan.row(i) for i in range(rs.rank)]
    return cone_from_inequalities(rows, rs.rank)


@dataclass(frozen=True)
class Color:
    name: str
    valuation: Vector
    color_type: str

    def __post_init__(self) -> None:
        if self.color_type not in COLOR_TYPES:
            raise ValueError(f"unknown color type: {self.color_type!r}")
        object.__setattr__(self, "valuation", vec(self.valuation))


@dataclass(frozen=True)
class SphericalData:
    """Weight-lattice rank, valuation cone, colors, and the asserted inputs.

    The two geometric hypotheses that cannot be computed from this data
    (Kronecker intersection with a basis of invariant curves, and the
    existence of that basis) travel as explicit boolean assertions so reports
    can distinguish computed facts from asserted ones.
    """

    lambda_rank: int
    valuation_cone: Cone
    colors: tuple[Color, ...]
    boundary_valuations: Optional[IntMatrix] = None
    intersection_is_kronecker: bool = True
    hyp_knop_asserted: bool = True
    coordinates: str = ""

    def __post_init__(self) -> None:
        if self.lambda_rank < 1:
            raise ValueError("lattice rank must be positive")
        if self.valuation_cone.ambient_rank != self.lambda_rank:
            raise ValueError("valuation cone rank does not match the lattice rank")
        flags = self.valuation_cone.shape_flags()
        if not flags.pointed or not flags.full_dimensional:
            raise ValueError("valuation cone must be pointed and full-dimensional")
        if not self.colors:
            raise ValueError("at least one color is required")
        for color in self.colors:
            if len(color.valuation) != self.lambda_rank:
                raise ValueError("color valuation length does not match the lattice rank")
        if self.boundary_valuations is not None:
            if self.boundary_valuations.cols != self.lambda_rank:
                raise ValueError("boundary valuation width does not match the lattice rank")


def group_wonderful_data(rs: RootSystem, isogeny: str) -> SphericalData:
    """Spherical data of the wonderful compactification of a semisimple group.

    Simply connected: coroot coordinates on the valuation side, so every
    color valuation is a standard basis vector. Adjoint: coweight
    coordinates, so the color valuations are the Cartan matrix columns. In
    both cases the valuation cone is the negative Weyl chamber and every
    color has type (b).
    """
    r = rs.rank
    if isogeny == SIMPLY_CONNECTED:
        valuations = [tuple(1 if i == j else 0 for j in range(r)) for i in range(r)]
        chamber = dominant_chamber_cone(rs)
        cone = Cone(r, [vec_neg(ray) for ray in chamber.rays])
        coordinates = "coroot basis of the valuation lattice; weight basis on the weight lattice"
    elif isogeny == ADJOINT:
        valuations = [rs.cartan.col(i) for i in range(r)]
        cone = Cone(r, [tuple(-1 if i == j else 0 for j in range(r)) for i in range(r)])
        coordinates = "coweight basis of the valuation lattice; root basis on the weight lattice"
    else:
        raise ValueError(f"unknown isogeny type: {isogeny!r}")
    colors = tuple(Color(f"D{i + 1}", valuations[i], "b") for i in range(r))
    boundary = IntMatrix.from_rows([list(ray) for ray in cone.rays], cols=r)
    return SphericalData(
        lambda_rank=r,
        valuation_cone=cone,
        colors=colors,
        boundary_valuations=boundary,
        intersection_is_kronecker=True,
        hyp_knop_asserted=True,
        coordinates=coordinates,
    )


def distinguished_chart(data: SphericalData) -> DFChart:
    """Chart monoid dual(valuation cone) cap weight lattice, with the matrix
    sending the i-th basis curve class to minus the i-th color valuation."""
    flags = data.valuation_cone.shape_flags()
    if not flags.pointed or not flags.full_dimensional:
        raise ValueError("valuation cone must be pointed and full-dimensional")
    dual = data.valuation_cone.dual()
    monoid = saturate(FsMonoid(data.lambda_rank, hilbert_basis(dual)))
    rows = [list(vec_neg(color.valuation)) for color in data.colors]
    L = IntMatrix.from_rows(rows, cols=data.lambda_rank)
    return DFChart(monoid, len(data.colors), L)


@dataclass(frozen=True)
class HypothesisReport:
    knop: bool
    cone: bool
    all_colors_type_b: bool


def check_hypotheses(data: SphericalData) -> HypothesisReport:
    """knop: the asserted invariant-curve-basis hypothesis; cone: minus the
    valuation cone sits inside the cone of color valuations (computed);
    plus the color-type gate."""
    color_cone = Cone(data.lambda_rank, [c.valuation for c in data.colors])
    minus_valuation = Cone(data.lambda_rank,
                           [vec_neg(r) for r in data.valuation_cone.rays])
    return HypothesisReport(
        knop=data.intersection_is_kronecker and data.hyp_knop_asserted,
        cone=color_cone.contains_cone(minus_valuation),
        all_colors_type_b=all(c.color_type == "b" for c in data.colors),
    )


@dataclass(frozen=True)
class ClassifiedClass:
    curve_class: Vector
    contact: Vector
    is_a1_class: bool


def classify_curve_classes(data: SphericalData, bound: int) -> list[ClassifiedClass]:
    """All admissible nonnegative combinations of the basis curve classes up
    to total degree `bound`, with contact orders; requires both hypotheses
    and all colors of type (b)."""
    report = check_hypotheses(data)
    if not (report.knop and report.cone and report.all_colors_type_b):
        raise ValueError("classification formula not available")
    chart = distinguished_chart(data)
    s = len(data.colors)
    effective = Cone(s, [tuple(1 if i == j else 0 for j in range(s)) for i in range(s)])
    height = (1,) * s
    return [
        ClassifiedClass(adm.curve_class, adm.contact, not is_zero(adm.contact))
        for adm in enumerate_admissible(chart, effective, height, bound)
    ]


def verify_group_classification(rs: RootSystem, bound: int) -> bool:
    """Cross-check of the group classification: the classified classes of the
    simply connected group data must coincide with the direct enumeration of
    coroot-lattice points of the dominant chamber up to the same height."""
    data = group_wonderful_data(rs, SIMPLY_CONNECTED)
    classified = {c.curve_class for c in classify_curve_classes(data, bound)}
    chamber = dominant_chamber_cone(rs)
    direct = set(enumerate_bounded(chamber, (1,) * rs.rank, bound))
    return classified == direct


@dataclass(frozen=True)
class IsogenyInvariants:
    pi1_order: int
    primitive: bool
    character_group: CokernelStructure


def isogeny_invariants(data: SphericalData, chart: DFChart) -> IsogenyInvariants:
    """Lattice index of the color valuations (the fundamental-group order in
    the group case), primitivity of the center (torsion-freeness of the
    chart cokernel), and the cokernel itself (the character group)."""
    valuations = [c.valuation for c in data.colors]
    report = span_report(valuations, data.lambda_rank)
    if not report.spans_rationally:
        raise ValueError("valuation cone hypothesis violated")
    character = cokernel_structure(chart.L)
    return IsogenyInvariants(
        pi1_order=report.index,
        primitive=character.is_torsion_free,
        character_group=character,
    )
