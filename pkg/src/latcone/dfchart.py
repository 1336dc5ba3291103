"""Global boundary charts, contact orders of curve classes, admissibility.

A chart is a sharp saturated monoid P inside Z^rank together with an integer
matrix L from the chart lattice into the Picard lattice Z^pic_rank. Curve
classes live in the dual copy of Z^pic_rank with the dot-product pairing; the
contact order of a class F is the covector L^T F, and F is admissible when
that covector lies in the dual cone of P.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .cones import Cone, enumerate_bounded
from .fsmonoid import FsMonoid
from .intlattice import IntMatrix, Vector, dot, vec

CurveClass = Vector


class DFChart:
    """Chart monoid plus the line-bundle degree matrix into Pic."""

    __slots__ = ("monoid", "pic_rank", "L", "_dual_cone")

    def __init__(self, monoid: FsMonoid, pic_rank: int, L: IntMatrix) -> None:
        if not monoid.is_sharp:
            raise ValueError("chart monoid must be sharp")
        if not monoid.is_saturated:
            raise ValueError("chart monoid must be saturated")
        if pic_rank < 0:
            raise ValueError("negative Picard rank")
        if L.rows != pic_rank or L.cols != monoid.ambient_rank:
            raise ValueError("chart matrix shape does not match monoid and Picard rank")
        self.monoid = monoid
        self.pic_rank = pic_rank
        self.L = L
        self._dual_cone: Optional[Cone] = None

    @property
    def dual_cone(self) -> Cone:
        """Dual cone of cone(P); admissibility is membership in it."""
        if self._dual_cone is None:
            self._dual_cone = self.monoid.monoid_cone.dual()
        return self._dual_cone

    def __repr__(self) -> str:
        return f"DFChart(monoid={self.monoid!r}, pic_rank={self.pic_rank})"


def contact_order(chart: DFChart, curve_class: Sequence[int]) -> Vector:
    """Total contact order L^T F of a curve class, as a covector on the chart
    lattice."""
    f = vec(curve_class)
    if len(f) != chart.pic_rank:
        raise ValueError("curve class length does not match Picard rank")
    return tuple(dot(chart.L.col(j), f) for j in range(chart.L.cols))


def is_admissible(chart: DFChart, curve_class: Sequence[int]) -> bool:
    return chart.dual_cone.contains(contact_order(chart, curve_class))


@dataclass(frozen=True)
class AdmissibleClass:
    curve_class: CurveClass
    contact: Vector


def enumerate_admissible(chart: DFChart, effective_cone: Cone,
                         height: Sequence[int], bound: int) -> list[AdmissibleClass]:
    """All admissible classes of the effective cone up to the height bound,
    paired with their contact orders, in (height, lex) order. Contains 0."""
    if effective_cone.ambient_rank != chart.pic_rank:
        raise ValueError("effective cone does not live in the curve-class lattice")
    out = []
    for f in enumerate_bounded(effective_cone, height, bound):
        contact = contact_order(chart, f)
        if chart.dual_cone.contains(contact):
            out.append(AdmissibleClass(f, contact))
    return out
