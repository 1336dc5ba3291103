"""Fine saturated sharp monoids inside lattices, morphisms, and colimits.

A monoid is presented by a finite generator list inside Z^rank. Saturation is
always meant relative to the ambient lattice: the saturated presentation of M
is cone(M) cap Z^rank given by its Hilbert basis. Two monoids are considered
equal when their ambient ranks agree and their saturations coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .cones import Cone, cone_from_inequalities, hilbert_basis
from .intlattice import (
    IntMatrix,
    Vector,
    dot,
    integer_inverse,
    is_zero,
    kernel_basis,
    lattice_contains,
    snf,
    vec,
    vec_add,
    vec_sub,
)


class FsMonoid:
    """Finitely generated submonoid of Z^ambient_rank.

    Fine by construction. The sharpness and (ambient) saturation flags are
    computed on first access and cached; the fill is idempotent, so the lazy
    caches are safe under concurrent first access.
    """

    __slots__ = ("ambient_rank", "generators", "_cone", "_is_sharp", "_is_saturated")

    def __init__(self, ambient_rank: int, generators: Iterable[Sequence[int]] = ()) -> None:
        if ambient_rank < 0:
            raise ValueError("negative ambient rank")
        self.ambient_rank = int(ambient_rank)
        seen = set()
        gens = []
        for g in generators:
            g = vec(g)
            if len(g) != self.ambient_rank:
                raise ValueError("generator length does not match ambient rank")
            if is_zero(g) or g in seen:
                continue
            seen.add(g)
            gens.append(g)
        self.generators: tuple[Vector, ...] = tuple(sorted(gens))
        self._cone: Optional[Cone] = None
        self._is_sharp: Optional[bool] = None
        self._is_saturated: Optional[bool] = None

    def __repr__(self) -> str:
        return f"FsMonoid(rank={self.ambient_rank}, generators={list(self.generators)})"

    @property
    def monoid_cone(self) -> Cone:
        if self._cone is None:
            self._cone = Cone(self.ambient_rank, self.generators)
        return self._cone

    @property
    def is_fine(self) -> bool:
        return True

    @property
    def is_sharp(self) -> bool:
        if self._is_sharp is None:
            self._is_sharp = not self.monoid_cone.lineality_basis()
        return self._is_sharp

    @property
    def is_saturated(self) -> bool:
        if self._is_saturated is None:
            self._is_saturated = self._compute_saturated()
        return self._is_saturated

    def _unit_generators(self) -> list[Vector]:
        """Generators lying in the lineality space (the unit candidates)."""
        facets = self.monoid_cone.facets
        return [g for g in self.generators if all(dot(f, g) == 0 for f in facets)]

    def _compute_saturated(self) -> bool:
        cone = self.monoid_cone
        lin = cone.lineality_basis()
        if not lin:
            return all(self.contains(h) for h in hilbert_basis(cone))
        unit_gens = self._unit_generators()
        unit_lattice = IntMatrix.from_columns(unit_gens, rows=self.ambient_rank)
        if not all(lattice_contains(unit_lattice, b) for b in lin):
            return False
        proj, _ = _complement_projection(lin, self.ambient_rank)
        quotient = FsMonoid(
            proj.rows,
            [proj.apply(g) for g in self.generators],
        )
        return quotient.is_saturated

    def contains(self, v: Sequence[int]) -> bool:
        """Exact monoid membership (not just cone membership)."""
        v = vec(v)
        if len(v) != self.ambient_rank:
            raise ValueError("vector length does not match ambient rank")
        if is_zero(v):
            return True
        cone = self.monoid_cone
        if not cone.contains(v):
            return False
        if self._is_saturated:
            return True
        lin = cone.lineality_basis()
        unit_gens = self._unit_generators()
        unit_lattice = IntMatrix.from_columns(unit_gens, rows=self.ambient_rank)
        positive_gens = [g for g in self.generators
                         if any(dot(f, g) != 0 for f in cone.facets)]
        if not lin:
            quotient_gens = positive_gens
            proj_apply = lambda x: x
        else:
            proj, _ = _complement_projection(lin, self.ambient_rank)
            quotient_gens = [proj.apply(g) for g in positive_gens]
            proj_apply = proj.apply
        target_q = proj_apply(v)
        if not quotient_gens:
            return is_zero(target_q) and lattice_contains(unit_lattice, v)
        quotient_cone = Cone(len(target_q), quotient_gens)
        grading = tuple(sum(col) for col in zip(*quotient_cone.facets))

        def remaining_ok(q: Vector) -> bool:
            return quotient_cone.contains(q)

        budget = dot(grading, target_q)

        def search(start: int, acc_q: Vector, acc_ambient: Vector) -> bool:
            if acc_q == target_q:
                return lattice_contains(unit_lattice, vec_sub(v, acc_ambient))
            for i in range(start, len(positive_gens)):
                nxt = vec_add(acc_q, quotient_gens[i])
                if dot(grading, nxt) > budget:
                    continue
                if not remaining_ok(vec_sub(target_q, nxt)):
                    continue
                if search(i, nxt, vec_add(acc_ambient, positive_gens[i])):
                    return True
            return False

        zero_q = (0,) * len(target_q)
        zero_a = (0,) * self.ambient_rank
        return search(0, zero_q, zero_a)


def monoid_equal(a: FsMonoid, b: FsMonoid) -> bool:
    """Equality up to saturation: same rank and the same cone of lattice
    points (hence identical saturated Hilbert bases)."""
    if a.ambient_rank != b.ambient_rank:
        return False
    return (a.monoid_cone.contains_cone(b.monoid_cone)
            and b.monoid_cone.contains_cone(a.monoid_cone))


def _mark_fs(monoid: FsMonoid) -> FsMonoid:
    monoid._is_sharp = True
    monoid._is_saturated = True
    return monoid


def saturate(monoid: FsMonoid) -> FsMonoid:
    """Hilbert-basis presentation of cone(M) cap Z^rank. Requires M sharp."""
    if not monoid.is_sharp:
        raise ValueError("monoid is not sharp; sharpen first")
    source_cone = monoid.monoid_cone
    out = FsMonoid(monoid.ambient_rank, hilbert_basis(source_cone))
    # same cone, new presentation: carry the inequality description over
    presented = Cone(out.ambient_rank, out.generators)
    presented._facets = source_cone.facets
    out._cone = presented
    return _mark_fs(out)


@dataclass(frozen=True)
class SharpenResult:
    sharp: FsMonoid
    unit_rank: int
    projection: IntMatrix


def _complement_projection(lin_basis: Sequence[Vector], ambient_rank: int) -> tuple[IntMatrix, IntMatrix]:
    """Projection onto a complement of a saturated sublattice, plus a section.

    Returns (P, S) with P of shape (n-u) x n, S of shape n x (n-u) and
    P @ S = identity; ker P is exactly the span of the given basis.
    """
    u = len(lin_basis)
    if u == 0:
        identity = IntMatrix.identity(ambient_rank)
        return identity, identity
    K = IntMatrix.from_columns(list(lin_basis), rows=ambient_rank)
    decomposition = snf(K)
    if any(d != 1 for d in decomposition.invariant_factors):
        raise AssertionError("lineality basis is not saturated")
    U = decomposition.U
    proj = IntMatrix.from_rows([list(U.row(i)) for i in range(u, ambient_rank)],
                               cols=ambient_rank)
    section = IntMatrix.from_columns(
        [decomposition.U_inv.col(i) for i in range(u, ambient_rank)],
        rows=ambient_rank)
    return proj, section


def sharpen(monoid: FsMonoid) -> SharpenResult:
    """Quotient by the units.

    The projection kills the saturation of the unit lattice (the units' span
    intersected with the ambient lattice), so the sharp quotient embeds in a
    free lattice; this agrees with quotienting by the exact unit group once
    the result is saturated.
    """
    lin = monoid.monoid_cone.lineality_basis()
    if not lin:
        return SharpenResult(monoid, 0, IntMatrix.identity(monoid.ambient_rank))
    proj, _ = _complement_projection(lin, monoid.ambient_rank)
    sharp = FsMonoid(proj.rows, [proj.apply(g) for g in monoid.generators])
    return SharpenResult(sharp, len(lin), proj)


def dual_monoid(monoid: FsMonoid) -> FsMonoid:
    """Generating presentation of dual(cone(M)) cap Z^rank.

    Sharp and Hilbert-presented when M is full-dimensional; otherwise the
    dual has units and is returned with honest flags, generated by a lifted
    Hilbert basis of its sharp quotient plus +/- unit lattice basis vectors.
    """
    dual_cone = monoid.monoid_cone.dual()
    lin = dual_cone.lineality_basis()
    if not lin:
        return _mark_fs(FsMonoid(monoid.ambient_rank, hilbert_basis(dual_cone)))
    proj, section = _complement_projection(lin, monoid.ambient_rank)
    quotient_rays = [proj.apply(r) for r in dual_cone.extreme_rays()]
    quotient = Cone(proj.rows, [r for r in quotient_rays if not is_zero(r)])
    gens: list[Vector] = [section.apply(h) for h in hilbert_basis(quotient)]
    for b in lin:
        gens.append(vec(b))
        gens.append(tuple(-x for x in b))
    out = FsMonoid(monoid.ambient_rank, gens)
    out._is_sharp = False
    out._is_saturated = True
    return out


class MonoidMorphism:
    """A lattice map carrying the source monoid into the target monoid."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FsMonoid, target: FsMonoid, matrix: IntMatrix) -> None:
        if matrix.cols != source.ambient_rank or matrix.rows != target.ambient_rank:
            raise ValueError("morphism matrix shape does not match source/target")
        for g in source.generators:
            image = matrix.apply(g)
            if target.is_saturated:
                ok = target.monoid_cone.contains(image)
            elif target.is_sharp:
                ok = target.contains(image)
            else:
                # Non-sharp unsaturated targets: cone-level check only.
                ok = target.monoid_cone.contains(image)
            if not ok:
                raise ValueError("matrix does not map source generators into the target monoid")
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, monoid: FsMonoid) -> "MonoidMorphism":
        return cls(monoid, monoid, IntMatrix.identity(monoid.ambient_rank))

    def apply(self, v: Sequence[int]) -> Vector:
        return self.matrix.apply(v)

    def __repr__(self) -> str:
        return f"MonoidMorphism({self.source!r} -> {self.target!r})"


def zero_preimage_trivial(morphism: MonoidMorphism) -> bool:
    """True iff no nonzero element of the source monoid maps to zero.

    Decided exactly: the kernel directions inside cone(source) are the rays
    of {lambda >= 0 : sum lambda_i f(g_i) = 0} pushed back through the
    generators; the preimage of zero is trivial iff every such ray combination
    of generators vanishes.
    """
    gens = morphism.source.generators
    if not gens:
        return True
    s = len(gens)
    images = [morphism.apply(g) for g in gens]
    image_matrix = IntMatrix.from_columns(images, rows=morphism.target.ambient_rank)
    kernel = kernel_basis(image_matrix)
    if not kernel:
        # injective on the generator span: only 0 maps to 0
        return True
    # Parametrize the kernel of the generator-image matrix and intersect the
    # coefficient orthant with it: {u : (K u)_i >= 0 for all i}.
    constraints = [tuple(k[i] for k in kernel) for i in range(s)]
    u_cone = cone_from_inequalities(constraints, len(kernel))
    n = morphism.source.ambient_rank
    for u in u_cone.rays:
        lam = [sum(kernel[j][i] * u[j] for j in range(len(kernel))) for i in range(s)]
        combo = tuple(sum(lam[i] * gens[i][k] for i in range(s)) for k in range(n))
        if not is_zero(combo):
            return False
    return True


@dataclass(frozen=True)
class MonoidDiagram:
    """Finite diagram of monoids: objects plus arrows between them."""

    objects: tuple[FsMonoid, ...]
    arrows: tuple[tuple[int, int, MonoidMorphism], ...]

    def __post_init__(self) -> None:
        for src, tgt, morphism in self.arrows:
            if not (0 <= src < len(self.objects) and 0 <= tgt < len(self.objects)):
                raise ValueError("arrow endpoint out of range")
            if morphism.source is not self.objects[src] and not monoid_equal(
                    morphism.source, self.objects[src]):
                raise ValueError("arrow morphism source does not match object")
            if morphism.target is not self.objects[tgt] and not monoid_equal(
                    morphism.target, self.objects[tgt]):
                raise ValueError("arrow morphism target does not match object")


@dataclass(frozen=True)
class ColimitResult:
    colimit: FsMonoid
    structure_maps: tuple[MonoidMorphism, ...]
    group_torsion: tuple[int, ...]


def fs_colimit(diagram: MonoidDiagram) -> ColimitResult:
    """Colimit in the category of fine saturated sharp monoids.

    Steps: group colimit of the ambient lattices (cokernel of the relation
    matrix identifying each generator with its images), drop the torsion
    (recorded as a diagnostic; torsion becomes units after saturation), take
    the monoid generated by the images of all object generators, sharpen,
    saturate. The structure maps are the induced lattice maps.
    """
    objects = diagram.objects
    if not objects:
        raise ValueError("empty diagram has no colimit in this artifact")
    offsets = []
    total = 0
    for obj in objects:
        offsets.append(total)
        total += obj.ambient_rank

    def inject(index: int, v: Sequence[int]) -> Vector:
        out = [0] * total
        for j, x in enumerate(v):
            out[offsets[index] + j] = x
        return tuple(out)

    relation_columns: list[Vector] = []
    for src, tgt, morphism in diagram.arrows:
        rank = objects[src].ambient_rank
        for j in range(rank):
            basis_vec = tuple(1 if k == j else 0 for k in range(rank))
            col = list(inject(src, basis_vec))
            image = morphism.apply(basis_vec)
            for k, x in enumerate(image):
                col[offsets[tgt] + k] -= x
            relation_columns.append(tuple(col))

    if relation_columns:
        relations = IntMatrix.from_columns(relation_columns, rows=total)
        decomposition = snf(relations)
        rank = len(decomposition.invariant_factors)
        torsion = tuple(d for d in decomposition.invariant_factors if d > 1)
        group_proj = IntMatrix.from_rows(
            [list(decomposition.U.row(i)) for i in range(rank, total)], cols=total)
    else:
        torsion = ()
        group_proj = IntMatrix.identity(total)

    free_rank = group_proj.rows
    generated = FsMonoid(
        free_rank,
        [group_proj.apply(inject(k, g))
         for k, obj in enumerate(objects) for g in obj.generators],
    )
    sharpened = sharpen(generated)
    colimit = saturate(sharpened.sharp)
    full_proj = sharpened.projection @ group_proj

    structure_maps = []
    for k, obj in enumerate(objects):
        columns = [full_proj.col(offsets[k] + j) for j in range(obj.ambient_rank)]
        matrix = IntMatrix.from_columns(columns, rows=full_proj.rows)
        structure_maps.append(MonoidMorphism(obj, colimit, matrix))
    return ColimitResult(colimit, tuple(structure_maps), torsion)
