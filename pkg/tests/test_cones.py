import random

import pytest

from latcone.cones import Cone, ConeError, cone_from_inequalities, enumerate_bounded, hilbert_basis
from latcone.intlattice import dot, vec_add

from _oracles import ConeMembershipOracle, oracle_bounded_points, oracle_hilbert_basis


def first_orthant(n):
    return Cone(n, [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)])


def random_cone(rng, rank, max_rays=4, entry_bound=4):
    while True:
        count = rng.randint(2, max_rays)
        rays = []
        for _ in range(count):
            r = tuple(rng.randint(-entry_bound, entry_bound) for _ in range(rank))
            if any(r):
                rays.append(r)
        if not rays:
            continue
        return Cone(rank, rays)


def random_pointed_cone(rng, rank, max_rays=4, entry_bound=4, full_dimensional=False):
    while True:
        cone = random_cone(rng, rank, max_rays, entry_bound)
        flags = cone.shape_flags()
        if flags.pointed and (flags.full_dimensional or not full_dimensional):
            return cone


def test_dual_first_orthant_self_dual():
    c = first_orthant(2)
    assert c.dual().rays == c.rays


def test_dual_single_ray_is_half_plane():
    c = Cone(2, [(1, 0)])
    assert set(c.dual().rays) == {(1, 0), (0, 1), (0, -1)}


def test_dual_derived_example():
    c = Cone(2, [(2, -1), (-1, 2)])
    assert set(c.dual().rays) == {(1, 2), (2, 1)}


def test_dual_of_zero_cone_is_full_space():
    c = Cone(2, [])
    assert set(c.dual().rays) == {(1, 0), (-1, 0), (0, 1), (0, -1)}
    # and the dual of the full space is the zero cone
    assert c.dual().dual().rays == ()


def test_contains_examples():
    orthant = first_orthant(2)
    assert orthant.contains((1, 1))
    assert not orthant.contains((-1, 0))
    assert Cone(2, [(2, -1), (-1, 2)]).contains((1, 1))


def test_contains_cone_examples():
    rng = random.Random(7)
    for _ in range(10):
        c = random_cone(rng, rng.randint(1, 3))
        assert c.contains_cone(c)
    inner = Cone(2, [(2, 1), (1, 2)])
    assert first_orthant(2).contains_cone(inner)
    assert not inner.contains_cone(first_orthant(2))


def test_shape_flags():
    assert first_orthant(2).shape_flags() == first_orthant(2).shape_flags()
    flags = first_orthant(2).shape_flags()
    assert flags.pointed and flags.full_dimensional
    half_plane = Cone(2, [(1, 0), (0, 1), (0, -1)])
    flags = half_plane.shape_flags()
    assert not flags.pointed and flags.full_dimensional
    ray = Cone(2, [(1, 1)])
    flags = ray.shape_flags()
    assert flags.pointed and not flags.full_dimensional


def test_hilbert_basis_examples():
    assert hilbert_basis(first_orthant(2)) == [(0, 1), (1, 0)]
    assert hilbert_basis(Cone(2, [(1, 0), (1, 2)])) == [(1, 0), (1, 1), (1, 2)]
    assert hilbert_basis(Cone(2, [(1, 0), (1, 3)])) == [(1, 0), (1, 1), (1, 2), (1, 3)]


def test_hilbert_basis_rejects_lines():
    with pytest.raises(ConeError, match="cone has lines"):
        hilbert_basis(Cone(2, [(1, 0), (-1, 0), (0, 1)]))


def test_hilbert_basis_lower_dimensional_cone():
    assert hilbert_basis(Cone(2, [(1, 1)])) == [(1, 1)]
    assert hilbert_basis(Cone(3, [(1, 1, 0), (1, -1, 0)])) == [
        (1, -1, 0), (1, 0, 0), (1, 1, 0)]


def test_enumerate_bounded_first_orthant_ordered():
    out = enumerate_bounded(first_orthant(2), (1, 1), 2)
    assert out == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_enumerate_bounded_zero_bound():
    rng = random.Random(11)
    for _ in range(5):
        c = random_pointed_cone(rng, 2)
        heights = tuple(sum(abs(x) for x in f) for f in zip(*c.facets)) or None
        # use a height that is positive on every ray
        height = tuple(map(sum, zip(*c.facets)))
        if any(dot(height, r) <= 0 for r in c.rays):
            continue
        assert enumerate_bounded(c, height, 0) == [(0,) * 2]


def test_enumerate_bounded_generator_cone_matches_oracle():
    # The generator reading of cone{(2,-1),(-1,2)}; the value frozen here was
    # computed with the independent Caratheodory + box oracle.
    expected = [(0, 0),
                (-1, 2), (0, 1), (1, 0), (2, -1),
                (-2, 4), (-1, 3), (0, 2), (1, 1), (2, 0), (3, -1), (4, -2)]
    cone = Cone(2, [(2, -1), (-1, 2)])
    assert enumerate_bounded(cone, (1, 1), 2) == expected
    assert oracle_bounded_points([(2, -1), (-1, 2)], 2, (1, 1), 2, 4) == expected


def test_enumerate_bounded_dual_reading():
    # The same generators read as inequalities: {x : 2x1-x2 >= 0, -x1+2x2 >= 0}
    # is the dual cone, and it contains exactly two points under the bound.
    cone = Cone(2, [(1, 2), (2, 1)])
    assert enumerate_bounded(cone, (1, 1), 2) == [(0, 0), (1, 1)]


def test_enumerate_bounded_unbounded_error():
    with pytest.raises(ConeError, match="unbounded enumeration"):
        enumerate_bounded(first_orthant(2), (1, 0), 3)
    with pytest.raises(ConeError, match="unbounded enumeration"):
        enumerate_bounded(Cone(2, [(1, 0), (-2, 1)]), (1, 1), 3)


def test_cone_from_inequalities():
    c = cone_from_inequalities([(2, -1), (-1, 2)], 2)
    assert set(c.rays) == {(1, 2), (2, 1)}
    assert cone_from_inequalities([], 2).rays == Cone(2, []).dual().rays


def test_rays_are_canonicalized():
    c = Cone(2, [(2, 0), (2, 0), (0, 3)])
    assert c.rays == ((0, 1), (1, 0))
    with pytest.raises(ConeError):
        Cone(2, [(0, 0)])
    with pytest.raises(ConeError):
        Cone(2, [(1, 0, 0)])


def test_extreme_rays_drop_redundant_generators():
    c = Cone(2, [(1, 0), (1, 1), (0, 1)])
    assert c.extreme_rays() == ((0, 1), (1, 0))
    assert c.canonical_rays() == ((0, 1), (1, 0))


def test_dual_involution_random():
    rng = random.Random(99)
    for _ in range(40):
        c = random_pointed_cone(rng, rng.randint(1, 4), full_dimensional=True)
        assert set(c.dual().dual().rays) == set(c.extreme_rays())


def test_facets_valid_and_tight():
    rng = random.Random(123)
    for _ in range(25):
        c = random_cone(rng, rng.randint(2, 3))
        for r in c.rays:
            assert all(dot(f, r) >= 0 for f in c.facets)
            assert c.contains(r)
        # a facet of a full-dimensional cone is a face of dimension >= 1, so
        # it carries a ray (rank-1 cones are degenerate: the facet is {0})
        if c.shape_flags().full_dimensional:
            for f in c.facets:
                assert any(dot(f, r) == 0 for r in c.rays)


def test_membership_matches_oracle():
    rng = random.Random(321)
    for _ in range(15):
        rank = rng.randint(1, 3)
        c = random_cone(rng, rank)
        oracle = ConeMembershipOracle(list(c.rays))
        for _ in range(30):
            v = tuple(rng.randint(-5, 5) for _ in range(rank))
            assert c.contains(v) == oracle(v)


def test_hilbert_matches_oracle_small():
    rng = random.Random(555)
    for _ in range(15):
        c = random_pointed_cone(rng, rng.randint(2, 3), max_rays=3, entry_bound=3)
        assert hilbert_basis(c) == oracle_hilbert_basis(list(c.extreme_rays()),
                                                        c.ambient_rank)


def test_hilbert_elements_are_irreducible():
    rng = random.Random(77)
    for _ in range(10):
        c = random_pointed_cone(rng, rng.randint(2, 3), max_rays=4, entry_bound=3)
        basis = hilbert_basis(c)
        for v in basis:
            assert c.contains(v)
            for w in basis:
                diff = tuple(a - b for a, b in zip(v, w))
                if any(diff) and w != v:
                    # v - w in the cone would make v reducible
                    assert not c.contains(diff) or diff == v


def test_enumerate_bounded_closed_under_addition():
    rng = random.Random(888)
    for _ in range(10):
        c = random_pointed_cone(rng, 2, max_rays=3, entry_bound=3)
        height = tuple(map(sum, zip(*c.facets)))
        if any(dot(height, r) <= 0 for r in c.rays):
            continue
        bound = 6
        points = enumerate_bounded(c, height, bound)
        point_set = set(points)
        for v in points:
            for w in points:
                s = vec_add(v, w)
                if dot(height, s) <= bound:
                    assert (s in point_set) == c.contains(s)
                    assert s in point_set


def test_zero_rank_cone():
    c = Cone(0, [])
    assert c.contains(())
    assert c.dual().rays == ()
    assert hilbert_basis(c) == []
    assert enumerate_bounded(c, (), 5) == [()]
