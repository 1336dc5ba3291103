import random
from fractions import Fraction

import pytest

from latcone.cones import Cone, enumerate_bounded
from latcone.dfchart import contact_order, is_admissible
from latcone.intlattice import IntMatrix, snf, span_report
from latcone.wonderful import (
    ADJOINT,
    SIMPLY_CONNECTED,
    Color,
    SphericalData,
    build_root_system,
    check_hypotheses,
    classify_curve_classes,
    distinguished_chart,
    dominant_chamber_cone,
    group_wonderful_data,
    isogeny_invariants,
    verify_group_classification,
)

ALL_TYPES_RANK_8 = (
    [f"A{n}" for n in range(1, 9)]
    + [f"B{n}" for n in range(2, 9)]
    + [f"C{n}" for n in range(3, 9)]
    + [f"D{n}" for n in range(4, 9)]
    + ["E6", "E7", "E8", "F4", "G2"]
)

EXPECTED_DET = {"A": lambda n: n + 1, "B": lambda n: 2, "C": lambda n: 2,
                "D": lambda n: 4, "E": lambda n: {6: 3, 7: 2, 8: 1}[n],
                "F": lambda n: 1, "G": lambda n: 1}


def leading_minors_positive(matrix):
    n = matrix.rows
    for k in range(1, n + 1):
        sub = [[Fraction(matrix[i, j]) for j in range(k)] for i in range(k)]
        det = Fraction(1)
        for col in range(k):
            pivot = next((i for i in range(col, k) if sub[i][col] != 0), None)
            if pivot is None:
                return False
            if pivot != col:
                sub[col], sub[pivot] = sub[pivot], sub[col]
                det = -det
            det *= sub[col][col]
            p = sub[col][col]
            for i in range(col + 1, k):
                if sub[i][col] != 0:
                    f = sub[i][col] / p
                    sub[i] = [a - f * b for a, b in zip(sub[i], sub[col])]
        if det <= 0:
            return False
    return True


def test_cartan_matrices_basic_examples():
    assert build_root_system("A1").cartan.row_list() == [[2]]
    assert build_root_system("A2").cartan.row_list() == [[2, -1], [-1, 2]]
    g2 = build_root_system("G2")
    assert g2.cartan.row_list() == [[2, -1], [-3, 2]]
    assert g2.cartan.det() == 1


def test_cartan_axioms_oracle_all_types():
    # independent re-validation: symmetry of zeros, sign pattern, positive
    # definiteness via leading minors (Fraction arithmetic), determinants
    for label in ALL_TYPES_RANK_8:
        rs = build_root_system(label)
        cartan = rs.cartan
        n = rs.rank
        for i in range(n):
            assert cartan[i, i] == 2
            for j in range(n):
                if i != j:
                    assert cartan[i, j] <= 0
                    assert (cartan[i, j] == 0) == (cartan[j, i] == 0)
        assert leading_minors_positive(cartan)
        assert cartan.det() == EXPECTED_DET[label[0]](n)


def test_unknown_labels_rejected():
    for label in ("H3", "B1", "C2", "D3", "E9", "F5", "G3", "A0", "xyz"):
        with pytest.raises(ValueError):
            build_root_system(label)


def test_group_data_a1_simply_connected():
    data = group_wonderful_data(build_root_system("A1"), SIMPLY_CONNECTED)
    assert [c.valuation for c in data.colors] == [(1,)]
    assert data.valuation_cone.rays == ((-1,),)
    assert all(c.color_type == "b" for c in data.colors)


def test_group_data_a2_simply_connected():
    data = group_wonderful_data(build_root_system("A2"), SIMPLY_CONNECTED)
    assert [c.valuation for c in data.colors] == [(1, 0), (0, 1)]
    # negative Weyl chamber: negated primitive fundamental coweights
    assert set(data.valuation_cone.rays) == {(-2, -1), (-1, -2)}


def test_group_data_a1_adjoint():
    data = group_wonderful_data(build_root_system("A1"), ADJOINT)
    assert [c.valuation for c in data.colors] == [(2,)]
    assert data.valuation_cone.rays == ((-1,),)


def test_distinguished_chart_a1():
    data = group_wonderful_data(build_root_system("A1"), SIMPLY_CONNECTED)
    chart = distinguished_chart(data)
    assert chart.monoid.generators == ((-1,),)
    assert chart.L.row_list() == [[-1]]
    assert contact_order(chart, (1,)) == (-1,)
    assert is_admissible(chart, (1,))
    assert not is_admissible(chart, (-1,))


def test_distinguished_chart_a2():
    data = group_wonderful_data(build_root_system("A2"), SIMPLY_CONNECTED)
    chart = distinguished_chart(data)
    assert chart.monoid.ambient_rank == 2
    assert chart.monoid.generators == ((-2, 1), (-1, 0), (0, -1), (1, -2))
    assert chart.L.row_list() == [[-1, 0], [0, -1]]


def test_degenerate_spherical_data_rejected():
    with pytest.raises(ValueError):
        SphericalData(lambda_rank=0, valuation_cone=Cone(0, []), colors=())
    with pytest.raises(ValueError, match="pointed"):
        SphericalData(
            lambda_rank=2,
            valuation_cone=Cone(2, [(1, 0), (-1, 0), (0, 1)]),
            colors=(Color("D1", (1, 0), "b"),),
        )
    with pytest.raises(ValueError, match="full-dimensional"):
        SphericalData(
            lambda_rank=2,
            valuation_cone=Cone(2, [(-1, 0)]),
            colors=(Color("D1", (1, 0), "b"),),
        )
    with pytest.raises(ValueError, match="color"):
        SphericalData(lambda_rank=1, valuation_cone=Cone(1, [(-1,)]), colors=())


def test_check_hypotheses_group_case():
    data = group_wonderful_data(build_root_system("A2"), SIMPLY_CONNECTED)
    report = check_hypotheses(data)
    assert report.knop and report.cone and report.all_colors_type_b


def test_check_hypotheses_cone_failure():
    data = SphericalData(
        lambda_rank=2,
        valuation_cone=Cone(2, [(-1, 0), (0, -1)]),
        colors=(Color("D1", (1, 0), "b"),),
    )
    report = check_hypotheses(data)
    assert not report.cone


def test_check_hypotheses_type_a_color():
    data = SphericalData(
        lambda_rank=1,
        valuation_cone=Cone(1, [(-1,)]),
        colors=(Color("D1", (1,), "a"),),
    )
    assert not check_hypotheses(data).all_colors_type_b
    with pytest.raises(ValueError, match="classification formula not available"):
        classify_curve_classes(data, 3)


def test_classify_curve_classes_a2():
    data = group_wonderful_data(build_root_system("A2"), SIMPLY_CONNECTED)
    classes = classify_curve_classes(data, 3)
    assert [c.curve_class for c in classes] == [(0, 0), (1, 1), (1, 2), (2, 1)]
    assert [c.is_a1_class for c in classes] == [False, True, True, True]


def test_classify_curve_classes_a1():
    data = group_wonderful_data(build_root_system("A1"), SIMPLY_CONNECTED)
    classes = classify_curve_classes(data, 3)
    assert [c.curve_class for c in classes] == [(0,), (1,), (2,), (3,)]


def test_classify_bound_zero():
    data = group_wonderful_data(build_root_system("G2"), SIMPLY_CONNECTED)
    classes = classify_curve_classes(data, 0)
    assert len(classes) == 1
    assert classes[0].curve_class == (0, 0)
    assert not classes[0].is_a1_class


def test_classification_is_isogeny_independent():
    for label in ("A1", "A2", "B2"):
        rs = build_root_system(label)
        sc = classify_curve_classes(group_wonderful_data(rs, SIMPLY_CONNECTED), 4)
        ad = classify_curve_classes(group_wonderful_data(rs, ADJOINT), 4)
        assert [c.curve_class for c in sc] == [c.curve_class for c in ad]


def test_verify_group_classification_small():
    for label in ("A1", "A2", "G2"):
        assert verify_group_classification(build_root_system(label), 5)


def test_classify_closed_under_addition():
    data = group_wonderful_data(build_root_system("B2"), SIMPLY_CONNECTED)
    bound = 6
    classes = {c.curve_class for c in classify_curve_classes(data, bound)}
    for a in classes:
        for b in classes:
            s = tuple(x + y for x, y in zip(a, b))
            if sum(s) <= bound:
                assert s in classes


def test_isogeny_invariants_examples():
    rs = build_root_system("A2")
    data = group_wonderful_data(rs, SIMPLY_CONNECTED)
    inv = isogeny_invariants(data, distinguished_chart(data))
    assert inv.pi1_order == 1 and inv.primitive
    assert inv.character_group.free_rank == 0
    assert inv.character_group.torsion_factors == ()

    rs = build_root_system("A1")
    data = group_wonderful_data(rs, ADJOINT)
    inv = isogeny_invariants(data, distinguished_chart(data))
    assert inv.pi1_order == 2 and not inv.primitive
    assert inv.character_group.torsion_factors == (2,)


def test_adjoint_a_series_pi1():
    for n in range(2, 7):
        rs = build_root_system(f"A{n - 1}")
        data = group_wonderful_data(rs, ADJOINT)
        inv = isogeny_invariants(data, distinguished_chart(data))
        assert inv.pi1_order == n


def test_pi1_matches_cartan_invariant_factors():
    for label in ALL_TYPES_RANK_8[:18]:
        rs = build_root_system(label)
        data = group_wonderful_data(rs, ADJOINT)
        inv = isogeny_invariants(data, distinguished_chart(data))
        product = 1
        for f in snf(rs.cartan).invariant_factors:
            product *= f
        assert inv.pi1_order == product


def test_primitive_iff_pi1_trivial():
    for label in ("A1", "A3", "B2", "C3", "D4", "E6", "F4", "G2"):
        rs = build_root_system(label)
        for isogeny in (SIMPLY_CONNECTED, ADJOINT):
            data = group_wonderful_data(rs, isogeny)
            inv = isogeny_invariants(data, distinguished_chart(data))
            assert inv.primitive == (inv.pi1_order == 1)


def test_surjectivity_iff_torsion_free_cokernel():
    # the dual-map equivalence: the color valuations span the dual lattice
    # exactly when the chart cokernel has no torsion
    for label in ("A1", "A2", "B2", "C3", "G2"):
        rs = build_root_system(label)
        for isogeny in (SIMPLY_CONNECTED, ADJOINT):
            data = group_wonderful_data(rs, isogeny)
            chart = distinguished_chart(data)
            inv = isogeny_invariants(data, chart)
            surjective = span_report(
                [c.valuation for c in data.colors], data.lambda_rank).spans_lattice
            assert surjective == inv.character_group.is_torsion_free


def test_isogeny_invariants_rejects_non_spanning_valuations():
    data = SphericalData(
        lambda_rank=2,
        valuation_cone=Cone(2, [(-1, 0), (-1, -1)]),
        colors=(Color("D1", (1, 0), "b"), Color("D2", (2, 0), "b")),
    )
    chart = distinguished_chart(data)
    with pytest.raises(ValueError, match="valuation cone hypothesis violated"):
        isogeny_invariants(data, chart)


def test_dominant_chamber_matches_inverse_cartan_positivity():
    # the chamber generators are the primitive fundamental coweights; the
    # cone hypothesis amounts to entrywise positivity of the inverse Cartan
    rng = random.Random(3)
    for label in ("A2", "B2", "C3", "G2"):
        rs = build_root_system(label)
        chamber = dominant_chamber_cone(rs)
        for ray in chamber.rays:
            assert all(x > 0 for x in ray)
            assert all(x >= 0 for x in rs.cartan.apply(ray))


def test_boundary_valuations_are_valuation_cone_rays():
    data = group_wonderful_data(build_root_system("B2"), SIMPLY_CONNECTED)
    rows = [tuple(r) for r in data.boundary_valuations.row_list()]
    assert set(rows) == set(data.valuation_cone.rays)
