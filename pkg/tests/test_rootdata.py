"""Root systems, foldings, automorphisms, coweights."""

import pytest

from mckaydeform.exact import QQ, embed_complex
from mckaydeform.rootdata import (DiagramAutomorphism, DynkinType,
                                  InvalidAutomorphism, UnsupportedType,
                                  apply_matrix, automorphism_group,
                                  build_root_system, cartan_matrix,
                                  coweight_reflection, duality_matrix, fold,
                                  fundamental_coweights,
                                  mckay_dimension_vector, omega_average,
                                  parse_type, standard_omega,
                                  validate_dimension_vector, vanishing_roots,
                                  weyl_reflections)

A5 = DynkinType("A", 5)
D4 = DynkinType("D", 4)
E6 = DynkinType("E", 6)


def test_type_validation():
    with pytest.raises(UnsupportedType):
        DynkinType("D", 3)
    with pytest.raises(UnsupportedType):
        DynkinType("C", 2)
    with pytest.raises(UnsupportedType):
        DynkinType("E", 9)
    assert str(parse_type("a5")) == "A5"


def test_positive_root_counts():
    assert len(build_root_system(A5).positive_roots) == 15
    assert len(build_root_system(D4).positive_roots) == 12
    assert len(build_root_system(E6).positive_roots) == 36


def test_a5_ambient_is_trace_zero_hyperplane():
    rs = build_root_system(A5)
    assert rs.ambient_dim == 6
    for alpha in rs.simple_roots:
        assert sum(alpha) == 0


def test_e6_simple_roots_are_scaled_frame_normals():
    rs = build_root_system(E6)
    for alpha in rs.simple_roots:
        norm = sum(abs(embed_complex(c)) ** 2 for c in alpha)
        assert abs(norm - 2) < 1e-12
    assert rs.cartan == cartan_matrix(E6)


def test_folding_table():
    cases = [("A3", "z2", "B2"), ("A5", "z2", "B3"), ("A7", "z2", "B4"),
             ("A4", "z2", "B2"), ("A6", "z2", "C3"), ("A8", "z2", "C4"),
             ("D4", "z2", "C3"), ("D5", "z2", "C4"), ("D6", "z2", "C5"),
             ("E6", "z2", "F4"), ("D4", "s3", "G2"), ("D4", "z3", "G2")]
    for tname, om, want in cases:
        t = parse_type(tname)
        assert str(fold(t, standard_omega(t, om))) == want, tname


def test_fold_trivial_is_identity():
    for tname in ("A5", "D4", "E6"):
        t = parse_type(tname)
        assert fold(t, standard_omega(t, "trivial")) == t


def test_fold_rejects_bad_permutation():
    with pytest.raises(InvalidAutomorphism):
        fold(A5, [DiagramAutomorphism((2, 1, 3, 4, 5))])


def test_automorphism_group_orders():
    assert len(automorphism_group(A5)) == 2
    assert len(automorphism_group(D4)) == 6
    assert len(automorphism_group(DynkinType("D", 5))) == 2
    assert len(automorphism_group(E6)) == 2
    assert len(automorphism_group(DynkinType("E", 7))) == 1
    assert len(automorphism_group(DynkinType("E", 8))) == 1


def test_reflections_square_to_identity():
    for t in (A5, D4, E6):
        rs = build_root_system(t)
        mats = weyl_reflections(rs)
        for M in mats:
            for v in rs.simple_roots:
                assert apply_matrix(M, apply_matrix(M, v)) == v


def test_reflection_permutes_positive_roots():
    # s_i sends positives to positives except its own root
    for t in (A5, D4, E6):
        rs = build_root_system(t)
        mats = weyl_reflections(rs)
        pos = set(rs.positive_roots)
        for i, M in enumerate(mats):
            flipped = 0
            for alpha in rs.positive_roots:
                image = apply_matrix(M, alpha)
                if image in pos:
                    continue
                neg = tuple(-c for c in image)
                assert neg == rs.simple_roots[i]
                flipped += 1
            assert flipped == 1


def test_d4_coweight_reflection_formula():
    act = coweight_reflection(D4, 1)
    assert act((QQ(1), QQ(2), QQ(3), QQ(4))) == (-1, 3, 3, 4)


def test_e6_frame_reflection_diagonal():
    # the reflection normal to (0, 1, 0, 0, 0, 0) is diag(1,-1,1,1,1,1)
    from mckaydeform.flat import frame_reflection_subs
    from mckaydeform.flat import XY_VARS
    from mckaydeform.poly import MPoly
    subs = frame_reflection_subs((3, 0, 0))
    assert subs["y1"] == -MPoly.variable(XY_VARS, "y1")
    assert subs["x1"] == MPoly.variable(XY_VARS, "x1")


def test_vanishing_roots_example():
    rs = build_root_system(A5)
    h = tuple(QQ(v) for v in (1, 2, -3, -3, 2, 1))
    got = {tuple(int(c) for c in v) for v in vanishing_roots(rs, h)}
    assert got == {(0, 0, 1, 0, 0), (0, 1, 1, 1, 0), (1, 1, 1, 1, 1)}


def test_vanishing_roots_generic_and_zero():
    rs = build_root_system(A5)
    generic = tuple(QQ(v) for v in (5, 1, -2, -11, 17, -10))
    assert vanishing_roots(rs, generic) == []
    zero = (QQ(0),) * 6
    assert len(vanishing_roots(rs, zero)) == 15


def test_omega_average():
    rs = build_root_system(A5)
    omega = standard_omega(A5, "z2")
    h = tuple(QQ(v) for v in (1, 2, -3, -3, 2, 1))
    assert omega_average(rs, omega, h) == (0,) * 6
    fixed = tuple(QQ(v) for v in (1, 0, 2, -2, 0, -1))
    assert omega_average(rs, omega, fixed) == fixed


def test_mckay_dimension_vectors():
    assert mckay_dimension_vector(DynkinType("E", 7)) == \
        (1, 2, 2, 3, 4, 3, 2, 1)
    assert mckay_dimension_vector(D4) == (1, 1, 2, 1, 1)
    assert mckay_dimension_vector(A5) == (1,) * 6
    for tname in ("A3", "D5", "E6", "E7", "E8"):
        assert validate_dimension_vector(parse_type(tname))
    with pytest.raises(UnsupportedType):
        mckay_dimension_vector(DynkinType("B", 3))


def test_fundamental_coweights_duality():
    for t in (DynkinType("A", 3), D4, E6):
        d = duality_matrix(t)
        n = t.rank
        assert d == [[1 if i == j else 0 for j in range(n)]
                     for i in range(n)]


def test_d4_coweights_match_table():
    cw = fundamental_coweights(D4).fundamental_coweights
    h = QQ(1, 2)
    assert cw[0] == (1, 0, 0, 0)
    assert cw[1] == (1, 1, 0, 0)
    assert cw[2] == (h, h, h, -h)
    assert cw[3] == (h, h, h, h)


def test_e6_weight_combo_lambda3():
    from mckaydeform.rootdata import E6_WEIGHT_COMBOS
    assert E6_WEIGHT_COMBOS[3] == (1, 1, 2, 2, 2, 3)
