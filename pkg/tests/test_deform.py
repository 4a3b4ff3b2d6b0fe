"""Deformation families, coefficient identities, fibre analysis."""

import pytest

from mckaydeform.deform import (UnsupportedLabel, analyze_fibre,
                                analyze_hypersurface, d4_mu_coefficients,
                                e6_flat_coefficients, e6_mu_coefficients,
                                family, fixed_parameter_locus,
                                special_fibre_normal_form,
                                verify_d4_coefficients,
                                verify_e6_coefficients, verify_equivariance,
                                verify_parameter_actions)
from mckaydeform.exact import QQ, rat
from mckaydeform.poly import MPoly, VarTable

ALL_LABELS = ("A3", "A5", "B2", "B3", "D4", "C3", "G2", "E6", "F4")


def test_family_labels_and_special_fibres():
    assert family("B2").special_fibre() == family("A3").special_fibre()
    assert family("G2").special_fibre() == family("D4").special_fibre()
    assert family("F4").special_fibre() == family("E6").special_fibre()
    with pytest.raises(UnsupportedLabel):
        family("H17")


def test_b2_equation_matches_printed_form():
    fam = family("B2")
    V = fam.vars
    x, y, z, t2, t4 = (MPoly.variable(V, n) for n in V.names)
    expect = z ** 4 + t2 * z ** 2 + (t4 + t2 ** 2 * QQ(1, 8)) - x * y
    assert fam.equation == expect


def test_c3_special_values():
    fam = family("C3")
    fibre = fam.fibre_equation({})
    V = fibre.vars
    x, y, z = (MPoly.variable(V, n) for n in ("x", "y", "z"))
    assert fibre == z ** 2 - x * y * (x + y)


def test_f4_special_fibre_value():
    fam = family("F4")
    fibre = fam.special_fibre()
    V = fibre.vars
    x, y, z = (MPoly.variable(V, n) for n in ("x", "y", "z"))
    assert fibre == x ** 4 * QQ(-1, 4) + y ** 3 + z ** 2


@pytest.mark.parametrize("label", ALL_LABELS)
def test_equivariance(label):
    rep = verify_equivariance(family(label))
    assert rep["ok"], rep


@pytest.mark.parametrize("label", ("A3", "A5", "D4", "C3", "G2", "E6",
                                   "F4"))
def test_parameter_actions(label):
    rep = verify_parameter_actions(family(label))
    assert rep["ok"], rep


def test_fixed_parameter_loci():
    assert fixed_parameter_locus(family("A5")) == ["t3", "t5"]
    assert fixed_parameter_locus(family("D4")) == ["t", "t4"]
    assert fixed_parameter_locus(family("E6")) == ["t5", "t9"]


@pytest.mark.parametrize("label", ("B2", "B3", "C3", "G2", "F4"))
def test_normal_forms(label):
    rep = special_fibre_normal_form(family(label))
    assert rep["relation_match"], rep
    assert rep["action_match"], rep


def test_d4_coefficient_identities():
    rep = verify_d4_coefficients()
    assert rep["ok"], [c for c in rep["checks"] if not c["ok"]]


def test_d4_coefficient_A_value():
    coeffs = d4_mu_coefficients()
    V = coeffs["A"].vars
    m1, m2, m3, m4 = (MPoly.variable(V, n) for n in V.names)
    expect = -m1 * m2 - m2 * m3 - m2 * m4 - m2 ** 2 - (
        m1 * m4 + m1 * m3 + m3 * m4 + m1 ** 2 + m3 ** 2 + m4 ** 2
    ) * QQ(1, 2)
    assert coeffs["A"] == expect


def test_e6_coefficients_invariant():
    rep = verify_e6_coefficients()
    assert rep["ok"], [c for c in rep["checks"] if not c["ok"]]


def test_e6_flat_coefficient_table_golden():
    import json
    import pathlib
    coeffs = e6_flat_coefficients()
    payload = {k: v.to_json() for k, v in sorted(coeffs.items())}
    golden = pathlib.Path(__file__).with_name("golden_e6_coefficients.json")
    assert json.loads(golden.read_text()) == json.loads(
        json.dumps(payload))


def test_e6_mu_coefficients_are_rational():
    for name, p in e6_mu_coefficients().items():
        for c in p.terms.values():
            assert QQ(c) == c


def test_example_fibre_one_a1():
    V = VarTable(("x", "y", "z"))
    x, y, z = (MPoly.variable(V, n) for n in "xyz")
    f = z * z - x ** 3 + 3 * x * y * y + x * x + y * y
    rep = analyze_hypersurface(f)
    assert rep.global_tjurina == 1
    point = rep.singular_points[0]
    assert point.ade == "A1" and point.exact
    assert point.coords_exact == (0, 0, 0)


def test_example_fibre_three_a1():
    V = VarTable(("x", "y", "z"))
    x, y, z = (MPoly.variable(V, n) for n in "xyz")
    f = z * z - x ** 3 + 3 * x * y * y + x * x + y * y - rat(4, 27)
    rep = analyze_hypersurface(f)
    assert rep.global_tjurina == 3
    assert [p.ade for p in rep.singular_points] == ["A1"] * 3
    xs = sorted(round(p.coords_numeric[0].real, 8)
                for p in rep.singular_points)
    assert xs == [round(-1 / 3, 8), round(-1 / 3, 8), round(2 / 3, 8)]
    ys = sorted(round(p.coords_numeric[1].real, 8)
                for p in rep.singular_points)
    assert abs(ys[0] + 3 ** -0.5) < 1e-8 and abs(ys[2] - 3 ** -0.5) < 1e-8


def test_special_fibre_d4():
    V = VarTable(("x", "y", "z"))
    x, y, z = (MPoly.variable(V, n) for n in "xyz")
    rep = analyze_hypersurface(z * z - x ** 3 + 3 * x * y * y)
    assert rep.global_tjurina == 4
    assert rep.singular_points[0].ade == "D4"


def test_smooth_fibre():
    V = VarTable(("x", "y", "z"))
    x, y, z = (MPoly.variable(V, n) for n in "xyz")
    rep = analyze_hypersurface(z * z - x * y + 1)
    assert rep.is_smooth and rep.global_tjurina == 0


def test_c3_family_fibre_at_zero():
    rep = analyze_fibre(family("C3"), {})
    assert rep.global_tjurina == 4
    assert rep.singular_points[0].ade == "D4"


def test_b2_fibre_with_rational_parameters():
    rep = analyze_fibre(family("B2"), {"t2": rat(1), "t4": rat(-1, 8)})
    # f4 = t4 + t2^2/8 = 0 branch: singular at the origin
    assert not rep.is_smooth
    origin = [p for p in rep.singular_points
              if max(abs(c) for c in p.coords_numeric) < 1e-9]
    assert origin


def test_float_parameters_are_snapped():
    rep = analyze_fibre(family("B2"), {"t2": 1.0, "t4": -0.125})
    assert not rep.is_smooth


def test_a5_family_fibre_generic_smooth():
    rep = analyze_fibre(family("B3"),
                        {"t2": rat(1), "t4": rat(1, 3), "t6": rat(1, 5)})
    assert isinstance(rep.global_tjurina, (int, str))


def test_report_json_shape():
    rep = analyze_fibre(family("C3"), {})
    data = rep.to_json()
    assert data["global_tjurina"] == 4 and data["smooth"] is False
    assert data["points"][0]["ade"] == "D4"
