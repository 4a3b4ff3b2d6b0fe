"""Flat coordinate systems and their invariance properties."""

import random

import numpy as np

from mckaydeform.exact import QQ
from mckaydeform.flat import (FRAME_GENERATOR_KEYS, PQ_VARS,
                              e6_tower, elementary_symmetric,
                              epsilon_from_psi, flat_coords_A, flat_coords_D,
                              flat_coords_E6, frame_reflection_subs,
                              lambda_table, pochhammer, pq_weighted_degrees,
                              psi_A_in_lambda, psi_D_in_xi, psi_E6_in_xy,
                              psi_E6_of_mu, verify_w_invariance, xi_table)
from mckaydeform.poly import MPoly, VarTable


def test_pochhammer():
    assert pochhammer(QQ(1, 6), 2) == QQ(7, 36)
    assert pochhammer(QQ(5), 0) == 1


def test_a_type_low_degrees():
    fs = flat_coords_A(2)
    V = fs.natural_vars
    e2 = MPoly.variable(V, "eps2")
    e4 = MPoly.variable(V, "eps4")
    assert fs.by_degree(2) == e2
    assert fs.by_degree(3) == MPoly.variable(V, "eps3")
    assert fs.by_degree(4) == e4 - e2 * e2 * QQ(1, 8)


def test_a_type_no_constant_term():
    for r in (2, 3):
        fs = flat_coords_A(r)
        for _, _, p in fs.coords:
            assert not p.constant_term()


def test_epsilon_round_trip():
    for r in (2, 3):
        fs = flat_coords_A(r)
        psi_sub = {name: p for _, name, p in fs.coords}
        for i, name, f in epsilon_from_psi(r):
            back = f.substitute(psi_sub)
            assert back == MPoly.variable(fs.natural_vars, f"eps{i}")


def test_epsilon_from_psi_values():
    eps = dict((i, p) for i, _, p in epsilon_from_psi(2))
    V = eps[2].vars
    p2 = MPoly.variable(V, "psi2")
    p4 = MPoly.variable(V, "psi4")
    assert eps[2] == p2
    assert eps[4] == p4 + p2 * p2 * QQ(1, 8)


def test_d4_flat_list():
    fs = flat_coords_D(3)
    V = fs.natural_vars
    x2, x4, x6 = (MPoly.variable(V, f"x{i}") for i in (2, 4, 6))
    assert fs.by_degree(2) == x2
    assert fs.by_degree(4) == x4 - x2 ** 2 * QQ(1, 4)
    assert fs.by_degree(6) == x6 - x2 * x4 * QQ(1, 6) \
        + x2 ** 3 * QQ(7, 216)
    assert fs.by_degree(4).degree() == 2  # in the x variables


def test_d_psi_is_product():
    psis = psi_D_in_xi(3)
    ones = {f"xi{i}": 1.0 for i in range(1, 5)}
    assert abs(psis["psi"].evaluate_numeric(ones) - 1) < 1e-15


def test_e6_homogeneity_degrees():
    fs = flat_coords_E6()
    assert [d for d, _, _ in fs.coords] == [2, 5, 6, 8, 9, 12]
    for d, _, p in fs.coords:
        assert pq_weighted_degrees(p) == {d}


def test_e6_psi2_is_A():
    fs = flat_coords_E6()
    tower = e6_tower()
    assert fs.by_degree(2) == tower["A"]
    a = sum((MPoly.variable(PQ_VARS, f"p{i}") for i in (1, 2, 3)),
            MPoly(PQ_VARS))
    assert tower["A"] == a


def test_e6_invariance_under_plane_reflection():
    # s_(3,0,0) is y1 -> -y1; every flat coordinate is even in y1
    xy = psi_E6_in_xy()
    subs = frame_reflection_subs((3, 0, 0))
    for name, p in xy.items():
        assert (p.substitute(subs) - p).is_zero()


def test_e6_full_frame_invariance():
    fs = flat_coords_E6()
    xy = psi_E6_in_xy()
    gens = [(str(k), frame_reflection_subs(k))
            for k in FRAME_GENERATOR_KEYS]
    rep = verify_w_invariance(fs, gens, expand=xy)
    assert rep["ok"]


def test_a_type_weyl_invariance_under_transpositions():
    r = 2
    psis = psi_A_in_lambda(r)
    LV = lambda_table(r)
    for k in range(3):
        swap = {f"lam{k}": MPoly.variable(LV, f"lam{k + 1}"),
                f"lam{k + 1}": MPoly.variable(LV, f"lam{k}")}
        for name, p in psis.items():
            moved = p.substitute(swap)
            assert (moved.extend(p.vars) - p).is_zero() \
                or moved == p


def test_d_type_sign_change_behaviour():
    psis = psi_D_in_xi(3)
    XV = xi_table(3)
    even = {"xi3": -MPoly.variable(XV, "xi3"),
            "xi4": -MPoly.variable(XV, "xi4")}
    for name, p in psis.items():
        assert (p.substitute(even) - p).is_zero()
    # a single sign change flips the odd coordinate: expected non-invariance
    single = {"xi4": -MPoly.variable(XV, "xi4")}
    assert (psis["psi"].substitute(single) + psis["psi"]).is_zero()
    assert (psis["psi2"].substitute(single) - psis["psi2"]).is_zero()


def test_a_type_sigma_linearity():
    # sigma: psi_i -> (-1)^i psi_i through lambda -> reversed-negated
    for r in (2, 3):
        psis = psi_A_in_lambda(r)
        LV = lambda_table(r)
        n = 2 * r
        subs = {f"lam{i}": -MPoly.variable(LV, f"lam{n - 1 - i}")
                for i in range(n)}
        for i in range(2, n + 1):
            p = psis[f"psi{i}"]
            assert (p.substitute(subs) - p * QQ(-1) ** i).is_zero()


def test_algebraic_independence_at_random_point():
    # Jacobian of the A3 flat coordinates at a rational point has full rank
    r = 2
    psis = psi_A_in_lambda(r)
    LV = lambda_table(r)
    rng = random.Random(2)
    point = {f"lam{i}": rng.randint(1, 9) / 7 for i in range(2 * r)}
    rows = []
    for i in range(2, 2 * r + 1):
        p = psis[f"psi{i}"]
        rows.append([p.diff(f"lam{j}").evaluate_numeric(point).real
                     for j in range(2 * r)])
    rank = np.linalg.matrix_rank(np.array(rows))
    assert rank == 2 * r - 1


def test_psi_mu_parity_structure():
    psis = psi_E6_of_mu()
    assert psis["psi5"].is_sqrt6_multiple()
    assert psis["psi9"].is_sqrt6_multiple()
    for name in ("psi2", "psi6", "psi8", "psi12"):
        assert psis[name].is_rational()


def test_elementary_symmetric():
    V = VarTable(("a", "b", "c"))
    e2 = elementary_symmetric(V, 2)
    assert len(e2.terms) == 3
    assert e2.degree() == 2
