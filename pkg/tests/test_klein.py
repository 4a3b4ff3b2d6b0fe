"""Finite SU(2) subgroups and the invariant presentations."""

import pytest

from mckaydeform.exact import QQ
from mckaydeform.klein import (ClosureBudgetExceeded, action_matrix_order,
                               binary_dihedral, binary_icosahedral,
                               binary_octahedral, binary_tetrahedral,
                               coset_order, cyclic_group, klein_data,
                               rational_power, verify_invariance,
                               verify_omega_action)
from mckaydeform.rootdata import DynkinType


def test_group_orders():
    assert binary_dihedral(2).order() == 8
    assert binary_tetrahedral().order() == 24
    assert binary_octahedral().order() == 48
    assert binary_icosahedral().order() == 120
    assert cyclic_group(1).order() == 1
    assert cyclic_group(6).order() == 6
    assert binary_dihedral(4).order() == 16


def test_closure_budget():
    with pytest.raises(ClosureBudgetExceeded):
        binary_icosahedral_small = binary_icosahedral()
        binary_icosahedral_small.enumerate(cap=50)


def test_rational_power():
    assert rational_power(4, QQ(1, 2)) == 2
    assert rational_power(4, QQ(-1, 2)) == QQ(1, 2)
    assert rational_power(4, QQ(1, 3)) is None
    assert rational_power(108, 1) == 108
    assert rational_power(108, QQ(1, 4)) is None
    assert rational_power(4, 0) == 1


@pytest.mark.parametrize("tname", ["A3", "A5", "D4", "D5", "E6"])
def test_invariance_and_relation(tname):
    t = DynkinType(tname[0], int(tname[1:]))
    kd = klein_data(t)
    report = verify_invariance(kd)
    assert report["ok"], report


@pytest.mark.parametrize("tname", ["A3", "A5", "D4", "D5", "E6"])
def test_omega_action_tables(tname):
    t = DynkinType(tname[0], int(tname[1:]))
    kd = klein_data(t)
    report = verify_omega_action(kd)
    assert report["ok"], report


def test_a3_action_values():
    kd = klein_data(DynkinType("A", 3))
    # h sends (X, Y, Z) to (-X, (-1)^r Z, (-1)^r Y) with r = 2
    _, M = kd.omega_action["h"]
    assert M == ((-1, 0, 0), (0, 0, 1), (0, 1, 0))


def test_d4_action_values():
    kd = klein_data(DynkinType("D", 4))
    _, Mg = kd.omega_action["g"]
    h = QQ(1, 2)
    assert Mg == ((-h, h, 0), (-3 * h, -h, 0), (0, 0, 1))
    _, Mh = kd.omega_action["h"]
    assert Mh == ((1, 0, 0), (0, -1, 0), (0, 0, -1))


def test_even_a_is_flagged():
    kd = klein_data(DynkinType("A", 4))
    assert kd.no_valid_gamma_prime
    report = verify_omega_action(kd)
    assert report["ok"] and report.get("no_valid_gamma_prime")
    _, M = kd.omega_action["g"]
    assert M == ((1, 0, 0), (0, -1, 0), (0, 0, -1))


def test_coset_orders_match_action_orders():
    for tname, gens in (("D4", ("g", "h")), ("D5", ("g",)),
                        ("E6", ("g",)), ("A3", ("h",))):
        t = DynkinType(tname[0], int(tname[1:]))
        kd = klein_data(t)
        for gname in gens:
            gen, M = kd.omega_action[gname]
            assert coset_order(kd, gen) == action_matrix_order(M)


def test_d_swapped_sign_variant_is_flagged():
    # the opposite sign convention breaks the relation: reported, not fatal
    kd = klein_data(DynkinType("D", 5), variant="swapped")
    report = verify_invariance(kd)
    relation = [c for c in report["checks"]
                if c["check"] == "relation_vanishes"]
    assert relation and not relation[0]["ok"]


def test_gamma_orders_match_expected():
    for tname, order in (("A3", 4), ("A5", 6), ("D4", 8), ("D5", 12),
                         ("E6", 24)):
        t = DynkinType(tname[0], int(tname[1:]))
        kd = klein_data(t)
        assert kd.gamma.order() == order
        if kd.gamma_prime is not None and not kd.no_valid_gamma_prime:
            assert kd.gamma_prime.order() == kd.gamma_prime.order_expected
