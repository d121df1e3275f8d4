from __future__ import annotations

import pytest

from refcrys.groups import (OrderBoundExceeded, PermGroup, abelian_label, identify_group, perm_from_cycles,
                            small_group_iso_type, two_part)


def sym(n):
    return PermGroup(n, [perm_from_cycles(n, [(1, 2)]), perm_from_cycles(n, [tuple(range(1, n + 1))])])


def test_orders_and_composition():
    S4 = sym(4)
    assert S4.order() == 24
    a = S4.make(perm_from_cycles(4, [(1, 2)]))
    b = S4.make(perm_from_cycles(4, [(2, 3)]))
    # mul(p, q) applies q first
    ab = S4.mul(a, b)
    assert ab[1] == a[b[1]]
    assert S4.element_order(ab) == 3
    assert S4.mul(S4.inv(ab), ab) == S4.identity


def test_sylow_two_orders():
    for n in range(2, 7):
        G = sym(n)
        P = G.sylow_two()
        assert P.order() == two_part(G.order())
        assert all(G.element_order(x) & (G.element_order(x) - 1) == 0 for x in P.elements)


def test_iso_types():
    assert small_group_iso_type(sym(3)) == "S3"
    assert small_group_iso_type(sym(4).sylow_two()) == "D8"
    assert identify_group(sym(4)) == "S4"
    assert identify_group(sym(5)) == "S5"
    A4 = PermGroup(4, [perm_from_cycles(4, [(1, 2, 3)]), perm_from_cycles(4, [(1, 2), (3, 4)])])
    assert identify_group(A4) == "A4"
    assert abelian_label([2, 2]) == "Z2^2"


def test_conjugacy_classes_partition():
    G = sym(5)
    classes = G.conjugacy_classes()
    assert sum(len(c) for c in classes) == 120
    assert sorted(len(c) for c in classes) == [1, 10, 15, 20, 20, 24, 30]


def test_order_bound():
    with pytest.raises(OrderBoundExceeded):
        PermGroup(7, sym(7).generators, order_bound=100).order()


def test_subgroup_closure():
    G = sym(4)
    H = G.subgroup([G.make(perm_from_cycles(4, [(1, 2, 3, 4)]))])
    assert H.order() == 4 and H.is_abelian()
    for x in H.elements:
        for y in H.elements:
            assert G.mul(x, y) in H
