from __future__ import annotations

import itertools
import math

import pytest

from refcrys.refgroup import build_family, build_group
from refcrys.regular import acts_freely, regular_class_data
from refcrys.torsion import (NotFreelyRegular, achievable_abelian_orders, construct_torsion_element,
                             cyclic_orbits,
                             fano_generators, fano_subgroup, free_conjugation_test, frobenius_subgroup,
                             involutions, lift_power, symmetric_group, two_torsion_witness)


def test_lift_power_of_zero_is_all_ones():
    W = symmetric_group(5)
    cert = construct_torsion_element(W, 5)
    assert lift_power(W, cert.w, 5, [0] * len(W.hyperplanes)) == [1] * len(W.hyperplanes)


def test_lift_power_is_affine():
    W = symmetric_group(4)
    w = next(x for x in W.elements if W.element_order(x) == 3)
    n = len(W.hyperplanes)
    base = lift_power(W, w, 3, [0] * n)
    for i in range(n):
        u = [0] * n
        u[i] = 1
        step = lift_power(W, w, 3, u)
        orbit_len = sum(1 for a, b in zip(base, step) if a != b)
        assert all(b - a in (0, 3 // orbit_len) for a, b in zip(base, step))


def test_certificates():
    for n, d in [(5, 5), (7, 3), (7, 7), (3, 3)]:
        cert = construct_torsion_element(symmetric_group(n), d)
        assert cert.valid
        assert set(len(o) for o in cert.orbits) == {d}


def test_non_free_orbits_detected():
    for n in (4, 6):
        with pytest.raises(NotFreelyRegular) as info:
            construct_torsion_element(symmetric_group(n), n)
        assert min(info.value.orbit_sizes) < n


def test_not_regular_is_reported():
    with pytest.raises(NotFreelyRegular):
        construct_torsion_element(symmetric_group(4), 5)


def test_freeness_iff_solvable():
    # for each regular class of order d: a zero lift exists exactly when <w> is free on A
    for W in [build_family(3, 1, 2), build_family(4, 4, 2), build_family(2, 1, 3), build_group("G4")]:
        for d, reps in regular_class_data(W).items():
            for w in reps:
                if W.element_order(w) != d:
                    continue
                orbits = {len(o) for o in cyclic_orbits(W.hperm(w))}
                assert (orbits == {d}) == acts_freely(W, w)


def test_two_torsion_witnesses():
    for W in [build_family(2, 1, 3), build_family(4, 2, 2), build_group("G4"), build_group("G8")]:
        for g in involutions(W):
            assert two_torsion_witness(W, g).check(W)


def test_fano_group():
    G = fano_subgroup()
    assert G.order() == 21
    assert not G.is_abelian()
    s, t = fano_generators()
    # s t = t^2 s, reading products left to right (mul applies its second argument first)
    assert G.mul(t, s) == G.mul(s, G.mul(t, t))
    assert free_conjugation_test(symmetric_group(7), G)


def test_frobenius_groups():
    for p, order in [(3, 3), (7, 21), (11, 55)]:
        G = frobenius_subgroup(p)
        assert G.order() == order
        assert G.is_abelian() == (p == 3)
    assert free_conjugation_test(symmetric_group(7), frobenius_subgroup(7))
    with pytest.raises(ValueError):
        frobenius_subgroup(5)


def test_free_conjugation_fails_for_transposition_commuting_elements():
    W = symmetric_group(5)
    t = W.distinguished_reflections[0]
    for g in W.elements:
        if g != W.identity and W.mul(g, t) == W.mul(t, g):
            assert not free_conjugation_test(W, W.group.subgroup([g]))


def test_free_conjugation_needs_trivial_center():
    with pytest.raises(ValueError):
        free_conjugation_test(build_family(2, 1, 2), build_family(2, 1, 2).group)


def brute_orders(n):
    out = {1}
    odd = range(3, n + 1, 2)
    for r in range(1, n // 3 + 1):
        for parts in itertools.combinations_with_replacement(odd, r):
            if sum(parts) <= n:
                out.add(math.lcm(*parts))
    return out


def test_achievable_orders():
    assert achievable_abelian_orders(8) == {1, 3, 5, 7, 15}
    for n in range(1, 13):
        assert achievable_abelian_orders(n) == brute_orders(n)
