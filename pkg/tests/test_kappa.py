from __future__ import annotations

import pytest

from refcrys.kappa import kappa, kappa_closed_form, kappa_details
from refcrys.refgroup import build_family, build_group

FAMILY = [(2, 1, 2), (3, 1, 2), (4, 2, 2), (6, 3, 2), (5, 5, 2), (3, 3, 2), (2, 1, 3), (3, 1, 3), (3, 3, 3),
          (4, 4, 3), (6, 6, 3), (2, 2, 4), (1, 1, 4), (6, 2, 2), (9, 3, 2)]


@pytest.mark.parametrize("p", FAMILY)
def test_closed_form(p):
    de, e, n = p
    assert kappa(build_family(*p)) == kappa_closed_form(de // e, e, n)


def test_real_groups_have_kappa_two():
    real = [build_family(1, 1, n) for n in range(2, 7)]
    real += [build_family(2, 1, n) for n in range(2, 5)]
    real += [build_family(e, e, 2) for e in range(2, 9)]
    assert all(kappa(W) == 2 for W in real)


def test_local_data_invariants():
    for W in [build_family(6, 2, 2), build_family(3, 1, 3), build_group("G4"), build_group("G8")]:
        k = kappa(W)
        assert k % 2 == 0 and k % W.center_order() == 0
        for loc in kappa_details(W):
            assert loc.f_H % loc.e_H == 0
            assert loc.normalizer_order % loc.f_H == 0
        assert sum(loc.orbit_size for loc in kappa_details(W)) == len(W.hyperplanes)


def test_f_constant_on_orbits():
    from refcrys.kappa import hyperplane_local_data
    W = build_family(4, 2, 3)
    for orb in W.hyperplane_orbits():
        assert len({hyperplane_local_data(W, hi).f_H for hi in orb}) == 1


def test_exceptional_values():
    assert kappa(build_group("G4")) == 6
    assert kappa(build_group("G13")) == 8
    assert kappa(build_group("G33")) == 6  # catalog value for a data-only group
