from __future__ import annotations

import math

import pytest

from refcrys.refgroup import build_family, build_group
from refcrys.regular import (NotRegularError, divisors, family_degree_data, format_regular_list,
                             freely_regular_numbers, regular_from_degrees, regular_numbers, regular_oracle,
                             regular_witness, springer_regular_element, verify_degree_data)

SMALL = [(2, 1, 2), (3, 1, 2), (4, 1, 2), (4, 2, 2), (3, 3, 2), (5, 5, 2), (2, 1, 3), (3, 3, 3), (1, 1, 4),
         (1, 1, 5), (2, 2, 3), (4, 4, 3)]


def test_degree_data_is_consistent():
    for p in SMALL:
        W = build_family(*p)
        assert verify_degree_data(W)
        data = family_degree_data(*W.family)
        assert 0 in data.codegrees


@pytest.mark.parametrize("p", SMALL)
def test_oracle_matches_criterion(p):
    W = build_family(*p)
    reg, free = regular_oracle(W)
    assert regular_numbers(W) == reg
    assert freely_regular_numbers(W) == free


def test_imprimitive_regular_numbers_are_divisors():
    for de, e, n in [(2, 1, 3), (4, 2, 3), (6, 2, 2), (9, 3, 2), (4, 1, 4)]:
        d = de // e
        W = build_family(de, e, n)
        assert regular_numbers(W) == set(divisors(d * n))


def test_equal_parameter_regular_numbers():
    for e, n in [(2, 3), (3, 3), (4, 3), (2, 4), (3, 4), (2, 5)]:
        W = build_family(e, e, n)
        assert regular_numbers(W) == set(divisors(n)) | set(divisors((n - 1) * e))


def test_symmetric_and_dihedral_freely_regular_are_odd():
    for W in [build_family(1, 1, n) for n in range(2, 7)] + [build_family(e, e, 2) for e in range(2, 9)]:
        reg = regular_numbers(W)
        assert freely_regular_numbers(W) == {d for d in reg if d % 2}


def test_witnesses_verify():
    for p in SMALL + [(6, 3, 3), (5, 1, 3)]:
        W = build_family(*p)
        for d in regular_numbers(W):
            wit = springer_regular_element(W, d)
            assert wit.check(W), (p, d)
    W = build_group("G5")
    for d in regular_numbers(W):
        assert regular_witness(W, d).check(W)


def test_non_regular_raises():
    W = build_family(1, 1, 4)
    assert 3 in regular_numbers(W) and 5 not in regular_numbers(W)
    with pytest.raises(NotRegularError):
        regular_witness(W, 5)


def test_exceptional_regular_numbers():
    W = build_group("G4")
    assert regular_numbers(W) == {1, 2, 3, 4, 6}
    assert freely_regular_numbers(W) == {1}
    assert regular_from_degrees((4, 6), (0, 2)) == {1, 2, 3, 4, 6}


def test_table_notation():
    assert format_regular_list({1, 2, 3, 6, 7}, {1, 3, 7}) == "2, (3), 6, (7)"


def test_freely_regular_coprime_to_kappa():
    from refcrys.kappa import kappa
    for p in SMALL:
        W = build_family(*p)
        k = kappa(W)
        assert freely_regular_numbers(W) == {d for d in regular_numbers(W) if math.gcd(d, k) == 1}
