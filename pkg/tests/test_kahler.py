from __future__ import annotations

from collections import Counter

import pytest

from refcrys.groups import PermGroup, perm_from_cycles
from refcrys.kahler import (CharacterTableError, character_table, choose_prime, dihedral_example,
                            dihedral_presentation, involution_scan, kahler_predicate, permutation_character,
                            verify_table)
from refcrys.refgroup import build_family, build_group


def quaternion():
    # Q8 acting regularly on 8 points
    i = perm_from_cycles(8, [(1, 2, 3, 4), (5, 6, 7, 8)])
    j = perm_from_cycles(8, [(1, 5, 3, 7), (2, 8, 4, 6)])
    return PermGroup(8, [i, j])


def dihedral8():
    return PermGroup(4, [perm_from_cycles(4, [(1, 2, 3, 4)]), perm_from_cycles(4, [(1, 3)])])


def test_frobenius_schur_types():
    Q8 = quaternion()
    assert Q8.order() == 8
    t = character_table(Q8)
    assert sorted((c.degree, c.fs_indicator) for c in t.characters) == [(1, 1)] * 4 + [(2, -1)]
    t = character_table(dihedral8())
    assert sorted((c.degree, c.fs_indicator) for c in t.characters) == [(1, 1)] * 4 + [(2, 1)]
    Z3 = PermGroup(3, [perm_from_cycles(3, [(1, 2, 3)])])
    assert sorted(c.fs_indicator for c in character_table(Z3).characters) == [0, 0, 1]


def test_table_validity():
    for G in [build_group("G4").quotient.group, build_family(1, 1, 5).group, quaternion()]:
        t = character_table(G)
        verify_table(t)
        assert sum(c.degree ** 2 for c in t.characters) == G.order()
        assert len(t.characters) == len(t.classes.reps)


def point_orbits(G):
    seen, count = set(), 0
    for start in range(G.degree):
        if start in seen:
            continue
        count += 1
        todo = [start]
        seen.add(start)
        while todo:
            x = todo.pop()
            for g in G.generators:
                if g[x] not in seen:
                    seen.add(g[x])
                    todo.append(g[x])
    return count


def test_burnside_orbit_count():
    W = build_group("G6")
    for Q in [W.quotient.group, W.quotient.group.sylow_two()]:
        assert kahler_predicate(Q).orbits == point_orbits(Q)


def test_parity_independent_of_class_order():
    Q = build_group("G9").quotient.group.sylow_two()
    a = character_table(Q, seed=0)
    b = character_table(Q, seed=17)
    key = lambda t: Counter((c.degree, c.fs_indicator) for c in t.characters)
    assert key(a) == key(b)
    assert kahler_predicate(Q).kahler


def test_prime_choice():
    p = choose_prime(24, 6)
    assert p % 6 == 1 and p > 48


def test_dihedral_examples():
    for m in (3, 5, 7):
        rep = dihedral_example(m)
        assert rep.order == 4 * m
        assert rep.kahler.kahler
        assert rep.fixed_by_reflection == 2
    assert "sigma^2 = x_0" in dihedral_presentation(5)
    with pytest.raises(ValueError):
        dihedral_example(4)


@pytest.mark.parametrize("label,expected", [("G4", False), ("G5", True), ("G6", True), ("G8", False),
                                            ("G12", False), ("G25", True), ("G26", False)])
def test_sylow_verdicts(label, expected):
    W = build_group(label)
    assert kahler_predicate(W.quotient.group.sylow_two()).kahler is expected


def test_full_holonomy_g6():
    assert kahler_predicate(build_group("G6").quotient.group).kahler


def test_involution_scan_g4():
    res = involution_scan(build_group("G4").quotient.group)
    assert len(res) == 1
    size, r = res[0]
    assert size == 3 and r.kahler


def test_table_bound():
    with pytest.raises(CharacterTableError):
        character_table(build_family(1, 1, 5).group, bound=10)
