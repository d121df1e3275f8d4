from __future__ import annotations

import random

import pytest

from refcrys.cyclotomic import CycMatrix
from refcrys.groups import two_part
from refcrys.refgroup import GroupSpec, MonomialElement, StubGroupError, build_family, build_group

FAMILY = [(2, 1, 2), (2, 2, 2), (3, 1, 2), (4, 2, 2), (3, 3, 3), (2, 1, 3), (1, 1, 4), (4, 4, 3), (6, 3, 2),
          (2, 2, 4), (6, 2, 2)]
EXCEPTIONAL = ["G4", "G5", "G6", "G8", "G12", "G23", "G24", "G25", "G26"]


def groups():
    for p in FAMILY:
        yield build_family(*p)
    for lab in EXCEPTIONAL:
        yield build_group(lab)


def test_spec_grammar():
    assert GroupSpec.parse(" g( 6, 3 ,2 )").canonical() == "G(6,3,2)"
    assert GroupSpec.parse("G(6,3,2)").params == (2, 3, 2)
    assert str(GroupSpec.parse("g31")) == "G31"
    for bad in ("G(3,2,2)", "G(2,1,1)", "G3", "G38", "H3"):
        with pytest.raises(ValueError):
            GroupSpec.parse(bad)


def test_family_counts():
    for de, e, n in FAMILY:
        W = build_family(de, e, n)
        d = de // e
        assert len(W.hyperplanes) == n * (d > 1) + de * n * (n - 1) // 2
        assert len(W.distinguished_reflections) == len(W.hyperplanes)


def test_order_formula():
    import math
    for de, e, n in FAMILY:
        assert build_family(de, e, n).order() == de**n * math.factorial(n) // e


def test_reflection_hyperplane_equivariance():
    for W in groups():
        refl = W.distinguished_reflections
        assert {W.reflection_hyperplane(s) for s in refl} == set(range(len(W.hyperplanes)))
        for w in W.generators:
            hp = W.hperm(w)
            for hi, s in enumerate(refl):
                conj = W.mul(W.mul(w, s), W.inv(w))
                assert W.reflection_hyperplane(conj) == hp[hi]


def test_action_kernel_is_center():
    for W in groups():
        kernel = {w for w in W.elements if W.fixed_hyperplanes(w) == list(range(len(W.hyperplanes)))}
        center = {w for w in W.elements if W.group.commutes_with_all(w)}
        assert kernel == center == set(W.center.elements), W.label
        assert W.quotient.order() * W.center_order() == W.order()


def test_monomial_matrix_homomorphism():
    rng = random.Random(3)
    W = build_family(6, 3, 3)
    elems = W.elements
    for _ in range(40):
        a, b = rng.choice(elems), rng.choice(elems)
        ma, mb = W.monomial(a), W.monomial(b)
        assert (ma * mb).to_matrix() == ma.to_matrix() * mb.to_matrix()
        assert W.monomial(W.mul(a, b)) == ma * mb
        assert sum(ma.exps) % 3 == 0


def test_monomial_action_on_hyperplanes():
    W = build_family(4, 2, 3)
    idx = W.hyperplane_index
    for w in W.generators:
        mono = W.monomial(w)
        assert [idx[mono.act(h)] for h in W.hyperplanes] == list(W.hperm(w))


def test_sylow_two_of_reflection_groups():
    for W in groups():
        assert W.group.sylow_two().order() == two_part(W.order())


def test_stub_groups():
    W = build_group("G34")
    assert W.is_stub
    assert W.order() == 39191040
    with pytest.raises(StubGroupError):
        W.require_realization()


def test_element_lookup_from_matrix():
    W = build_group("G4")
    for w in W.generators:
        assert W.from_matrix(W.matrix(w)) == w
    assert W.matrix(W.identity) == CycMatrix.identity(2)
    assert MonomialElement((1, 0), (0, 0), 1).to_matrix().rank() == 2
