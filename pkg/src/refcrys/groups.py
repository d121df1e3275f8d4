"""Finite permutation groups: closure, classes, centralizers and Sylow 2-subgroups.

Elements are permutations of {0, ..., degree-1} stored as ``bytes`` when the
degree is at most 256 (composition then runs through ``bytes.translate``) and
as tuples otherwise.  The product ``p * q`` means "apply q, then p", matching
the composition of linear maps.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from typing import Iterable, Sequence

log = logging.getLogger(__name__)

DEFAULT_ORDER_BOUND = 200000


class OrderBoundExceeded(RuntimeError):
    pass


_PAD = bytes(range(256))


def _mul_bytes(p: bytes, q: bytes) -> bytes:
    # translate needs a full 256-entry table
    return q.translate(p + _PAD[len(p):])


def _mul_tuple(p: tuple, q: tuple) -> tuple:
    return tuple(map(p.__getitem__, q))


def perm_from_cycles(degree: int, cycles: Iterable[Sequence[int]], *, one_based: bool = True):
    """Permutation (as a tuple) from disjoint cycles."""
    img = list(range(degree))
    off = 1 if one_based else 0
    for cyc in cycles:
        cyc = [c - off for c in cyc]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return tuple(img)


class PermGroup:
    """A permutation group given by generators; elements are enumerated lazily."""

    def __init__(self, degree: int, generators: Iterable[Sequence[int]], *,
                 order_bound: int = DEFAULT_ORDER_BOUND, parent: "PermGroup | None" = None,
                 name: str | None = None):
        self.degree = degree
        self._compact = degree <= 256
        self._mul = _mul_bytes if self._compact else _mul_tuple
        self.identity = self.make(range(degree))
        gens = []
        for g in generators:
            g = self.make(g)
            if g != self.identity and g not in gens:
                gens.append(g)
        self.generators = gens
        self.order_bound = order_bound
        self.parent = parent
        self.name = name
        self._elements: list | None = None
        self._index: dict | None = None
        self._classes = None
        self._class_of = None

    # -- basic element operations ----------------------------------------------
    def make(self, images: Iterable[int]):
        return bytes(images) if self._compact else tuple(images)

    def mul(self, p, q):
        return self._mul(p, q)

    def inv(self, p):
        out = [0] * self.degree
        for i, x in enumerate(p):
            out[x] = i
        return self.make(out)

    def conj(self, g, x):
        """g x g^-1."""
        return self._mul(self._mul(g, x), self.inv(g))

    def power(self, p, k: int):
        if k < 0:
            p, k = self.inv(p), -k
        acc, base = self.identity, p
        while k:
            if k & 1:
                acc = self._mul(acc, base)
            base = self._mul(base, base)
            k >>= 1
        return acc

    def element_order(self, p) -> int:
        # lcm of cycle lengths
        seen = bytearray(self.degree)
        order = 1
        for i in range(self.degree):
            if not seen[i]:
                n, j = 0, i
                while not seen[j]:
                    seen[j] = 1
                    j = p[j]
                    n += 1
                order = order * n // math.gcd(order, n)
        return order

    # -- enumeration ----------------------------------------------------------
    @property
    def elements(self) -> list:
        if self._elements is None:
            self._enumerate()
        return self._elements

    @property
    def index(self) -> dict:
        if self._index is None:
            self._enumerate()
        return self._index

    def _enumerate(self):
        elems = [self.identity]
        index = {self.identity: 0}
        mul = self._mul
        gens = self.generators
        i = 0
        while i < len(elems):
            w = elems[i]
            for g in gens:
                x = mul(g, w)
                if x not in index:
                    index[x] = len(elems)
                    elems.append(x)
                    if len(elems) > self.order_bound:
                        raise OrderBoundExceeded(
                            f"group exceeds the enumeration bound {self.order_bound}")
            i += 1
        self._elements = elems
        self._index = index

    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order()

    def __contains__(self, p) -> bool:
        return self.make(p) in self.index

    def __iter__(self):
        return iter(self.elements)

    def subgroup(self, generators: Iterable, name: str | None = None) -> "PermGroup":
        return PermGroup(self.degree, generators, order_bound=self.order_bound, parent=self, name=name)

    def subgroup_from_elements(self, elements: Iterable, name: str | None = None) -> "PermGroup":
        """Subgroup from a complete element set already known to be closed."""
        elems = list(elements)
        gens = _small_generating_set(self, elems)
        sub = PermGroup(self.degree, gens, order_bound=self.order_bound, parent=self, name=name)
        if sub.order() != len(set(elems)):
            raise ValueError("element set is not a subgroup")
        return sub

    # -- structure ------------------------------------------------------------
    def is_abelian(self) -> bool:
        gens = self.generators
        mul = self._mul
        return all(mul(a, b) == mul(b, a) for a in gens for b in gens)

    def commutes_with_all(self, x) -> bool:
        mul = self._mul
        return all(mul(g, x) == mul(x, g) for g in self.generators)

    def center(self) -> "PermGroup":
        return self.subgroup_from_elements([x for x in self.elements if self.commutes_with_all(x)])

    def centralizer_elements(self, x) -> list:
        mul = self._mul
        return [g for g in self.elements if mul(g, x) == mul(x, g)]

    def conjugacy_classes(self) -> list[list]:
        """Classes as lists of elements; the identity class comes first."""
        if self._classes is None:
            index = self.index
            class_of = [-1] * len(self.elements)
            classes = []
            invs = [self.inv(g) for g in self.generators]
            mul = self._mul
            for i, x in enumerate(self.elements):
                if class_of[i] >= 0:
                    continue
                cid = len(classes)
                cls = [x]
                class_of[i] = cid
                k = 0
                while k < len(cls):
                    y = cls[k]
                    for g, gi in zip(self.generators, invs):
                        z = mul(mul(g, y), gi)
                        j = index[z]
                        if class_of[j] < 0:
                            class_of[j] = cid
                            cls.append(z)
                    k += 1
                classes.append(cls)
            self._classes = classes
            self._class_of = class_of
        return self._classes

    def class_id(self, x) -> int:
        self.conjugacy_classes()
        return self._class_of[self.index[x]]

    def element_order_counts(self) -> Counter:
        return Counter(self.element_order(x) for x in self.elements)

    def exponent(self) -> int:
        e = 1
        for cls in self.conjugacy_classes():
            o = self.element_order(cls[0])
            e = e * o // math.gcd(e, o)
        return e

    def normalizer_elements(self, sub: "PermGroup") -> list:
        members = sub.index
        mul, inv = self._mul, self.inv
        out = []
        for g in self.elements:
            gi = inv(g)
            if all(mul(mul(g, h), gi) in members for h in sub.generators):
                out.append(g)
        return out

    def sylow_two(self) -> "PermGroup":
        """A Sylow 2-subgroup, found by ascending through normalizers."""
        target = two_part(self.order())
        if target == 1:
            return self.subgroup([], name="1")
        # start from an element of largest 2-power order
        best, best_order = self.identity, 1
        for cls in self.conjugacy_classes():
            o = self.element_order(cls[0])
            if o == two_part(o) and o > best_order:
                best, best_order = cls[0], o
        cur = self.subgroup([best])
        while cur.order() < target:
            members = cur.index
            found = None
            for g in self.normalizer_elements(cur):
                if g not in members and self._mul(g, g) in members:
                    found = g
                    break
            if found is None:
                raise RuntimeError("normalizer ascent stalled; not a group?")
            cur = self.subgroup(list(cur.generators) + [found])
        return cur

    def image_under(self, images_of_generators: Sequence, degree: int) -> "PermGroup":
        return PermGroup(degree, images_of_generators, order_bound=self.order_bound)


def two_part(n: int) -> int:
    return n & -n


def _small_generating_set(group: PermGroup, elems: list) -> list:
    gens = []
    cur = PermGroup(group.degree, [], order_bound=group.order_bound)
    target = len(set(elems))
    for x in sorted(elems, key=lambda e: -group.element_order(e)):
        if cur.order() == target:
            break
        if x not in cur.index:
            gens.append(x)
            cur = PermGroup(group.degree, gens, order_bound=group.order_bound)
    return gens


# -- small group identification ------------------------------------------------


def _abelian_invariants(group: PermGroup) -> list[int]:
    """Invariant-factor style list of prime-power cyclic factors of an abelian group."""
    counts = group.element_order_counts()
    n = group.order()
    factors = []
    for p in sorted({q for q in _primes_dividing(n)}):
        # number of elements of order dividing p^k determines the p-part
        k = 1
        prev = 1
        ranks = []
        while True:
            cnt = sum(c for o, c in counts.items() if (p ** k) % o == 0 and _is_power_of(o, p))
            r = round(math.log(cnt // prev, p)) if cnt > prev else 0
            if cnt == prev:
                break
            ranks.append(r)
            prev = cnt
            k += 1
        # ranks[k-1] = number of cyclic factors of order >= p^k
        for k in range(len(ranks)):
            nxt = ranks[k + 1] if k + 1 < len(ranks) else 0
            factors += [p ** (k + 1)] * (ranks[k] - nxt)
    return sorted(factors, reverse=True)


def _primes_dividing(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _is_power_of(o: int, p: int) -> bool:
    while o % p == 0:
        o //= p
    return o == 1


def abelian_label(factors: list[int]) -> str:
    if not factors:
        return "1"
    parts = []
    for f, c in sorted(Counter(factors).items(), key=lambda t: -t[0]):
        parts.append(f"Z{f}" if c == 1 else f"Z{f}^{c}")
    return "x".join(parts)


def small_group_iso_type(group: PermGroup) -> str:
    """Isomorphism label for groups of order at most 16."""
    n = group.order()
    if n > 16:
        raise ValueError(f"identification only implemented up to order 16 (got {n})")
    if group.is_abelian():
        return abelian_label(_abelian_invariants(group))
    counts = group.element_order_counts()
    inv = counts.get(2, 0)
    if n == 6:
        return "S3"
    if n == 8:
        return "D8" if inv == 5 else "Q8"
    if n == 10:
        return "D10"
    if n == 12:
        if inv == 3 and counts.get(3, 0) == 8:
            return "A4"
        if inv == 7:
            return "D12"
        return "Dic12"
    if n == 14:
        return "D14"
    if n == 16:
        o4, o8 = counts.get(4, 0), counts.get(8, 0)
        zsize = group.center().order()
        if o8 == 8:
            return "M16"
        if o8 == 4:
            if inv == 9:
                return "D16"
            if inv == 5:
                return "SD16"
            return "Q16"
        if inv == 11:
            return "Z2xD8"
        if inv == 3:
            # Z2 x Q8 has elementary abelian abelianization, Z4 : Z4 does not
            comm = _derived_subgroup(group)
            quotient_exp = _quotient_exponent(group, comm)
            return "Z2xQ8" if quotient_exp == 2 else "Z4:Z4"
        if inv == 7:
            zgrp = group.center()
            return "Pauli" if not _is_elementary_two(zgrp) else "Z2^2:Z4"
        raise ValueError("unrecognized group of order 16")
    raise ValueError(f"unrecognized non-abelian group of order {n}")


def _is_elementary_two(group: PermGroup) -> bool:
    return all(group.mul(x, x) == group.identity for x in group.elements)


def _derived_subgroup(group: PermGroup) -> PermGroup:
    comms = set()
    for a in group.elements:
        ai = group.inv(a)
        for b in group.elements:
            comms.add(group.mul(group.mul(ai, group.inv(b)), group.mul(a, b)))
    return group.subgroup(list(comms))


def _quotient_exponent(group: PermGroup, normal: PermGroup) -> int:
    members = normal.index
    e = 1
    for x in group.elements:
        k, y = 1, x
        while y not in members:
            y = group.mul(y, x)
            k += 1
        e = e * k // math.gcd(e, k)
    return e


_ORDER_PROFILES = {
    # element-order statistics pinning down a few larger groups
    (24, ((1, 1), (2, 9), (3, 8), (4, 6))): "S4",
    (60, ((1, 1), (2, 15), (3, 20), (5, 24))): "A5",
    (120, ((1, 1), (2, 25), (3, 20), (4, 30), (5, 24), (6, 20))): "S5",
    (168, ((1, 1), (2, 21), (3, 56), (4, 42), (7, 48))): "SL3(F2)",
    (360, ((1, 1), (2, 45), (3, 80), (4, 90), (5, 144))): "A6",
}


def identify_group(group: PermGroup) -> str:
    """A readable isomorphism label, or "order n" when the group is not recognized."""
    n = group.order()
    if n <= 16:
        try:
            return small_group_iso_type(group)
        except ValueError:
            return f"order {n}"
    if group.is_abelian():
        return abelian_label(_abelian_invariants(group))
    key = (n, tuple(sorted(group.element_order_counts().items())))
    return _ORDER_PROFILES.get(key, f"order {n}")
