"""Finite-order elements and finite subgroups of B/(P,P).

An element q = x . gamma of B/(P,P) over w in W, with x = sum u_H c_H in P^ab,
has q^d = sum_H c_H + sum_{k=1}^d sum_H u_H c_{w^k(H)} when w^d = 1 and
gamma^d = pi.  The coefficient at c_H is 1 + (d/|O|) sum_{J in O} u_J with O the
<w>-orbit of H, so all coefficients vanish for a suitable integral u exactly
when every orbit has d elements.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import CycMatrix
from .groups import PermGroup, perm_from_cycles
from .refgroup import ReflectionGroup
from .regular import NotRegularError, regular_numbers, regular_witness

log = logging.getLogger(__name__)


class NotFreelyRegular(ValueError):
    """The torsion construction cannot succeed because <w> does not act freely."""

    def __init__(self, message: str, orbit_sizes=()):
        super().__init__(message)
        self.orbit_sizes = tuple(orbit_sizes)


# -- the power formula -----------------------------------------------------------


def cyclic_orbits(hp) -> list[list[int]]:
    """Orbits of the cyclic group generated by a permutation of hyperplane indices."""
    seen = [False] * len(hp)
    out = []
    for i in range(len(hp)):
        if seen[i]:
            continue
        orb, j = [], i
        while not seen[j]:
            seen[j] = True
            orb.append(j)
            j = hp[j]
        out.append(orb)
    return out


def _perm_power(hp, d: int) -> tuple:
    img = list(range(len(hp)))
    for _ in range(d):
        img = [hp[x] for x in img]
    return tuple(img)


def lift_power(W: ReflectionGroup, w, d: int, u) -> list[int]:
    """c_H-coefficients of q^d for q = (sum u_H c_H) . gamma over w.

    u is a sequence (or mapping) indexed by hyperplane indices.  Requires that
    w^d acts trivially on the hyperplanes.
    """
    hp = W.hperm(w)
    if _perm_power(hp, d) != tuple(range(len(hp))):
        raise ValueError(f"w^{d} does not act trivially on the hyperplanes")
    uu = [u[i] for i in range(len(hp))] if not isinstance(u, dict) else [u.get(i, 0) for i in range(len(hp))]
    coeffs = [0] * len(hp)
    for orb in cyclic_orbits(hp):
        total = Fraction(d, len(orb)) * sum(uu[j] for j in orb)
        for j in orb:
            coeffs[j] = int(1 + total)
    return coeffs


@dataclass
class TorsionCertificate:
    group: str
    w: object
    d: int
    u: tuple
    power_coeffs: tuple
    orbits: list = field(default_factory=list)
    witness: object = None

    @property
    def valid(self) -> bool:
        return all(c == 0 for c in self.power_coeffs)

    def as_dict(self, W: ReflectionGroup | None = None) -> dict:
        d = {"group": self.group, "order": self.d, "valid": self.valid,
             "orbit_sizes": [len(o) for o in self.orbits],
             "u": list(self.u),
             "power_coeffs": list(self.power_coeffs)}
        if W is not None:
            d["element"] = _matrix_json(W.matrix(self.w))
            d["nonzero_u"] = [str(W.hyperplanes[i]) for i, x in enumerate(self.u) if x]
        return d


def _matrix_json(m: CycMatrix) -> list:
    return [[x.to_json() for x in row] for row in m.rows]


def construct_torsion_element(W: ReflectionGroup, d: int) -> TorsionCertificate:
    """An element of order d of B/(P,P) over a regular element of order d."""
    try:
        wit = regular_witness(W, d)
    except NotRegularError:
        if d not in regular_numbers(W):
            raise NotFreelyRegular(f"{d} is not a regular number of {W.label}") from None
        raise
    w = wit.w
    orbits = cyclic_orbits(W.hperm(w))
    small = sorted({len(o) for o in orbits if len(o) < d})
    if small:
        # 1 + (d/|O|) sum u_J = 0 has no integral solution once d/|O| >= 2
        raise NotFreelyRegular(
            f"{d} is not freely regular for {W.label}: the regular element of order {d} "
            f"has hyperplane orbits of size {small}", orbit_sizes=[len(o) for o in orbits])
    u = [0] * len(W.hyperplanes)
    for orb in orbits:
        u[min(orb)] = -1
    coeffs = lift_power(W, w, d, u)
    cert = TorsionCertificate(W.label, w, d, tuple(u), tuple(coeffs), orbits, wit)
    if not cert.valid:
        raise RuntimeError(f"{W.label}: torsion certificate for {d} has nonzero coefficients")
    return cert


# -- the obstruction to 2-torsion -------------------------------------------------


@dataclass
class ObstructionWitness:
    """A hyperplane H0 containing Ker(g - 1) and stabilized by the involution g.

    Writing the square of a lift of g as in the power formula, the coefficient at
    c_{H0} is 2 u_{H0} + 1, which is odd, so no lift of g has order 2.
    """
    g: object
    index: int
    hyperplane: object
    fixed_space: list

    def check(self, W: ReflectionGroup) -> bool:
        g2 = W.mul(self.g, self.g)
        form = W.linear_form(self.index)
        contained = all(sum((a * b for a, b in zip(form, v)), form[0] * 0).is_zero()
                        for v in self.fixed_space)
        return (g2 == W.identity and self.g != W.identity and contained
                and W.hperm(self.g)[self.index] == self.index)


def two_torsion_witness(W: ReflectionGroup, g) -> ObstructionWitness:
    W.require_realization()
    if g == W.identity or W.mul(g, g) != W.identity:
        raise ValueError("g must be an involution")
    m = W.matrix(g) - CycMatrix.identity(W.dim)
    fixed = m.kernel_basis()
    hp = W.hperm(g)
    for hi in range(len(W.hyperplanes)):
        form = W.linear_form(hi)
        if all(sum((a * b for a, b in zip(form, v)), form[0] * 0).is_zero() for v in fixed):
            if hp[hi] != hi:
                raise RuntimeError(f"{W.label}: a hyperplane containing Fix(g) is not g-stable")
            wit = ObstructionWitness(g, hi, W.hyperplanes[hi], fixed)
            return wit
    raise RuntimeError(f"{W.label}: no reflecting hyperplane contains the fixed space of an involution")


def involutions(W: ReflectionGroup) -> list:
    return [w for w in W.elements if w != W.identity and W.mul(w, w) == W.identity]


# -- finite subgroups from free conjugation actions -----------------------------------


def _center_is_trivial(W: ReflectionGroup) -> bool:
    if W.is_monomial:
        from .crystal import family_center_order
        return family_center_order(*W.family) == 1
    return W.center_order() == 1


def free_conjugation_test(W: ReflectionGroup, G: PermGroup) -> bool:
    """True iff no nontrivial element of G commutes with a distinguished reflection.

    When Z(W) = 1 this yields a subgroup of B/(P,P) mapping isomorphically onto G.
    """
    if not _center_is_trivial(W):
        raise ValueError(f"{W.label} has nontrivial centre")
    refl = W.distinguished_reflections
    for g in G.elements:
        if g == G.identity:
            continue
        for s in refl:
            if W.mul(g, s) == W.mul(s, g):
                return False
    return True


def symmetric_group(n: int) -> ReflectionGroup:
    """S_n as G(1,1,n), with the enumeration bound raised to n! (enumeration is lazy)."""
    from .refgroup import build_family
    return build_family(1, 1, n, order_bound=math.factorial(n))


def fano_generators() -> tuple:
    s = perm_from_cycles(7, [(1, 2, 3), (4, 5, 6)])
    t = perm_from_cycles(7, [(1, 3, 4, 2, 5, 6, 7)])
    return bytes(s), bytes(t)


def fano_subgroup() -> PermGroup:
    """The order 21 group of collineations of the Fano plane, inside S_7."""
    s, t = fano_generators()
    return PermGroup(7, [s, t], name="Fano")


def is_prime(p: int) -> bool:
    return p >= 2 and all(p % k for k in range(2, math.isqrt(p) + 1))


def primitive_root(p: int) -> int:
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in range(2, p) if (p - 1) % q == 0 and is_prime(q)):
            return g
    return 1


def frobenius_subgroup(p: int) -> PermGroup:
    """Affine maps z -> x^{2k} z + b of F_p, as permutations of {0, ..., p-1}."""
    if not is_prime(p) or p % 4 != 3:
        raise ValueError("need a prime p = 3 mod 4")
    g = primitive_root(p)
    a = tuple(g * g * z % p for z in range(p))
    b = tuple((z + 1) % p for z in range(p))
    return PermGroup(p, [a, b], name=f"Frob({p})")


def achievable_abelian_orders(n: int) -> set[int]:
    """{lcm(m_1, ..., m_r) : m_i odd, m_1 + ... + m_r <= n}.

    Parts equal to 1 do not change the lcm, so only odd parts >= 3 are listed.
    """
    out = set()

    def walk(room: int, low: int, l: int):
        out.add(l)
        for m in range(low, room + 1, 2):
            walk(room - m, m, math.lcm(l, m))

    walk(n, 3, 1)
    return out
