"""The crystallographic group attached to W and Bieberbach verdicts for subgroups.

The translation lattice is P0 = Z^A + Z z modulo (sum of the c_H) - d z, where
d = |Z(W)|.  It is written in the basis c_{H_1}, ..., c_{H_{N-1}}, z (one block
per irreducible component), so the last hyperplane of each component is
eliminated through c_{H_N} = d z - sum_{i<N} c_{H_i}.  W acts by permuting the
c_H and fixing z; the action factors through W / Z(W).

The extension itself is not built: its cocycle is never needed for the
verdicts, which only use the lattice, the holonomy and regularity data.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .groups import PermGroup, identify_group, two_part
from .refgroup import QuotientGroup, ReflectionGroup

log = logging.getLogger(__name__)

IntMatrix = tuple   # tuple of row tuples


# -- integer matrices --------------------------------------------------------------


def int_identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def int_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def int_trace(a: IntMatrix) -> int:
    return sum(a[i][i] for i in range(len(a)))


def int_det(a: IntMatrix) -> int:
    """Bareiss fraction-free elimination."""
    m = [list(r) for r in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


# -- components ---------------------------------------------------------------------


def hyperplane_components(W: ReflectionGroup) -> list[list[int]]:
    """Hyperplane index sets of the irreducible components of W.

    Two hyperplanes are in the same component when they are joined by a chain of
    distinguished reflections that do not commute.
    """
    refl = W.distinguished_reflections
    n = len(refl)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            if W.mul(refl[i], refl[j]) != W.mul(refl[j], refl[i]):
                parent[find(i)] = find(j)
    comps: dict = {}
    for i in range(n):
        comps.setdefault(find(i), []).append(i)
    return sorted((sorted(c) for c in comps.values()), key=lambda c: c[0])


def component_center_orders(W: ReflectionGroup, comps: list) -> list[int]:
    """|Z(W_k)| for each component W_k, the subgroup generated by its reflections."""
    if len(comps) == 1:
        return [W.center_order()]
    center = set(W.center.elements)
    out = []
    for comp in comps:
        sub = W.group.subgroup([W.distinguished_reflections[i] for i in comp])
        out.append(sum(1 for z in sub.elements if z in center))
    return out


# -- the crystallographic group ----------------------------------------------------------


@dataclass
class CrystalGroup:
    W: ReflectionGroup
    components: list            # hyperplane indices per irreducible component
    center_orders: list         # d_k = |Z(W_k)|
    holonomy: QuotientGroup
    basis: list = field(default_factory=list)
    _columns: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._coord = {}        # hyperplane index -> coordinate, or the block's eliminated column
        self._z_coord = []
        pos = 0
        for comp in self.components:
            for hi in comp[:-1]:
                self._coord[hi] = pos
                self.basis.append(f"c[{self.W.hyperplanes[hi]}]")
                pos += 1
            self._z_coord.append(pos)
            self.basis.append(f"z{len(self._z_coord)}" if len(self.components) > 1 else "z")
            pos += 1

    @property
    def N(self) -> int:
        return len(self.basis)

    @property
    def d(self) -> int:
        return math.prod(self.center_orders)

    def _column_of_c(self, hi: int) -> tuple:
        """Coordinates of c_H in the chosen basis."""
        col = self._columns.get(hi)
        if col is None:
            v = [0] * self.N
            if hi in self._coord:
                v[self._coord[hi]] = 1
            else:
                k = next(k for k, comp in enumerate(self.components) if comp[-1] == hi)
                for hj in self.components[k][:-1]:
                    v[self._coord[hj]] = -1
                v[self._z_coord[k]] = self.center_orders[k]
            col = tuple(v)
            self._columns[hi] = col
        return col

    def matrix_of_hperm(self, hp) -> IntMatrix:
        """Integer matrix of the element acting on hyperplanes by hp."""
        cols = [None] * self.N
        for comp in self.components:
            for hi in comp[:-1]:
                cols[self._coord[hi]] = self._column_of_c(hp[hi])
        for zc in self._z_coord:
            cols[zc] = tuple(int(i == zc) for i in range(self.N))
        return tuple(zip(*cols))

    def matrix(self, w) -> IntMatrix:
        """Matrix of an element of W (in permutation form)."""
        return self.matrix_of_hperm(self.W.hperm(w))

    @property
    def generator_matrices(self) -> list:
        return [self.matrix_of_hperm(g) for g in self.holonomy.group.generators]

    @property
    def holonomy_order(self) -> int:
        return self.holonomy.order()

    def is_faithful(self) -> bool:
        ident = int_identity(self.N)
        ident_perm = self.holonomy.group.identity
        return all(self.matrix_of_hperm(x) != ident for x in self.holonomy.group.elements if x != ident_perm)

    def check_homomorphism(self, elements=None) -> bool:
        G = self.holonomy.group
        elems = list(elements) if elements is not None else G.elements
        mats = {x: self.matrix_of_hperm(x) for x in elems}
        for x in elems:
            for y in elems:
                if int_mul(mats[x], mats[y]) != self.matrix_of_hperm(G.mul(x, y)):
                    return False
        return True

    def check_trace_identity(self) -> bool:
        for x in self.holonomy.group.elements:
            fixed = sum(1 for i, j in enumerate(x) if i == j)
            if int_trace(self.matrix_of_hperm(x)) != fixed:
                return False
        return True

    def check_unimodular(self) -> bool:
        return all(abs(int_det(m)) == 1 for m in self.generator_matrices)

    @property
    def faithful(self) -> bool:
        return self.is_faithful()


def crystal_data(W: ReflectionGroup) -> CrystalGroup:
    W.require_realization()
    cache = getattr(W, "_crystal", None)
    if cache is None:
        comps = hyperplane_components(W)
        cache = CrystalGroup(W, comps, component_center_orders(W, comps), W.quotient)
        W._crystal = cache
    return cache


def holonomy_equals_W(W: ReflectionGroup) -> bool:
    """True iff Z(W) = 1, i.e. the holonomy W/Z(W) is W itself."""
    if W.is_stub:
        return W.catalog_entry.center_order == 1
    if W.is_monomial and W.order() > W.order_bound:
        d, e, n = W.family
        return d == 1 and math.gcd(e, n) == 1 and (e, n) != (1, 2)
    return W.center_order() == 1


def family_center_order(d: int, e: int, n: int) -> int:
    """|Z(G(de,e,n))|; G(1,1,2) = Z/2 is abelian, hence its own centre."""
    if (d, e, n) == (1, 1, 2):
        return 2
    return d * math.gcd(e, n)


# -- Bieberbach verdicts --------------------------------------------------------------


def _primes(n: int) -> list[int]:
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


@dataclass
class CriterionResult:
    """The regular-prime criterion for the preimage of G to be torsion free.

    condition (1): no freely regular prime divides |G|;
    condition (2): every element of G of odd prime order p is regular.
    """
    satisfied: bool
    condition1: bool
    condition2: bool
    primes: list
    freely_regular_primes: list           # primes dividing |G| that are freely regular
    non_regular_elements: dict            # p -> number of order-p elements of G not regular
    log_lines: list = field(default_factory=list)


def _regular_class_ids(W: ReflectionGroup) -> dict[int, set]:
    """{d: W-class ids of elements regular for an eigenvalue of order d}."""
    from .regular import regular_class_data
    out = {}
    for d, reps in regular_class_data(W).items():
        out[d] = {W.group.class_id(w) for w in reps}
    return out


def bieberbach_criterion(W: ReflectionGroup, G: PermGroup) -> CriterionResult:
    from .regular import freely_regular_numbers
    W.require_realization()
    order = G.order()
    primes = _primes(order)
    free = freely_regular_numbers(W)
    bad_primes = [p for p in primes if p in free]
    lines = [f"|G| = {order}, primes {primes}",
             f"freely regular numbers of {W.label}: {sorted(free)}"]
    cond1 = not bad_primes
    lines.append(f"condition (1) {'holds' if cond1 else 'fails'}: freely regular primes dividing |G|: {bad_primes}")
    reg_ids = _regular_class_ids(W)
    non_regular = {}
    for p in primes:
        if p == 2:
            continue
        ids = reg_ids.get(p, set())
        elems = [g for g in G.elements if G.element_order(g) == p]
        bad = sum(1 for g in elems if W.group.class_id(g) not in ids)
        non_regular[p] = bad
        lines.append(f"condition (2) at p = {p}: {len(elems)} elements of order {p}, {bad} not regular")
    cond2 = all(v == 0 for v in non_regular.values())
    for line in lines:
        log.info("%s: %s", W.label, line)
    return CriterionResult(cond1 and cond2, cond1, cond2, primes, bad_primes, non_regular, lines)


def freely_regular_prime_element(W: ReflectionGroup, G: PermGroup):
    """An element of G of prime order regular with <w> acting freely on A, or None.

    By the torsion construction such an element lifts to an element of finite
    order of the preimage, so the preimage is not torsion free.
    """
    from .regular import acts_freely
    reg_ids = _regular_class_ids(W)
    seen = set()
    for g in G.elements:
        o = G.element_order(g)
        if o == 1 or len(_primes(o)) != 1 or o != _primes(o)[0]:
            continue
        cid = W.group.class_id(g)
        if (o, cid) in seen:
            continue
        seen.add((o, cid))
        if cid in reg_ids.get(o, set()) and acts_freely(W, g):
            return g
    return None


@dataclass
class BieberbachReport:
    group: str
    subgroup: str
    subgroup_order: int
    dimension: int
    holonomy_order: int
    holonomy_label: str
    torsion_free: bool | None
    justification: str      # two-group | regular-prime-criterion | freely-regular-element | unknown
    criterion: CriterionResult | None
    generator_matrices: list
    witness: object = None
    kahler: bool | None = None

    def as_dict(self) -> dict:
        d = {
            "group": self.group,
            "subgroup": self.subgroup,
            "subgroup_order": self.subgroup_order,
            "dimension": self.dimension,
            "holonomy_order": self.holonomy_order,
            "holonomy_label": self.holonomy_label,
            "torsion_free": self.torsion_free,
            "justification": self.justification,
            "representation": [[list(row) for row in m] for m in self.generator_matrices],
        }
        if self.criterion is not None:
            d["criterion"] = {
                "satisfied": self.criterion.satisfied,
                "condition1": self.criterion.condition1,
                "condition2": self.criterion.condition2,
                "log": list(self.criterion.log_lines),
            }
        if self.kahler is not None:
            d["kahler"] = self.kahler
        return d


def holonomy_image(W: ReflectionGroup, G: PermGroup) -> PermGroup:
    return W.quotient.image_of(G)


def preimage_report(W: ReflectionGroup, G: PermGroup, name: str = "G") -> BieberbachReport:
    cg = crystal_data(W)
    hol = holonomy_image(W, G)
    mats = [cg.matrix_of_hperm(g) for g in hol.generators]
    order = G.order()
    criterion = None
    witness = None
    if two_part(order) == order:
        verdict, why = True, "two-group"
    else:
        criterion = bieberbach_criterion(W, G)
        if criterion.satisfied:
            verdict, why = True, "regular-prime-criterion"
        else:
            witness = freely_regular_prime_element(W, G)
            if witness is not None:
                verdict, why = False, "freely-regular-element"
            else:
                verdict, why = None, "unknown"
    return BieberbachReport(W.label, name, order, cg.N, hol.order(), identify_group(hol),
                            verdict, why, criterion, mats, witness)
