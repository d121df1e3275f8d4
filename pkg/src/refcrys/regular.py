"""Degrees, codegrees, regular and freely regular numbers.

A positive integer d is regular for W when some w in W has an eigenvector
lying on no reflecting hyperplane with eigenvalue of order d; it is freely
regular when moreover <w> acts freely on the hyperplanes.  Three routes are
provided and cross-checked in the tests:

* the divisor criterion on degrees and codegrees;
* explicit witnesses for the monomial groups G(de,e,n);
* an eigenspace search over conjugacy class representatives.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

from .cyclotomic import ONE, ZERO, CycMatrix, CycNum, root_of_unity
from .refgroup import DegreeData, MonomialElement, ReflectionGroup

log = logging.getLogger(__name__)

ORACLE_BOUND = 5000


class NotRegularError(ValueError):
    pass


def divisors(n: int) -> list[int]:
    return [k for k in range(1, n + 1) if n % k == 0]


# -- degree data -----------------------------------------------------------------


def family_degree_data(d: int, e: int, n: int) -> DegreeData:
    """Degrees and codegrees of G(de,e,n), essential part only for G(1,1,n)."""
    m = d * e
    if d > 1:
        degs = tuple(k * m for k in range(1, n)) + (d * n,)
        codegs = tuple(k * m for k in range(n))
    elif e > 1:
        degs = tuple(k * e for k in range(1, n)) + (n,)
        codegs = tuple(k * e for k in range(n - 1)) + ((n - 1) * e - n,)
    else:
        # the symmetric group: drop the trivial summand (degree 1, codegree -1 in the
        # G(e,e,n) formula) to keep the essential data
        degs = tuple(range(2, n + 1))
        codegs = tuple(range(n - 1))
    return DegreeData(tuple(sorted(degs)), tuple(sorted(codegs)))


def degrees_codegrees(W: ReflectionGroup) -> DegreeData:
    if W.is_monomial:
        return family_degree_data(*W.family)
    entry = W.catalog_entry
    if entry is None:
        raise ValueError(f"{W.label}: no degree data available")
    return DegreeData(tuple(entry.degrees), tuple(entry.codegrees))


def regular_from_degrees(degrees, codegrees) -> set[int]:
    """{d : d divides as many degrees as codegrees}."""
    cands = set()
    for x in degrees:
        cands.update(divisors(x))
    out = set()
    for k in cands:
        if sum(1 for x in degrees if x % k == 0) == sum(1 for x in codegrees if x % k == 0):
            out.add(k)
    return out


def regular_numbers(W: ReflectionGroup) -> set[int]:
    data = degrees_codegrees(W)
    return regular_from_degrees(data.degrees, data.codegrees)


def _poly_mul(p: list, q: list) -> list:
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return out


def degree_statistics(W: ReflectionGroup) -> tuple[list, list]:
    """Coefficient lists of sum_w T^dim(V^w) and sum_w det(w) T^dim(V^w)."""
    dim = W.dim
    plain = [0] * (dim + 1)
    twisted = [ZERO] * (dim + 1)
    ident = CycMatrix.identity(dim)
    for cls in W.group.conjugacy_classes():
        m = W.matrix(cls[0])
        k = dim - (m - ident).rank()
        plain[k] += len(cls)
        twisted[k] = twisted[k] + _det(m) * len(cls)
    return plain, twisted


def _det(m: CycMatrix) -> CycNum:
    # fraction-free enough for small sizes: Gaussian elimination
    rows = [list(r) for r in m.rows]
    n = len(rows)
    det = ONE
    for c in range(n):
        piv = next((r for r in range(c, n) if not rows[r][c].is_zero()), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        p = rows[c][c]
        det = det * p
        inv = p.inverse()
        for r in range(c + 1, n):
            f = rows[r][c] * inv
            if not f.is_zero():
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[c])]
    return det


def determinant(m: CycMatrix) -> CycNum:
    return _det(m).canonical()


def verify_degree_data(W: ReflectionGroup, data: DegreeData | None = None) -> bool:
    """Check degrees and codegrees against the class statistics of W.

    sum_w T^dim(V^w) = prod (T + d_i - 1) and sum_w det(w) T^dim(V^w) = prod (T - d*_i - 1),
    with a trivial summand of the ambient space contributing degree 1 and codegree -1
    (both factors equal to T).
    """
    data = data or degrees_codegrees(W)
    extra = W.dim - len(data.degrees)
    degs = list(data.degrees) + [1] * extra
    codegs = list(data.codegrees) + [-1] * extra
    plain, twisted = degree_statistics(W)
    p = [CycNum.rational(1)]
    q = [CycNum.rational(1)]
    for dg, cd in zip(degs, codegs):
        p = _poly_mul(p, [CycNum.rational(dg - 1), ONE])
        q = _poly_mul(q, [CycNum.rational(-cd - 1), ONE])
    return [CycNum.rational(x) for x in plain] == p and twisted == q


# -- eigenspaces and the hyperplane test ----------------------------------------------


def is_regular_vector(W: ReflectionGroup, x) -> bool:
    """True iff x lies on no reflecting hyperplane."""
    for hi in range(len(W.hyperplanes)):
        f = W.linear_form(hi)
        if sum((a * b for a, b in zip(f, x)), ZERO).is_zero():
            return False
    return True


def avoids_hyperplanes(W: ReflectionGroup, basis: list) -> bool:
    """A subspace lies in a finite union of hyperplanes iff it lies in one of them."""
    if not basis:
        return False
    for hi in range(len(W.hyperplanes)):
        f = W.linear_form(hi)
        if all(sum((a * b for a, b in zip(f, v)), ZERO).is_zero() for v in basis):
            return False
    return True


def generic_vector(W: ReflectionGroup, basis: list):
    """A vector of span(basis) on no hyperplane (basis assumed to avoid all of them)."""
    forms = [W.linear_form(hi) for hi in range(len(W.hyperplanes))]
    k = len(basis)
    # integer combinations with growing coefficients; finitely many bad choices per form
    for t in range(1, 10 * len(forms) + 10):
        coeffs = [t ** i for i in range(k)]
        x = tuple(sum((CycNum.rational(c) * v[j] for c, v in zip(coeffs, basis)), ZERO)
                  for j in range(W.dim))
        if all(not sum((a * b for a, b in zip(f, x)), ZERO).is_zero() for f in forms):
            return x
    raise RuntimeError("no generic vector found")


def eigenspace(W: ReflectionGroup, w, zeta: CycNum) -> list:
    m = W.matrix(w)
    return (m - CycMatrix.identity(W.dim).scale(zeta)).kernel_basis()


def _candidate_exponents(W: ReflectionGroup, w, o: int) -> list[int]:
    """Exponents k such that zeta_o^k may be an eigenvalue of w.

    For a monomial element, a cycle of length L whose entries multiply to
    zeta_m^a contributes exactly the L-th roots of zeta_m^a; otherwise every
    o-th root of unity is a candidate.
    """
    if not W.is_monomial:
        return list(range(o))
    mono = W.monomial(w)
    m = mono.m
    seen = [False] * len(mono.perm)
    ks = set()
    for i in range(len(mono.perm)):
        if seen[i]:
            continue
        length, a, j = 0, 0, i
        while not seen[j]:
            seen[j] = True
            a += mono.exps[j]
            length += 1
            j = mono.perm[j]
        for t in range(length):
            # zeta_{mL}^{a + m t} = zeta_o^k
            num = (a + m * t) * o
            if num % (m * length):
                raise RuntimeError(f"{W.label}: eigenvalue order does not divide the element order")
            ks.add((num // (m * length)) % o)
    return sorted(ks)


def element_regular_eigenvalues(W: ReflectionGroup, w) -> dict[int, CycNum]:
    """{d: zeta} for eigenvalues zeta of w of order d whose eigenspace meets X."""
    o = W.element_order(w)
    out = {}
    for k in _candidate_exponents(W, w, o):
        zeta = root_of_unity(o, k)
        basis = eigenspace(W, w, zeta)
        if basis and avoids_hyperplanes(W, basis):
            out[o // math.gcd(o, k)] = zeta
    return out


def acts_freely(W: ReflectionGroup, w) -> bool:
    """True iff no nontrivial power of w fixes a hyperplane."""
    o = W.element_order(w)
    x = w
    for _ in range(1, o):
        if W.fixed_hyperplanes(x):
            return False
        x = W.mul(x, w)
    return True


@dataclass
class RegularWitness:
    w: object
    x: tuple
    zeta: CycNum
    d: int

    def check(self, W: ReflectionGroup) -> bool:
        lhs = W.apply(self.w, self.x)
        rhs = tuple(self.zeta * a for a in self.x)
        return (tuple(lhs) == rhs and is_regular_vector(W, self.x)
                and W.element_order(self.w) == self.d)


# -- class search ------------------------------------------------------------------


def regular_class_data(W: ReflectionGroup) -> dict[int, list]:
    """{d: [class representatives w regular for an eigenvalue of order d]}."""
    cache = getattr(W, "_regular_class_data", None)
    if cache is not None:
        return cache
    W.require_realization()
    out: dict[int, list] = {}
    for cls in W.group.conjugacy_classes():
        w = cls[0]
        for d in element_regular_eigenvalues(W, w):
            out.setdefault(d, []).append(w)
    W._regular_class_data = out
    return out


def class_search_witness(W: ReflectionGroup, d: int) -> RegularWitness:
    reps = regular_class_data(W).get(d)
    if not reps:
        raise NotRegularError(f"{d} is not a regular number of {W.label}")
    w = reps[0]
    o = W.element_order(w)
    zeta = element_regular_eigenvalues(W, w)[d]
    x = generic_vector(W, eigenspace(W, w, zeta))
    wit = RegularWitness(w, x, zeta, o)
    if not wit.check(W):
        raise RuntimeError(f"{W.label}: regular witness for {d} failed verification")
    return wit


def regular_oracle(W: ReflectionGroup, bound: int = ORACLE_BOUND) -> tuple[set, set]:
    """Regular and freely regular numbers by brute-force eigenspace computation.

    Conjugate elements have conjugate eigenspaces and conjugate actions on the
    hyperplanes, so one representative per class suffices.
    """
    if W.order() > bound:
        raise ValueError(f"{W.label}: order {W.order()} exceeds the oracle bound {bound}")
    data = regular_class_data(W)
    regular = set(data)
    freely = set()
    for d, reps in data.items():
        verdicts = {acts_freely(W, w) for w in reps if W.element_order(w) == d}
        if len(verdicts) > 1:
            log.warning("%s: regular elements of order %d disagree on freeness", W.label, d)
        if True in verdicts:
            freely.add(d)
    return regular, freely


# -- explicit constructions for G(de,e,n) ---------------------------------------------


def _cycle_element(n: int, m: int, start: int, length: int, last_exp: int,
                   perm: list, exps: list):
    # e_i -> e_{i+1} inside the block, last -> zeta_m^last_exp e_start
    for t in range(length):
        i = start + t
        perm[i] = start + (t + 1) % length
        exps[i] = last_exp if t == length - 1 else 0


def _witness_from_monomial(W: ReflectionGroup, mono: MonomialElement, x: tuple, zeta: CycNum,
                           order: int, d: int) -> RegularWitness:
    w = W.from_monomial(mono)
    k = order // d
    if W.group.power(w, k) not in W.group.index:
        raise RuntimeError(f"{W.label}: constructed element is not in the group")
    wk = W.group.power(w, k)
    return RegularWitness(wk, x, (zeta ** k).canonical(), d)


def springer_regular_element(W: ReflectionGroup, d: int) -> RegularWitness:
    """Explicit regular element of order d in G(de,e,n)."""
    if not W.is_monomial:
        raise TypeError("explicit construction only for G(de,e,n); use class_search_witness")
    dd, e, n = W.family
    m = dd * e
    if d not in regular_numbers(W):
        raise NotRegularError(f"{d} is not a regular number of {W.label}")
    if dd > 1:
        # g0 e_i = e_{i+1}, g0 e_n = zeta_m e_1; eigenvector x0 for zeta_{mn}
        perm, exps = [0] * n, [0] * n
        _cycle_element(n, m, 0, n, 1, perm, exps)
        zeta = root_of_unity(m * n, 1)
        x = tuple(root_of_unity(m * n, -i) for i in range(n))
        wit = _witness_from_monomial(W, MonomialElement(tuple(perm), tuple(exps), m), x, zeta, m * n, d)
    elif ((n - 1) * e) % d == 0:
        # g0 for G(e,1,n-1) on the first n-1 coordinates, zeta_e^-1 on the last
        perm, exps = list(range(n)), [0] * n
        _cycle_element(n, m, 0, n - 1, 1 % m, perm, exps)
        exps[n - 1] = (-1) % m
        N = (n - 1) * e
        zeta = root_of_unity(N, 1)
        x = tuple(root_of_unity(N, -i) for i in range(n - 1)) + (ZERO,)
        wit = _witness_from_monomial(W, MonomialElement(tuple(perm), tuple(exps), m), x, zeta, N, d)
    else:
        # g1 = g2 + ... + g2 with n = delta n', g2 a twisted n'-cycle
        delta = math.gcd(n, e)
        n1 = n // delta
        perm, exps = [0] * n, [0] * n
        for b in range(delta):
            _cycle_element(n, m, b * n1, n1, (e // delta) % m if m > 1 else 0, perm, exps)
        zeta = root_of_unity(n, 1)
        x = tuple(CycNum.rational(b + 1) * root_of_unity(n, -t) for b in range(delta) for t in range(n1))
        wit = _witness_from_monomial(W, MonomialElement(tuple(perm), tuple(exps), m), x, zeta, n, d)
    if not wit.check(W):
        raise RuntimeError(f"{W.label}: explicit regular element for {d} failed verification")
    return wit


def regular_witness(W: ReflectionGroup, d: int) -> RegularWitness:
    if W.is_monomial:
        return springer_regular_element(W, d)
    return class_search_witness(W, d)


# -- freely regular numbers ---------------------------------------------------------------


@dataclass
class FreelyRegularReport:
    regular: set
    freely: set
    method: str          # "witness" | "class-search" | "kappa-coprime"
    classification_dependent: bool = False


def freely_regular_report(W: ReflectionGroup) -> FreelyRegularReport:
    if W.is_stub:
        from .kappa import kappa
        reg = regular_numbers(W)
        k = kappa(W)
        return FreelyRegularReport(reg, {d for d in reg if math.gcd(d, k) == 1}, "kappa-coprime", True)
    if W.is_monomial:
        reg = regular_numbers(W)
        free = {d for d in reg if acts_freely(W, springer_regular_element(W, d).w)}
        return FreelyRegularReport(reg, free, "witness")
    data = regular_class_data(W)
    reg = set(data)
    free = set()
    for d, reps in data.items():
        if any(W.element_order(w) == d and acts_freely(W, w) for w in reps):
            free.add(d)
    return FreelyRegularReport(reg, free, "class-search")


def freely_regular_numbers(W: ReflectionGroup) -> set[int]:
    return freely_regular_report(W).freely


def format_regular_list(regular: set, freely: set) -> str:
    """Table notation: 1 omitted, freely regular numbers in parentheses."""
    return ", ".join(f"({d})" if d in freely else str(d) for d in sorted(regular) if d != 1)
