"""Character tables, Frobenius-Schur indicators and the Kaehler criterion.

A compact flat manifold of dimension N with holonomy representation rho is
Kaehler iff N is even and every irreducible constituent of rho of real type
occurs with even multiplicity.  For the lattice P0 the rational character of
rho is the permutation character on the hyperplanes (see the trace identity in
the crystal module), so only that character is needed.

Character tables are found by the Dixon-Schneider method modulo a prime
p = 1 mod exp(G) and then lifted to exact cyclotomic values; the lifted table
is re-verified by exact orthogonality before use.
"""

from __future__ import annotations

import logging
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cyclotomic import ZERO, CycNum, root_of_unity
from .groups import PermGroup

log = logging.getLogger(__name__)

TABLE_BOUND = 2000


class CharacterTableError(RuntimeError):
    pass


# -- arithmetic modulo p ----------------------------------------------------------


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % k for k in range(2, math.isqrt(n) + 1))


def choose_prime(order: int, exponent: int) -> int:
    p = exponent * (2 * order // exponent + 1) + 1
    while not _is_prime(p):
        p += exponent
    return p


def _primitive_root_mod(p: int) -> int:
    fac = [q for q in range(2, p) if (p - 1) % q == 0 and _is_prime(q)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in fac):
            return g
    return 1


def _kernel_mod(rows: list, p: int) -> list:
    """Basis (as rows, RREF-derived) of {v : M v = 0} over F_p."""
    m = [list(r) for r in rows]
    ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-m[i][f]) % p
        basis.append(v)
    return basis


def _row_reduce(vectors: list, p: int) -> tuple[list, list]:
    """RREF rows and pivot columns of the span of the given vectors."""
    m = [list(v) for v in vectors]
    ncols = len(m[0])
    pivots, r = [], 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] % p), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] % p:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def _charpoly_mod(M: list, p: int) -> list:
    """Characteristic polynomial (coefficients, constant first) via Hessenberg form."""
    n = len(M)
    H = [list(r) for r in M]
    for k in range(n - 2):
        piv = next((i for i in range(k + 1, n) if H[i][k] % p), None)
        if piv is None:
            continue
        if piv != k + 1:
            H[piv], H[k + 1] = H[k + 1], H[piv]
            for row in H:
                row[piv], row[k + 1] = row[k + 1], row[piv]
        inv = pow(H[k + 1][k], p - 2, p)
        for i in range(k + 2, n):
            f = H[i][k] * inv % p
            if f:
                H[i] = [(a - f * b) % p for a, b in zip(H[i], H[k + 1])]
                for row in H:
                    row[k + 1] = (row[k + 1] + f * row[i]) % p
    polys = [[1]]
    for k in range(n):
        # p_{k+1} = (x - h_kk) p_k - sum_{i<k} h_ik (prod_{i<m<=k} h_{m,m-1}) p_i
        pk = polys[-1]
        nxt = [0] + pk
        for i, c in enumerate(pk):
            nxt[i] = (nxt[i] - H[k][k] * c) % p
        prod = 1
        for i in range(k - 1, -1, -1):
            prod = prod * H[i + 1][i] % p
            if not prod:
                break
            f = H[i][k] * prod % p
            for t, c in enumerate(polys[i]):
                nxt[t] = (nxt[t] - f * c) % p
        polys.append(nxt)
    return polys[-1]


def _roots_mod(poly: list, p: int) -> list:
    out = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            out.append(x)
    return out


# -- characters -------------------------------------------------------------------


@dataclass
class ClassData:
    group: PermGroup
    reps: list
    sizes: list
    orders: list
    inverse: list           # class index of g^-1
    power_map: dict = field(default_factory=dict)   # (j, t) -> class of g_j^t

    @property
    def order(self) -> int:
        return self.group.order()

    def power_class(self, j: int, t: int) -> int:
        key = (j, t % self.orders[j])
        c = self.power_map.get(key)
        if c is None:
            c = self.group.class_id(self.group.power(self.reps[j], key[1]))
            self.power_map[key] = c
        return c


def class_data(G: PermGroup) -> ClassData:
    classes = G.conjugacy_classes()
    reps = [c[0] for c in classes]
    return ClassData(G, reps, [len(c) for c in classes], [G.element_order(x) for x in reps],
                     [G.class_id(G.inv(x)) for x in reps])


@dataclass
class Character:
    values: tuple           # CycNum per class
    degree: int
    fs_indicator: int | None = None

    def __getitem__(self, j):
        return self.values[j]


@dataclass
class CharacterTable:
    classes: ClassData
    characters: list

    def inner(self, a, b) -> Fraction:
        """<a, b> for class functions given as value sequences."""
        total = ZERO
        for s, x, y in zip(self.classes.sizes, a, b):
            total = total + CycNum.rational(s) * x * y.conj()
        total = total.canonical()
        if not total.is_rational():
            raise CharacterTableError("inner product is not rational")
        return total.to_fraction() / self.classes.order


def _class_matrices(cd: ClassData) -> list:
    """a[j][k][l] = #{x in C_j : x^-1 g_l in C_k}."""
    G = cd.group
    classes = G.conjugacy_classes()
    r = len(classes)
    inv_cls = [[G.inv(x) for x in c] for c in classes]
    mats = []
    for j in range(r):
        a = [[0] * r for _ in range(r)]
        for l, g in enumerate(cd.reps):
            for xi in inv_cls[j]:
                a[G.class_id(G.mul(xi, g))][l] += 1
        mats.append(a)
    return mats


def _split_space(mats: list, p: int, r: int, rng: random.Random) -> list:
    """Common 1-dimensional eigenspaces of the commuting matrices (column action)."""
    pending = [[[int(i == j) for j in range(r)] for i in range(r)]]
    done = []
    order = list(range(1, r))
    attempts = 0
    while pending:
        basis = pending.pop()
        if len(basis) == 1:
            done.append(basis[0])
            continue
        attempts += 1
        if attempts > 50 * r + 50:
            raise CharacterTableError("eigenspace splitting did not converge")
        coeffs = [rng.randrange(p) for _ in order]
        # restrict a random combination to span(basis), coordinates read at the pivots
        rows, piv = _row_reduce(basis, p)
        comb = [[0] * r for _ in range(r)]
        for c, j in zip(coeffs, order):
            if c:
                A = mats[j]
                for k in range(r):
                    Ak, ck = A[k], comb[k]
                    for l in range(r):
                        if Ak[l]:
                            ck[l] = (ck[l] + c * Ak[l]) % p
        images = [[sum(comb[k][l] * b[l] for l in range(r)) % p for k in range(r)] for b in rows]
        R = [[img[q] for q in piv] for img in images]        # image of b_i = sum_q R[i][q] b_q
        Rt = [list(col) for col in zip(*R)]                   # matrix acting on coordinate columns
        lams = _roots_mod(_charpoly_mod(Rt, p), p)
        if len(lams) == 1 and len(rows) > 1:
            # the combination did not separate this space; try again
            pending.append(rows)
            continue
        for lam in lams:
            shifted = [[(Rt[a][b] - (lam if a == b else 0)) % p for b in range(len(rows))]
                       for a in range(len(rows))]
            ker = _kernel_mod(shifted, p)
            vecs = [[sum(c * rows[i][t] for i, c in enumerate(kv)) % p for t in range(r)] for kv in ker]
            pending.append(vecs)
    return done


def character_table(G: PermGroup, bound: int = TABLE_BOUND, seed: int = 0) -> CharacterTable:
    order = G.order()
    if order > bound:
        raise CharacterTableError(f"group order {order} exceeds the character table bound {bound}")
    cd = class_data(G)
    r = len(cd.reps)
    e = G.exponent()
    p = choose_prime(order, e)
    z = pow(_primitive_root_mod(p), (p - 1) // e, p)
    mats = _class_matrices(cd)
    vecs = _split_space(mats, p, r, random.Random(seed))
    if len(vecs) != r:
        raise CharacterTableError(f"found {len(vecs)} central characters, expected {r}")
    chars = []
    for v in vecs:
        if v[0] % p == 0:
            raise CharacterTableError("central character vanishes at the identity")
        inv0 = pow(v[0], p - 2, p)
        omega = [x * inv0 % p for x in v]
        s = sum(omega[j] * omega[cd.inverse[j]] * pow(cd.sizes[j], p - 2, p) for j in range(r)) % p
        d2 = order * pow(s, p - 2, p) % p
        deg = math.isqrt(d2)
        if deg * deg != d2:
            raise CharacterTableError("degree is not an integer square root")
        modvals = [omega[j] * deg * pow(cd.sizes[j], p - 2, p) % p for j in range(r)]
        vals = []
        for j in range(r):
            o = cd.orders[j]
            zo = pow(z, e // o, p)
            total = ZERO
            for k in range(o):
                mk = sum(modvals[cd.power_class(j, t)] * pow(zo, (-k * t) % o, p) for t in range(o))
                mk = mk * pow(o, p - 2, p) % p
                if mk > deg:
                    raise CharacterTableError("eigenvalue multiplicity out of range while lifting")
                if mk:
                    total = total + CycNum.rational(mk) * root_of_unity(o, k)
            vals.append(total.canonical())
        chars.append(Character(tuple(vals), deg))
    chars.sort(key=lambda c: (c.degree, [x.sort_key() for x in c.values]))
    table = CharacterTable(cd, chars)
    verify_table(table)
    for c in chars:
        c.fs_indicator = frobenius_schur(table, c)
    return table


def verify_table(table: CharacterTable):
    cd = table.classes
    if sum(c.degree ** 2 for c in table.characters) != cd.order:
        raise CharacterTableError("sum of squared degrees differs from the group order")
    for i, a in enumerate(table.characters):
        for j in range(i, len(table.characters)):
            ip = table.inner(a.values, table.characters[j].values)
            if ip != (1 if i == j else 0):
                raise CharacterTableError(f"orthogonality fails for characters {i}, {j}")


def frobenius_schur(table: CharacterTable, chi: Character) -> int:
    """(1/|G|) sum_g chi(g^2), which must be -1, 0 or 1."""
    cd = table.classes
    total = ZERO
    for j in range(len(cd.reps)):
        total = total + CycNum.rational(cd.sizes[j]) * chi.values[cd.power_class(j, 2)]
    total = total.canonical()
    if not total.is_rational():
        raise CharacterTableError("Frobenius-Schur sum is irrational")
    nu = total.to_fraction() / cd.order
    if nu not in (-1, 0, 1):
        raise CharacterTableError(f"Frobenius-Schur indicator {nu} is not in -1, 0, 1")
    return int(nu)


def permutation_character(table: CharacterTable) -> tuple:
    """Number of fixed points of each class representative (G acts on its points)."""
    return tuple(CycNum.rational(sum(1 for i, x in enumerate(g) if i == x)) for g in table.classes.reps)


# -- the Kaehler predicate ----------------------------------------------------------


@dataclass
class KahlerResult:
    dimension: int
    group_order: int
    kahler: bool
    constituents: list          # (degree, fs, multiplicity) per irreducible
    orbits: int                 # <perm, 1>, the number of orbits on the hyperplanes

    def as_dict(self) -> dict:
        return {"dimension": self.dimension, "group_order": self.group_order,
                "kahler": self.kahler, "orbits": self.orbits,
                "constituents": [{"degree": d, "fs": f, "multiplicity": m}
                                 for d, f, m in self.constituents]}


def kahler_predicate(Q: PermGroup, bound: int = TABLE_BOUND) -> KahlerResult:
    """Kaehler criterion for a subgroup Q of W/Z acting on the hyperplanes."""
    table = character_table(Q, bound)
    perm = permutation_character(table)
    cons = []
    ok = Q.degree % 2 == 0
    for chi in table.characters:
        mult = table.inner(perm, chi.values)
        if mult.denominator != 1:
            raise CharacterTableError("non-integral multiplicity")
        mult = int(mult)
        cons.append((chi.degree, chi.fs_indicator, mult))
        if chi.fs_indicator == 1 and mult % 2:
            ok = False
    triv = next(c for c in table.characters if all(v == 1 for v in c.values))
    orbits = int(table.inner(perm, triv.values))
    return KahlerResult(Q.degree, Q.order(), ok, cons, orbits)


def involution_scan(Wbar: PermGroup) -> list:
    """Kaehler verdict for one subgroup of order 2 per class of involutions in W/Z."""
    out = []
    for cls in Wbar.conjugacy_classes():
        x = cls[0]
        if x != Wbar.identity and Wbar.mul(x, x) == Wbar.identity:
            res = kahler_predicate(Wbar.subgroup([x]))
            out.append((len(cls), res))
    return out


# -- the dihedral example ------------------------------------------------------------


@dataclass
class DihedralReport:
    m: int
    order: int
    dimension: int
    center_order: int
    fixed_by_reflection: int
    kahler: KahlerResult
    presentation: str

    def as_dict(self) -> dict:
        return {"m": self.m, "order": self.order, "dimension": self.dimension,
                "center_order": self.center_order,
                "fixed_by_reflection": self.fixed_by_reflection,
                "kahler": self.kahler.kahler, "presentation": self.presentation,
                "constituents": self.kahler.as_dict()["constituents"]}


def dihedral_presentation(m: int) -> str:
    return (f"generators sigma, x_k (k in Z/{2 * m}Z); "
            "relations sigma^2 = x_0, sigma x_k sigma^-1 = x_{-k}")


def dihedral_example(m: int) -> DihedralReport:
    """The dihedral group of order 4m (m odd) with Q generated by a reflection's class."""
    if m < 3 or m % 2 == 0:
        raise ValueError("m must be an odd integer >= 3")
    from .refgroup import build_family
    W = build_family(2 * m, 2 * m, 2)
    s = W.distinguished_reflections[0]
    Q = W.quotient.group.subgroup([W.hperm(s)])
    res = kahler_predicate(Q)
    return DihedralReport(m, W.order(), len(W.hyperplanes), W.center_order(),
                          len(W.fixed_hyperplanes(s)), res, dihedral_presentation(m))
