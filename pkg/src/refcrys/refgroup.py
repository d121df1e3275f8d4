"""Complex reflection groups: the monomial family G(de,e,n) and catalog matrix groups.

Every realized group is carried as a faithful permutation group on a finite
W-stable set of vectors (``points``).  Monomial groups use the vectors
zeta^a e_i; matrix groups use the W-orbit of the root vectors of their
generating reflections.  Matrices, hyperplanes and the action on them are
reconstructed from those permutations on demand.
"""

from __future__ import annotations

import logging
import math
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence, Union

from .cyclotomic import ONE, ZERO, CycMatrix, CycNum, CyclotomicError, root_of_unity
from .groups import DEFAULT_ORDER_BOUND, OrderBoundExceeded, PermGroup

log = logging.getLogger(__name__)


class StubGroupError(RuntimeError):
    """Raised when a computation needs a matrix realization the group does not have."""


# -- hyperplanes ------------------------------------------------------------------


@dataclass(frozen=True)
class Coord:
    """The hyperplane z_i = 0 (1-based index)."""
    i: int

    def __str__(self):
        return f"z{self.i}=0"


@dataclass(frozen=True)
class Diff:
    """The hyperplane z_i = zeta_m^k z_j with i < j, where m = de."""
    i: int
    j: int
    k: int

    def __str__(self):
        return f"z{self.i}=zeta^{self.k}*z{self.j}"


@dataclass(frozen=True)
class Normal:
    """The kernel of the linear form sum v_i z_i; v has leading coefficient 1."""
    v: tuple

    def __str__(self):
        return "ker(" + ", ".join(map(repr, self.v)) + ")"


Hyperplane = Union[Coord, Diff, Normal]


def hyperplane_sort_key(h: Hyperplane) -> tuple:
    if isinstance(h, Coord):
        return (0, h.i)
    if isinstance(h, Diff):
        return (1, h.i, h.j, h.k)
    return (2, tuple(x.sort_key() for x in h.v))


def normalize_form(v: Sequence[CycNum]) -> tuple:
    lead = next(x for x in v if not x.is_zero())
    inv = lead.inverse()
    return tuple((x * inv).canonical() for x in v)


# -- element views ---------------------------------------------------------------


@dataclass(frozen=True)
class MonomialElement:
    """w . e_i = zeta_m^{exps[i]} e_{perm[i]} with 0-based indices, m = de."""
    perm: tuple
    exps: tuple
    m: int

    def __mul__(self, other: "MonomialElement") -> "MonomialElement":
        # (self o other) e_i = zeta^{b_i + a_{sigma(i)}} e_{pi(sigma(i))}
        perm = tuple(self.perm[s] for s in other.perm)
        exps = tuple((b + self.exps[s]) % self.m for b, s in zip(other.exps, other.perm))
        return MonomialElement(perm, exps, self.m)

    def to_matrix(self) -> CycMatrix:
        n = len(self.perm)
        rows = [[ZERO] * n for _ in range(n)]
        for i, (p, a) in enumerate(zip(self.perm, self.exps)):
            rows[p][i] = root_of_unity(self.m, a)
        return CycMatrix(rows)

    def act(self, h: Hyperplane) -> Hyperplane:
        if isinstance(h, Coord):
            return Coord(self.perm[h.i - 1] + 1)
        if isinstance(h, Diff):
            i, j = h.i - 1, h.j - 1
            k = (h.k + self.exps[i] - self.exps[j]) % self.m
            pi, pj = self.perm[i], self.perm[j]
            if pi < pj:
                return Diff(pi + 1, pj + 1, k)
            return Diff(pj + 1, pi + 1, (-k) % self.m)
        raise TypeError("monomial elements act on Coord/Diff hyperplanes")


@dataclass(frozen=True)
class MatrixElement:
    mat: CycMatrix


GroupElement = Union[MonomialElement, MatrixElement]


# -- the group ------------------------------------------------------------------


def _vec_key(v: Sequence[CycNum]) -> tuple:
    return tuple(x.raw for x in v)


def _mat_vec(m: CycMatrix, v: Sequence[CycNum]) -> tuple:
    return m.apply(v)


def _scale_vec(c: CycNum, v: Sequence[CycNum]) -> tuple:
    return tuple(c * x for x in v)


def _add_vec(a, b) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


@dataclass
class DegreeData:
    degrees: tuple
    codegrees: tuple

    def __post_init__(self):
        if len(self.degrees) != len(self.codegrees):
            raise ValueError("degrees and codegrees must have equal length")


class ReflectionGroup:
    """A realized (or stub) complex reflection group."""

    def __init__(self, label: str, *, family: tuple | None = None, dim: int,
                 points: list | None = None, generator_perms: list | None = None,
                 basis: list | None = None, order_bound: int = DEFAULT_ORDER_BOUND,
                 catalog_entry=None, stub_reason: str | None = None):
        self.label = label
        self.family = family
        self.dim = dim
        self.catalog_entry = catalog_entry
        self.order_bound = order_bound
        self.stub_reason = stub_reason
        self.points = points
        self._basis = basis
        self.group: PermGroup | None = None
        if points is not None:
            self.group = PermGroup(len(points), generator_perms, order_bound=order_bound, name=label)
        self._hperm_cache: dict = {}
        self._matrix_cache: dict = {}

    # -- capability -----------------------------------------------------------
    @property
    def is_stub(self) -> bool:
        return self.group is None

    def require_realization(self):
        if self.group is None:
            raise StubGroupError(f"{self.label} has no matrix realization ({self.stub_reason})")

    @property
    def is_monomial(self) -> bool:
        return self.family is not None

    def __repr__(self):
        return f"ReflectionGroup({self.label})"

    # -- elements ------------------------------------------------------------------
    @property
    def elements(self) -> list:
        self.require_realization()
        return self.group.elements

    def order(self) -> int:
        if self.group is None:
            return self.catalog_entry.order
        return self.group.order()

    @property
    def identity(self):
        return self.group.identity

    def mul(self, a, b):
        return self.group.mul(a, b)

    def inv(self, a):
        return self.group.inv(a)

    @property
    def generators(self) -> list:
        self.require_realization()
        return self.group.generators

    def monomial(self, w) -> MonomialElement:
        if not self.is_monomial:
            raise TypeError("not a monomial group")
        d, e, n = self.family
        m = d * e
        perm = tuple(w[i * m] // m for i in range(n))
        exps = tuple(w[i * m] % m for i in range(n))
        return MonomialElement(perm, exps, m)

    def from_monomial(self, mono: MonomialElement):
        d, e, n = self.family
        m = d * e
        img = [0] * (n * m)
        for i in range(n):
            for a in range(m):
                img[i * m + a] = mono.perm[i] * m + (a + mono.exps[i]) % m
        return self.group.make(img)

    def from_matrix(self, mat: CycMatrix):
        """Element of W with the given matrix (KeyError when not in W)."""
        try:
            img = [self._point_index[_vec_key(self._embed_vec(mat.apply(p)))] for p in self.points]
        except CyclotomicError:
            raise KeyError("matrix entries lie outside the field of the group") from None
        w = self.group.make(img)
        if w not in self.group.index:
            raise KeyError("matrix is not an element of the group")
        return w

    def element(self, x):
        """Internal permutation form of a MonomialElement, MatrixElement or permutation."""
        if isinstance(x, MonomialElement):
            return self.from_monomial(x)
        if isinstance(x, MatrixElement):
            return self.from_matrix(x.mat)
        if isinstance(x, CycMatrix):
            return self.from_matrix(x)
        return self.group.make(x)

    @cached_property
    def _point_index(self) -> dict:
        return {_vec_key(p): i for i, p in enumerate(self.points)}

    @cached_property
    def _field_conductor(self) -> int:
        n = 1
        for p in self.points:
            for x in p:
                n = math.lcm(n, x.raw[0])
        return n

    def _embed_vec(self, v):
        N = self._field_conductor
        return tuple(x.embed(N) if N % x.raw[0] == 0 else x.canonical().embed(N) for x in v)

    @cached_property
    def _basis_inverse(self) -> CycMatrix:
        cols = [self.points[b] for b in self._basis]
        return CycMatrix([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]).inverse()

    def matrix(self, w) -> CycMatrix:
        """Exact matrix of an element given in permutation form."""
        w = self.group.make(w)
        m = self._matrix_cache.get(w)
        if m is not None:
            return m
        if self.is_monomial:
            m = self.monomial(w).to_matrix()
        else:
            cols = [self.points[w[b]] for b in self._basis]
            img = CycMatrix([[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])
            m = img * self._basis_inverse
        if len(self._matrix_cache) < 20000:
            self._matrix_cache[w] = m
        return m

    def apply(self, w, v: Sequence[CycNum]) -> tuple:
        return self.matrix(w).apply(v)

    def element_order(self, w) -> int:
        return self.group.element_order(w)

    # -- hyperplanes ----------------------------------------------------------------
    @cached_property
    def _hyperplane_data(self):
        self.require_realization()
        if self.is_monomial:
            return self._monomial_hyperplanes()
        return self._matrix_hyperplanes()

    @property
    def hyperplanes(self) -> list:
        return self._hyperplane_data[0]

    @cached_property
    def hyperplane_index(self) -> dict:
        return {h: i for i, h in enumerate(self.hyperplanes)}

    @property
    def distinguished_reflections(self) -> list:
        """Distinguished reflection for each hyperplane (aligned with ``hyperplanes``)."""
        return self._hyperplane_data[1]

    def linear_form(self, hi: int) -> tuple:
        """Normalized linear form (row vector) whose kernel is hyperplane hi."""
        return self._hyperplane_data[2][hi]

    def _monomial_hyperplanes(self):
        d, e, n = self.family
        m = d * e
        hps: list = []
        if d > 1:
            hps += [Coord(i) for i in range(1, n + 1)]
        hps += [Diff(i, j, k) for i in range(1, n + 1) for j in range(i + 1, n + 1) for k in range(m)]
        hps.sort(key=hyperplane_sort_key)
        refl, forms = [], []
        zeta = root_of_unity(m, 1)
        for h in hps:
            perm = list(range(n))
            exps = [0] * n
            form = [ZERO] * n
            if isinstance(h, Coord):
                exps[h.i - 1] = e
                form[h.i - 1] = ONE
            else:
                i, j = h.i - 1, h.j - 1
                perm[i], perm[j] = j, i
                exps[i], exps[j] = (-h.k) % m, h.k % m
                form[i], form[j] = ONE, -(zeta ** h.k)
            refl.append(self.from_monomial(MonomialElement(tuple(perm), tuple(exps), m)))
            forms.append(tuple(x.canonical() for x in form))
        return hps, refl, forms

    def _matrix_hyperplanes(self):
        # root lines of the point set; each point is a root of some reflection
        line_of: dict = {}
        lines: list = []
        for idx, p in enumerate(self.points):
            key = _vec_key(self._embed_vec(normalize_form(p)))
            if key not in line_of:
                line_of[key] = len(lines)
                lines.append(idx)
        point_line = [line_of[_vec_key(self._embed_vec(normalize_form(p)))] for p in self.points]
        # reflections from conjugacy classes
        reflections_by_line: dict = {}
        for cls in self.group.conjugacy_classes():
            rep = cls[0]
            if rep == self.group.identity:
                continue
            if (self.matrix(rep) - CycMatrix.identity(self.dim)).rank() != 1:
                continue
            for r in cls:
                hit = None
                for li, p in enumerate(lines):
                    if r[p] != p and point_line[r[p]] == li:
                        hit = li
                        break
                if hit is None:
                    raise RuntimeError(f"{self.label}: reflection root line missing from point set")
                reflections_by_line.setdefault(hit, []).append(r)
        if set(reflections_by_line) != set(range(len(lines))):
            raise RuntimeError(f"{self.label}: a root line carries no reflection")
        entries = []
        for li, p in enumerate(lines):
            refls = reflections_by_line[li]
            e_h = len(refls) + 1
            target = root_of_unity(e_h, 1)
            root = self.points[p]
            dist = None
            for r in refls:
                img = self.points[r[p]]
                c = next(a for a in root if not a.is_zero())
                jj = next(t for t, a in enumerate(root) if not a.is_zero())
                if img[jj] / c == target:
                    dist = r
                    break
            m = self.matrix(dist) - CycMatrix.identity(self.dim)
            row = next(r for r in m.rows if any(not x.is_zero() for x in r))
            form = normalize_form(row)
            entries.append((Normal(form), dist, form, p))
        entries.sort(key=lambda t: hyperplane_sort_key(t[0]))
        self._root_points = [t[3] for t in entries]
        order = {line_of_idx: k for k, line_of_idx in enumerate(point_line[t[3]] for t in entries)}
        self._point_hyperplane = [order[li] for li in point_line]
        return [t[0] for t in entries], [t[1] for t in entries], [t[2] for t in entries]

    def hperm(self, w) -> bytes | tuple:
        """Permutation of hyperplane indices induced by w."""
        res = self._hperm_cache.get(w)
        if res is not None:
            return res
        hps = self.hyperplanes
        if self.is_monomial:
            mono = self.monomial(w)
            idx = self.hyperplane_index
            img = [idx[mono.act(h)] for h in hps]
        else:
            ph = self._point_hyperplane
            img = [ph[w[p]] for p in self._root_points]
        res = bytes(img) if len(img) <= 256 else tuple(img)
        self._hperm_cache[w] = res
        return res

    def act(self, w, h: Hyperplane) -> Hyperplane:
        return self.hyperplanes[self.hperm(w)[self.hyperplane_index[h]]]

    def fixed_hyperplanes(self, w) -> list[int]:
        hp = self.hperm(w)
        return [i for i, j in enumerate(hp) if i == j]

    def reflection_hyperplane(self, s) -> int:
        """Index of the hyperplane fixed by a reflection s."""
        mat = self.matrix(s) - CycMatrix.identity(self.dim)
        if mat.rank() != 1:
            raise ValueError("not a reflection")
        row = next(r for r in mat.rows if any(not x.is_zero() for x in r))
        form = normalize_form(row)
        for i in range(len(self.hyperplanes)):
            if self.linear_form(i) == form:
                return i
        raise RuntimeError("reflection hyperplane not in the arrangement")

    def root_vector(self, hi: int) -> tuple:
        """Spanning vector of Im(s_H - 1), the orthogonal of H for any W-invariant form."""
        if not self.is_monomial:
            self.hyperplanes
            return self.points[self._root_points[hi]]
        cache = self.__dict__.setdefault("_root_vectors", {})
        if hi not in cache:
            m = self.matrix(self.distinguished_reflections[hi]) - CycMatrix.identity(self.dim)
            cache[hi] = next(col for col in (m.column(j) for j in range(self.dim))
                             if any(not x.is_zero() for x in col))
        return cache[hi]

    def root_scalar(self, w, hi: int) -> CycNum:
        """The scalar c with w.r_H = c.r_H, for w stabilizing hyperplane hi."""
        r = self.root_vector(hi)
        t = next(i for i, x in enumerate(r) if not x.is_zero())
        if self.is_monomial:
            img = self.monomial(w).to_matrix().apply(r)
        else:
            img = self.points[w[self._root_points[hi]]]
        c = (img[t] / r[t]).canonical()
        if any(not (c * a - b).is_zero() for a, b in zip(r, img)):
            raise ValueError("element does not stabilize the root line")
        return c

    def hyperplane_orbits(self) -> list[list[int]]:
        seen = [False] * len(self.hyperplanes)
        gens = [self.hperm(g) for g in self.generators]
        orbits = []
        for start in range(len(self.hyperplanes)):
            if seen[start]:
                continue
            orb = [start]
            seen[start] = True
            k = 0
            while k < len(orb):
                for g in gens:
                    j = g[orb[k]]
                    if not seen[j]:
                        seen[j] = True
                        orb.append(j)
                k += 1
            orbits.append(sorted(orb))
        return orbits

    # -- center and quotient ---------------------------------------------------------
    @cached_property
    def center(self) -> PermGroup:
        """Kernel of the action on hyperplanes; equals the centre of W."""
        ident = bytes(range(len(self.hyperplanes))) if len(self.hyperplanes) <= 256 else tuple(range(len(self.hyperplanes)))
        kern = [w for w in self.elements if self.hperm(w) == ident]
        return self.group.subgroup_from_elements(kern, name=f"Z({self.label})")

    def center_order(self) -> int:
        if self.group is None:
            return self.catalog_entry.center_order
        return self.center.order()

    @cached_property
    def quotient(self) -> "QuotientGroup":
        return QuotientGroup(self)

    def is_irreducible(self) -> bool:
        from .crystal import hyperplane_components
        return len(hyperplane_components(self)) == 1

    # -- degrees ------------------------------------------------------------------
    def degree_data(self) -> DegreeData:
        from .regular import degrees_codegrees
        return degrees_codegrees(self)


class QuotientGroup:
    """W / Z(W), realized as the faithful permutation group on the hyperplanes."""

    def __init__(self, W: ReflectionGroup):
        self.parent = W
        nh = len(W.hyperplanes)
        self.group = PermGroup(nh, [W.hperm(g) for g in W.generators], order_bound=W.order_bound,
                               name=f"{W.label}/Z")
        if self.group.order() * W.center.order() != W.order():
            raise RuntimeError(f"{W.label}: |W/Z| * |Z| != |W|")

    def image(self, w):
        return self.parent.hperm(w)

    def order(self) -> int:
        return self.group.order()

    def preimage(self, sub: PermGroup) -> PermGroup:
        W = self.parent
        members = sub.index
        elems = [w for w in W.elements if W.hperm(w) in members]
        return W.group.subgroup_from_elements(elems)

    def image_of(self, sub: PermGroup) -> PermGroup:
        return self.group.subgroup([self.parent.hperm(g) for g in sub.generators])

    def representative(self, coset) -> bytes:
        """Canonical representative in W of a coset (first enumerated element)."""
        W = self.parent
        for w in W.elements:
            if W.hperm(w) == coset:
                return w
        raise KeyError("not an element of W/Z")


# -- constructors ---------------------------------------------------------------


def build_family(de: int, e: int, n: int, *, order_bound: int = DEFAULT_ORDER_BOUND) -> ReflectionGroup:
    """The monomial group G(de, e, n); arguments follow the G(m, p, n) notation."""
    if min(de, e) < 1 or de % e:
        raise ValueError("need positive de and e with e dividing de")
    if n < 2:
        raise ValueError("G(de,e,n) requires n >= 2")
    d = de // e
    m = d * e
    order = m ** n * math.factorial(n) // e
    if order > order_bound:
        raise OrderBoundExceeded(f"G({m},{e},{n}) has order {order} > bound {order_bound}")
    label = f"G({m},{e},{n})"
    gens = []
    def mono(perm, exps):
        img = [0] * (n * m)
        for i in range(n):
            for a in range(m):
                img[i * m + a] = perm[i] * m + (a + exps[i]) % m
        return img
    for i in range(n - 1):
        perm = list(range(n))
        perm[i], perm[i + 1] = i + 1, i
        gens.append(mono(perm, [0] * n))
    if m > 1:
        perm = list(range(n))
        perm[0], perm[1] = 1, 0
        exps = [0] * n
        exps[0], exps[1] = m - 1, 1
        gens.append(mono(perm, exps))
    if d > 1:
        exps = [0] * n
        exps[0] = e
        gens.append(mono(list(range(n)), exps))
    points = []
    zeta = [root_of_unity(m, a) for a in range(m)]
    for i in range(n):
        for a in range(m):
            points.append(tuple(zeta[a] if t == i else ZERO for t in range(n)))
    W = ReflectionGroup(label, family=(d, e, n), dim=n, points=points, generator_perms=gens,
                        basis=[i * m for i in range(n)], order_bound=order_bound)
    return W


def from_matrices(label: str, matrices: Sequence[CycMatrix], *, order_bound: int = DEFAULT_ORDER_BOUND,
                  catalog_entry=None) -> ReflectionGroup:
    """Matrix group generated by reflections, acting on the orbit of their roots."""
    dim = matrices[0].nrows
    N = 1
    for m in matrices:
        for r in m.rows:
            for x in r:
                N = math.lcm(N, x.canonical().raw[0])
    mats = [CycMatrix([[x.canonical().embed(N) for x in r] for r in m.rows], _trusted=False) for m in matrices]
    ident = CycMatrix.identity(dim)
    roots = []
    for m in mats:
        diff = m - ident
        if diff.rank() != 1:
            raise ValueError(f"{label}: generator is not a reflection")
        col = next(c for c in zip(*diff.rows) if any(not x.is_zero() for x in c))
        roots.append(tuple(col))

    def emb(v):
        return tuple(x.embed(N) if x.raw[0] != N else x for x in v)

    points, index, lines = [], {}, set()
    images = [dict() for _ in mats]
    for r in roots:
        r = emb(r)
        if _vec_key(emb(normalize_form(r))) in lines:
            continue
        # close the orbit of this root; roots on lines already present are skipped
        start = len(points)
        index[_vec_key(r)] = start
        points.append(r)
        k = start
        while k < len(points):
            p = points[k]
            for gi, m in enumerate(mats):
                q = emb(m.apply(p))
                key = _vec_key(q)
                j = index.get(key)
                if j is None:
                    j = len(points)
                    index[key] = j
                    points.append(q)
                    if len(points) > 4096:
                        raise RuntimeError(f"{label}: root orbit too large; group infinite?")
                images[gi][k] = j
            k += 1
        for p in points[start:]:
            lines.add(_vec_key(emb(normalize_form(p))))
    gen_perms = [[img[i] for i in range(len(points))] for img in images]
    # basis among the points
    basis, rows = [], []
    for i, p in enumerate(points):
        trial = CycMatrix(rows + [list(p)])
        if trial.rank() == len(rows) + 1:
            rows.append(list(p))
            basis.append(i)
            if len(basis) == dim:
                break
    if len(basis) != dim:
        raise ValueError(f"{label}: roots do not span the space")
    return ReflectionGroup(label, dim=dim, points=points, generator_perms=gen_perms, basis=basis,
                           order_bound=order_bound, catalog_entry=catalog_entry)


def stub_group(entry, reason: str) -> ReflectionGroup:
    return ReflectionGroup(entry.label, dim=entry.rank, catalog_entry=entry, stub_reason=reason)


def build_exceptional(label: str, *, order_bound: int = DEFAULT_ORDER_BOUND, data_dir=None) -> ReflectionGroup:
    from .catalog import load_entry
    entry = load_entry(label, data_dir=data_dir)
    if not entry.generators:
        return stub_group(entry, "no bundled matrices")
    if entry.order > order_bound:
        return stub_group(entry, f"order {entry.order} exceeds enumeration bound {order_bound}")
    W = from_matrices(entry.label, entry.generators, order_bound=order_bound, catalog_entry=entry)
    if W.order() != entry.order:
        raise RuntimeError(f"{entry.label}: bundled generators give order {W.order()}, expected {entry.order}")
    return W


# -- group specs -----------------------------------------------------------------

_FAMILY_RE = re.compile(r"^G\((\d+),(\d+),(\d+)\)$")
_EXC_RE = re.compile(r"^G(\d+)$")


@dataclass(frozen=True)
class GroupSpec:
    kind: str  # "family" or "exceptional"
    params: tuple

    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        s = re.sub(r"\s+", "", text).upper()
        m = _FAMILY_RE.match(s)
        if m:
            de, e, n = (int(x) for x in m.groups())
            if e < 1 or de < 1 or de % e:
                raise ValueError(f"invalid family parameters in {text!r}: e must divide de")
            if n < 2:
                raise ValueError(f"invalid family parameters in {text!r}: n must be at least 2")
            return cls("family", (de // e, e, n))
        m = _EXC_RE.match(s)
        if m:
            k = int(m.group(1))
            if not 4 <= k <= 37:
                raise ValueError(f"exceptional label out of range: {text!r}")
            return cls("exceptional", (k,))
        raise ValueError(f"cannot parse group name {text!r}; expected G(de,e,n) or Gk")

    def canonical(self) -> str:
        if self.kind == "family":
            d, e, n = self.params
            return f"G({d * e},{e},{n})"
        return f"G{self.params[0]}"

    def __str__(self):
        return self.canonical()


def build_group(spec: "str | GroupSpec", *, order_bound: int = DEFAULT_ORDER_BOUND, data_dir=None) -> ReflectionGroup:
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    if spec.kind == "family":
        d, e, n = spec.params
        return build_family(d * e, e, n, order_bound=order_bound)
    return build_exceptional(spec.canonical(), order_bound=order_bound, data_dir=data_dir)
