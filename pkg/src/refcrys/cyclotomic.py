"""Exact arithmetic in cyclotomic fields and small exact linear algebra.

Elements of Q(zeta_n) are stored in the power basis 1, z, ..., z^(phi(n)-1)
reduced modulo the n-th cyclotomic polynomial, as an integer numerator
vector over a positive common denominator.  Equality and hashing go through
the canonical form, i.e. the coordinates in the smallest cyclotomic field
containing the element, so values coming from different fields compare
correctly.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence


class CyclotomicError(ArithmeticError):
    pass


def _prime_factors(n: int) -> list[int]:
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


def euler_phi(n: int) -> int:
    r = n
    for p in _prime_factors(n):
        r = r // p * (p - 1)
    return r


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    # coefficient lists, lowest degree first; b monic
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1]
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a[: len(b) - 1]):
        raise CyclotomicError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


class _Field:
    """Precomputed reduction data for Q(zeta_n)."""

    __slots__ = ("n", "phi", "low", "pow_table", "gal_units")

    def __init__(self, n: int):
        self.n = n
        poly = cyclotomic_polynomial(n)
        self.phi = len(poly) - 1
        # x^phi = -sum_{j<phi} poly[j] x^j; keep only the nonzero terms
        self.low = tuple((j, -c) for j, c in enumerate(poly[:-1]) if c)
        phi = self.phi
        table = []
        for m in range(n):
            if m < phi:
                v = [0] * phi
                v[m] = 1
            else:
                # multiply the previous power by x and fold the top coefficient
                v = [0] + list(table[m - 1])
                t = v.pop()
                for j, cj in self.low:
                    v[j] += t * cj
            table.append(tuple(v))
        self.pow_table = tuple(table)
        self.gal_units = tuple(k for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _field(n: int) -> _Field:
    return _Field(n)


def _norm_conductor(n: int) -> int:
    return n // 2 if n % 4 == 2 else n


@lru_cache(maxsize=None)
def _descent_data(n: int, m: int):
    """Pivot rows and inverse block for expressing Q(zeta_m)-elements sitting in Q(zeta_n)."""
    fn, fm = _field(n), _field(m)
    step = n // m
    cols = [fn.pow_table[(j * step) % n] for j in range(fm.phi)]
    # choose fm.phi independent rows by exact elimination
    rows = [[Fraction(cols[j][i]) for j in range(fm.phi)] for i in range(fn.phi)]
    pivots, basis = [], []
    for i, row in enumerate(rows):
        r = list(row)
        for (pi, prow, pcol) in basis:
            if r[pcol]:
                f = r[pcol]
                r = [a - f * b for a, b in zip(r, prow)]
        nz = next((c for c, a in enumerate(r) if a), None)
        if nz is None:
            continue
        inv = 1 / r[nz]
        r = [a * inv for a in r]
        basis.append((i, r, nz))
        pivots.append(i)
        if len(pivots) == fm.phi:
            break
    sub = [rows[i] for i in pivots]
    inv = _fraction_inverse(sub)
    return tuple(pivots), inv


def _fraction_inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(m)
    a = [list(r) + [Fraction(int(i == j)) for j in range(size)] for i, r in enumerate(m)]
    for c in range(size):
        p = next(r for r in range(c, size) if a[r][c])
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(size):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [r[size:] for r in a]


class CycNum:
    """An element of a cyclotomic field, immutable."""

    __slots__ = ("_n", "_num", "_den", "_canon", "_hash")

    def __init__(self, n: int, num: Sequence[int], den: int = 1, *, _normalized: bool = False):
        if not _normalized:
            if n % 4 == 2:
                raise CyclotomicError("raw conductor must not be 2 mod 4; use CycNum.from_rationals")
            num = list(num)
            if den < 0:
                den, num = -den, [-a for a in num]
            if den == 0:
                raise ZeroDivisionError("zero denominator")
            g = math.gcd(den, *num)
            if g > 1:
                den //= g
                num = [a // g for a in num]
            num = tuple(num)
        self._n = n
        self._num = num
        self._den = den
        self._canon = None
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def from_rationals(cls, n: int, coeffs: Sequence) -> "CycNum":
        """Build sum coeffs[j] * zeta_n^j (any length, any integer n >= 1)."""
        frs = [Fraction(c) for c in coeffs]
        den = math.lcm(*(f.denominator for f in frs)) if frs else 1
        ints = [int(f * den) for f in frs]
        if n % 4 == 2:
            # zeta_{2m} = -zeta_m^((m+1)/2) for odd m
            m = n // 2
            h = (m + 1) // 2
            fld = _field(m)
            acc = [0] * fld.phi
            for j, a in enumerate(ints):
                if a:
                    sgn = -1 if j % 2 else 1
                    v = fld.pow_table[(j * h) % m]
                    for i, x in enumerate(v):
                        if x:
                            acc[i] += sgn * a * x
            return cls(m, acc, den)
        fld = _field(n)
        acc = [0] * fld.phi
        for j, a in enumerate(ints):
            if a:
                v = fld.pow_table[j % n]
                for i, x in enumerate(v):
                    if x:
                        acc[i] += a * x
        return cls(n, acc, den)

    @classmethod
    def rational(cls, q) -> "CycNum":
        q = Fraction(q)
        return cls(1, (q.numerator,), q.denominator, _normalized=True)

    @classmethod
    def coerce(cls, x) -> "CycNum":
        if isinstance(x, CycNum):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.rational(x)
        raise TypeError(f"cannot convert {type(x).__name__} to CycNum")

    # -- field embedding ----------------------------------------------------
    def embed(self, n: int) -> "CycNum":
        """Same element, re-expressed in Q(zeta_n); n must be a multiple of the raw conductor."""
        if n == self._n:
            return self
        if n % self._n:
            raise CyclotomicError(f"Q(zeta_{self._n}) is not contained in Q(zeta_{n})")
        fld = _field(n)
        step = n // self._n
        acc = [0] * fld.phi
        for j, a in enumerate(self._num):
            if a:
                v = fld.pow_table[(j * step) % n]
                for i, x in enumerate(v):
                    if x:
                        acc[i] += a * x
        return CycNum(n, tuple(acc), self._den, _normalized=True)

    def _pair(self, other: "CycNum") -> tuple[int, tuple, tuple]:
        if self._n == other._n:
            return self._n, self, other
        n = math.lcm(self._n, other._n)
        return n, self.embed(n), other.embed(n)

    # -- arithmetic -----------------------------------------------------------
    def __add__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        n, a, b = self._pair(other)
        if a._den == b._den:
            return CycNum(n, [x + y for x, y in zip(a._num, b._num)], a._den)
        da, db = a._den, b._den
        return CycNum(n, [x * db + y * da for x, y in zip(a._num, b._num)], da * db)

    __radd__ = __add__

    def __neg__(self):
        return CycNum(self._n, tuple(-x for x in self._num), self._den, _normalized=True)

    def __sub__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return CycNum.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return CycNum(self._n, [x * other for x in self._num], self._den)
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        n, a, b = self._pair(other)
        if n == 1:
            return CycNum(1, (a._num[0] * b._num[0],), a._den * b._den)
        fld = _field(n)
        phi = fld.phi
        c = [0] * (2 * phi - 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        c[i + j] += x * y
        low = fld.low
        for k in range(2 * phi - 2, phi - 1, -1):
            t = c[k]
            if t:
                base = k - phi
                for j, cj in low:
                    c[base + j] += t * cj
        return CycNum(n, c[:phi], a._den * b._den)

    __rmul__ = __mul__

    def galois(self, k: int) -> "CycNum":
        """Apply the automorphism zeta_n -> zeta_n^k (k coprime to the raw conductor)."""
        n = self._n
        if math.gcd(k, n) != 1:
            raise CyclotomicError("Galois exponent must be coprime to the conductor")
        if n == 1:
            return self
        fld = _field(n)
        acc = [0] * fld.phi
        for j, a in enumerate(self._num):
            if a:
                v = fld.pow_table[(j * k) % n]
                for i, x in enumerate(v):
                    if x:
                        acc[i] += a * x
        return CycNum(n, tuple(acc), self._den, _normalized=True)

    def conj(self) -> "CycNum":
        """Complex conjugate."""
        return self.galois(-1 % self._n) if self._n > 2 else self

    def norm(self) -> Fraction:
        """Field norm from Q(zeta_n) (raw conductor) down to Q."""
        acc = ONE
        for k in _field(self._n).gal_units:
            acc = acc * self.galois(k)
        return acc.to_fraction()

    def inverse(self) -> "CycNum":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self.is_rational():
            q = self.to_fraction()
            return CycNum.rational(1 / q)
        acc = ONE
        for k in _field(self._n).gal_units:
            if k != 1:
                acc = acc * self.galois(k)
        nrm = (acc * self).to_fraction()
        return acc * CycNum.rational(1 / nrm)

    def __truediv__(self, other):
        try:
            other = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        acc, base = ONE, self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    # -- predicates ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise CyclotomicError(f"{self!r} is not rational")
        return Fraction(self._num[0], self._den)

    def __bool__(self):
        return not self.is_zero()

    # -- canonical form -----------------------------------------------------
    def _in_subfield(self, m: int) -> bool:
        n = self._n
        for k in _field(n).gal_units:
            if k % m == 1 % m and k != 1:
                g = self.galois(k)
                if g._num != self._num or g._den != self._den:
                    return False
        return True

    def _descend(self, m: int) -> "CycNum":
        pivots, inv = _descent_data(self._n, m)
        sub = [self._num[i] for i in pivots]
        coeffs = [sum(r * x for r, x in zip(row, sub)) for row in inv]
        scale = math.lcm(*(c.denominator for c in coeffs))
        return CycNum(m, [int(c * scale) for c in coeffs], self._den * scale)

    def canonical(self) -> "CycNum":
        """The same element expressed in its minimal cyclotomic field."""
        if self._canon is not None:
            return self._canon
        cur = self
        if cur.is_rational():
            cur = CycNum(1, (cur._num[0],), cur._den, _normalized=True)
        else:
            changed = True
            while changed:
                changed = False
                for p in _prime_factors(cur._n):
                    m = _norm_conductor(cur._n // p)
                    if m == cur._n:
                        continue
                    if cur._in_subfield(m):
                        cur = cur._descend(m)
                        changed = True
                        break
        cur._canon = cur
        self._canon = cur
        return cur

    @property
    def conductor(self) -> int:
        return self.canonical()._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        c = self.canonical()
        return tuple(Fraction(a, c._den) for a in c._num)

    @property
    def raw(self) -> tuple[int, tuple[int, ...], int]:
        """(raw conductor, numerator vector, denominator) without canonicalization."""
        return self._n, self._num, self._den

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.to_fraction() == other
        if not isinstance(other, CycNum):
            return NotImplemented
        if self._n == other._n:
            return self._den == other._den and self._num == other._num
        _, a, b = self._pair(other)
        return a._den == b._den and a._num == b._num

    def __hash__(self):
        if self._hash is None:
            c = self.canonical()
            if c._n == 1:
                self._hash = hash(Fraction(c._num[0], c._den))
            else:
                self._hash = hash((c._n, c._num, c._den))
        return self._hash

    def sort_key(self) -> tuple:
        c = self.canonical()
        return (c._n, tuple(Fraction(a, c._den) for a in c._num))

    def __complex__(self):
        # display only; never used in decisions
        import cmath
        z = cmath.exp(2j * cmath.pi / self._n)
        return sum(a * z**j for j, a in enumerate(self._num)) / self._den

    def __repr__(self):
        c = self.canonical()
        if c._n == 1:
            return str(Fraction(c._num[0], c._den))
        terms = []
        for j, a in enumerate(c._num):
            if a:
                q = Fraction(a, c._den)
                mono = "1" if j == 0 else (f"z{c._n}" if j == 1 else f"z{c._n}^{j}")
                terms.append(f"{q}*{mono}" if j else f"{q}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self) -> dict:
        """Exact serialization: conductor plus power-basis coefficients as strings."""
        return {"conductor": self.conductor, "coeffs": [str(q) for q in self.coeffs]}


ZERO = CycNum(1, (0,), 1, _normalized=True)
ONE = CycNum(1, (1,), 1, _normalized=True)


def root_of_unity(n: int, k: int = 1) -> CycNum:
    """zeta_n^k with zeta_n = exp(2 pi i / n)."""
    if n < 1:
        raise ValueError("n must be positive")
    g = math.gcd(n, k % n) if k % n else n
    m, j = n // g, (k % n) // g
    if m == 1:
        return ONE
    return CycNum.from_rationals(m, [0] * j + [1])


def field_arithmetic(a: CycNum, b: CycNum, op: str) -> CycNum:
    ops = {"add": a.__add__, "sub": a.__sub__, "mul": a.__mul__, "div": a.__truediv__}
    if op not in ops:
        raise ValueError(f"unknown operation {op!r}")
    return ops[op](b).canonical()


def multiplicative_order(a: CycNum) -> int | None:
    """Least k >= 1 with a^k = 1, or None when a is not a root of unity."""
    a = CycNum.coerce(a)
    if a.is_zero():
        return None
    n = a.conductor
    bound = math.lcm(2, n)
    if not a**bound == ONE:
        return None
    order = bound
    for p in _prime_factors(bound):
        while order % p == 0 and a ** (order // p) == ONE:
            order //= p
    return order


# -- matrices -----------------------------------------------------------------


def _common_conductor(values: Iterable[CycNum]) -> int:
    n = 1
    for v in values:
        n = math.lcm(n, v._n)
    return n


class CycMatrix:
    """A rectangular matrix of CycNum entries.  Rows are tuples; immutable."""

    __slots__ = ("rows", "nrows", "ncols", "_hash")

    def __init__(self, rows: Sequence[Sequence], *, _trusted: bool = False):
        if _trusted:
            self.rows = rows
        else:
            rows = [tuple(CycNum.coerce(x) for x in r) for r in rows]
            if not rows or any(len(r) != len(rows[0]) for r in rows) or not rows[0]:
                raise ValueError("matrix must be non-empty and rectangular")
            n = _common_conductor(x for r in rows for x in r)
            self.rows = tuple(tuple(x.embed(n) for x in r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0])
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "CycMatrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, r: int, c: int) -> "CycMatrix":
        return cls([[ZERO] * c for _ in range(r)])

    @classmethod
    def diagonal(cls, entries: Sequence) -> "CycMatrix":
        n = len(entries)
        return cls([[entries[i] if i == j else ZERO for j in range(n)] for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def conductor(self) -> int:
        return self.rows[0][0]._n

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> tuple[CycNum, ...]:
        return tuple(r[j] for r in self.rows)

    def transpose(self) -> "CycMatrix":
        return CycMatrix(tuple(zip(*self.rows)), _trusted=True)

    def conj_transpose(self) -> "CycMatrix":
        return CycMatrix([[x.conj() for x in r] for r in zip(*self.rows)])

    def __add__(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "CycMatrix") -> "CycMatrix":
        return CycMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return CycMatrix([[-a for a in r] for r in self.rows], _trusted=False)

    def scale(self, c) -> "CycMatrix":
        c = CycNum.coerce(c)
        return CycMatrix([[c * a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, CycMatrix):
            if self.ncols != other.nrows:
                raise ValueError("shape mismatch")
            cols = list(zip(*other.rows))
            return CycMatrix([[_dot(r, c) for c in cols] for r in self.rows])
        if isinstance(other, (int, Fraction, CycNum)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = scale

    def apply(self, v: Sequence[CycNum]) -> tuple[CycNum, ...]:
        """Matrix-vector product."""
        return tuple(_dot(r, v) for r in self.rows)

    def __pow__(self, k: int) -> "CycMatrix":
        if k < 0:
            return self.inverse() ** (-k)
        acc, base = CycMatrix.identity(self.nrows), self
        while k:
            if k & 1:
                acc = acc * base
            base = base * base
            k >>= 1
        return acc

    def trace(self) -> CycNum:
        acc = ZERO
        for i in range(min(self.nrows, self.ncols)):
            acc = acc + self.rows[i][i]
        return acc

    def is_identity(self) -> bool:
        return all((a == ONE) if i == j else a.is_zero()
                   for i, r in enumerate(self.rows) for j, a in enumerate(r))

    def scalar_value(self) -> CycNum | None:
        """The scalar c if the matrix equals c*Id, else None."""
        c = self.rows[0][0]
        for i, r in enumerate(self.rows):
            for j, a in enumerate(r):
                if i == j:
                    if a != c:
                        return None
                elif not a.is_zero():
                    return None
        return c

    def __eq__(self, other):
        if not isinstance(other, CycMatrix):
            return NotImplemented
        return self.shape == other.shape and all(
            a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(hash(a) for r in self.rows for a in r))
        return self._hash

    def rref(self) -> tuple[list[list[CycNum]], list[int]]:
        """Reduced row echelon form and pivot columns."""
        a = [list(r) for r in self.rows]
        pivots = []
        r = 0
        for c in range(self.ncols):
            p = next((i for i in range(r, self.nrows) if not a[i][c].is_zero()), None)
            if p is None:
                continue
            a[r], a[p] = a[p], a[r]
            inv = a[r][c].inverse()
            a[r] = [x * inv if not x.is_zero() else x for x in a[r]]
            for i in range(self.nrows):
                if i != r and not a[i][c].is_zero():
                    f = a[i][c]
                    a[i] = [x - f * y if not y.is_zero() else x for x, y in zip(a[i], a[r])]
            pivots.append(c)
            r += 1
            if r == self.nrows:
                break
        return a, pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> list[tuple[CycNum, ...]]:
        return kernel_basis(self)

    def inverse(self) -> "CycMatrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        aug = CycMatrix([list(r) + [ONE if i == j else ZERO for j in range(n)]
                         for i, r in enumerate(self.rows)])
        red, piv = aug.rref()
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return CycMatrix([r[n:] for r in red[:n]])

    def __repr__(self):
        return "CycMatrix([" + ", ".join("[" + ", ".join(map(repr, r)) + "]" for r in self.rows) + "])"


def _dot(r: Sequence[CycNum], c: Sequence[CycNum]) -> CycNum:
    acc = ZERO
    for x, y in zip(r, c):
        if not x.is_zero() and not y.is_zero():
            acc = acc + x * y
    return acc


def kernel_basis(m: CycMatrix) -> list[tuple[CycNum, ...]]:
    """Exact basis of {v : m v = 0}; empty when m is injective."""
    red, pivots = m.rref()
    free = [c for c in range(m.ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * m.ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            if not row[f].is_zero():
                v[pc] = -row[f]
        basis.append(tuple(v))
    return basis
