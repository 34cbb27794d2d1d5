"""Exact linear algebra over the Gaussian rationals Q(i) and over Q.

CNum is an immutable Gaussian rational; CMatrix / RMatrix represent
subspaces by their rows, canonicalized through reduced row echelon form, so
equality of subspaces is equality of canonical forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class CNum:
    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "CNum":
        if isinstance(x, CNum):
            return x
        return CNum(Fraction(x), Fraction(0))

    def __add__(self, o):
        o = CNum.of(o)
        return CNum(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        o = CNum.of(o)
        return CNum(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return CNum(-self.re, -self.im)

    def __mul__(self, o):
        o = CNum.of(o)
        return CNum(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, o):
        return CNum.of(o) - self

    def __truediv__(self, o):
        o = CNum.of(o)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return CNum((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def conj(self) -> "CNum":
        return CNum(self.re, -self.im)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self):
        return not self.is_zero()

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


C_ZERO = CNum()
C_ONE = CNum(Fraction(1))
C_I = CNum(Fraction(0), Fraction(1))


def _rref(rows, conj_scalar=None):
    """Generic reduced row echelon over a field with CNum/Fraction entries."""
    a = [list(r) for r in rows]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    rpos = 0
    pivots = []
    for c in range(nc):
        piv = next((i for i in range(rpos, nr) if a[i][c]), None)
        if piv is None:
            continue
        a[rpos], a[piv] = a[piv], a[rpos]
        f = a[rpos][c]
        a[rpos] = [x / f for x in a[rpos]]
        for i in range(nr):
            if i != rpos and a[i][c]:
                fi = a[i][c]
                a[i] = [x - fi * y for x, y in zip(a[i], a[rpos])]
        pivots.append(c)
        rpos += 1
    return [tuple(r) for r in a[:rpos]], pivots


class _SpaceBase:
    zero = None

    def __init__(self, rows):
        rows = [tuple(self.coerce(x) for x in r) for r in rows]
        self.ncols = len(rows[0]) if rows else 0
        reduced, pivots = _rref(rows)
        self.rows = reduced
        self.pivots = pivots

    @classmethod
    def empty(cls, ncols):
        out = cls([])
        out.ncols = ncols
        return out

    def rank(self) -> int:
        return len(self.rows)

    def rref(self):
        return self

    def contains(self, vec) -> bool:
        v = [self.coerce(x) for x in vec]
        for row, p in zip(self.rows, self.pivots):
            if v[p]:
                f = v[p]
                v = [x - f * y for x, y in zip(v, row)]
        return all(not x for x in v)

    def contains_space(self, other) -> bool:
        return all(self.contains(r) for r in other.rows)

    def __eq__(self, other):
        return self.ncols == other.ncols and self.rows == other.rows

    def __hash__(self):
        return hash((self.ncols, self.rows))

    def sum(self, other):
        if not self.rows:
            return other
        if not other.rows:
            return self
        return type(self)(list(self.rows) + list(other.rows))

    def kernel_of_columns(self, cols_matrix):
        """Kernel {x : M x = 0} for M given as list of rows; returns basis."""
        a = [list(r) for r in cols_matrix]
        nr = len(a)
        nc = len(a[0]) if nr else 0
        red, pivots = _rref([[self.coerce(x) for x in row] for row in a])
        free = [c for c in range(nc) if c not in pivots]
        basis = []
        for fc in free:
            v = [self.coerce(0)] * nc
            v[fc] = self.coerce(1)
            for i, pc in enumerate(pivots):
                v[pc] = -red[i][fc]
            basis.append(tuple(v))
        return basis

    def intersect(self, other):
        """Intersection of row spaces."""
        if not self.rows or not other.rows:
            return type(self).empty(self.ncols)
        u = list(self.rows)
        w = list(other.rows)
        # solve sum a_i u_i - sum b_j w_j = 0: columns = (a, b)
        m = []
        for c in range(self.ncols):
            m.append([u[i][c] for i in range(len(u))] + [-w[j][c] for j in range(len(w))])
        ker = self.kernel_of_columns(m)
        vecs = []
        for k in ker:
            vec = [self.coerce(0)] * self.ncols
            for i in range(len(u)):
                if k[i]:
                    for c in range(self.ncols):
                        vec[c] = vec[c] + k[i] * u[i][c]
            vecs.append(tuple(vec))
        vecs = [v for v in vecs if any(x for x in v)]
        if not vecs:
            return type(self).empty(self.ncols)
        return type(self)(vecs)


class CMatrix(_SpaceBase):
    """Complex subspace as a row space over the Gaussian rationals."""

    @staticmethod
    def coerce(x):
        return CNum.of(x)


class RMatrix(_SpaceBase):
    """Rational subspace as a row space over Q."""

    @staticmethod
    def coerce(x):
        return Fraction(x)


def solve_linear(rows, rhs, coerce):
    """One solution x of rows * x = rhs over the field, or None."""
    nr = len(rows)
    nc = len(rows[0]) if nr else 0
    a = [[coerce(x) for x in row] + [coerce(rhs[i])] for i, row in enumerate(rows)]
    red, pivots = _rref(a)
    x = [coerce(0)] * nc
    for row, p in zip(red, pivots):
        if p == nc:
            return None
        x[p] = row[nc]
    return x


def realify_vector(v) -> tuple[Fraction, ...]:
    """(z_1..z_n) -> (re_1, im_1, ..., re_n, im_n)."""
    out = []
    for z in v:
        z = CNum.of(z)
        out.extend((z.re, z.im))
    return tuple(out)


def complexify_vector(v) -> tuple[CNum, ...]:
    """Inverse of realify_vector."""
    assert len(v) % 2 == 0
    return tuple(CNum(Fraction(v[2 * k]), Fraction(v[2 * k + 1])) for k in range(len(v) // 2))
