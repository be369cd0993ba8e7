"""Gaussian rationals and small generic field-matrix helpers.

A conjugate eigenvalue pair is handled by packing each 1x2 column cell
``(x, y)`` of a real matrix into the scalar ``x + iy``. Under that packing the
2x2 cell expansion ``[[x, y], [-y, x]]`` is exactly multiplication by
``x + iy``, so all block algorithms (assembly, admissibility, reduction) run
unchanged over this field and results expand back to real matrices at the
boundary.

The ``fm_*`` helpers operate on plain lists of lists whose scalars are either
``Fraction`` or ``GaussRat``; both support the same arithmetic protocol.
"""

from __future__ import annotations

from fractions import Fraction


class GaussRat:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        if isinstance(re, float) or isinstance(im, float):
            raise TypeError("float components are not allowed")
        self.re = Fraction(re)
        self.im = Fraction(im)

    def _coerce(self, other):
        if isinstance(other, GaussRat):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussRat(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussRat(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussRat(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def conjugate(self) -> "GaussRat":
        return GaussRat(self.re, -self.im)

    def __repr__(self):
        return f"({self.re}{'+' if self.im >= 0 else ''}{self.im}i)"


# ---------------------------------------------------------------------------
# generic elimination helpers on list-of-list field matrices
# ---------------------------------------------------------------------------


def fm_zeros(rows, cols, one):
    z = one - one
    return [[z] * cols for _ in range(rows)]


def fm_identity(n, one):
    z = one - one
    return [[one if i == j else z for j in range(n)] for i in range(n)]


def fm_copy(m):
    return [list(row) for row in m]


def fm_mul(a, b):
    if not a:
        return []
    if len(a[0]) != len(b):
        raise ValueError("dimension mismatch in field-matrix product")
    bt = list(zip(*b))
    out = []
    for arow in a:
        row = []
        for bcol in bt:
            acc = None
            for x, y in zip(arow, bcol):
                term = x * y
                acc = term if acc is None else acc + term
            row.append(acc)
        out.append(row)
    return out


def fm_inverse(m):
    """Gauss-Jordan inverse; returns None when singular."""
    n = len(m)
    one_val = None
    for row in m:
        for x in row:
            if x:
                one_val = x / x
                break
        if one_val is not None:
            break
    if one_val is None:
        return None if n else []
    a = [list(row) + list(ident_row) for row, ident_row in zip(m, fm_identity(n, one_val))]
    for col in range(n):
        piv = next((i for i in range(col, n) if a[i][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for i in range(n):
            if i != col and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [row[n:] for row in a]


def fm_is_invertible(m) -> bool:
    return bool(m) and fm_inverse(m) is not None


class RowSpan:
    """Incremental row-space membership test by reduced elimination."""

    def __init__(self):
        self._rows = []  # (pivot_col, row) with row[pivot_col] == 1

    def try_add(self, vec) -> bool:
        """Reduce vec against the span; add and return True if independent."""
        v = list(vec)
        for pc, row in self._rows:
            if v[pc]:
                f = v[pc]
                v = [x - f * y for x, y in zip(v, row)]
        piv = next((j for j, x in enumerate(v) if x), None)
        if piv is None:
            return False
        p = v[piv]
        v = [x / p for x in v]
        self._rows.append((piv, v))
        return True


# ---------------------------------------------------------------------------
# packing between real matrices and Gaussian cell matrices
# ---------------------------------------------------------------------------


def cells_from_real_rows(rows):
    """Pack consecutive column pairs of real rows into GaussRat cells."""
    out = []
    for row in rows:
        if len(row) % 2:
            raise ValueError("cell packing needs an even number of columns")
        out.append([GaussRat(row[2 * j], row[2 * j + 1]) for j in range(len(row) // 2)])
    return out


def real_rows_from_cells(cells):
    """Unpack cells back to real rows: each cell z becomes (Re z, Im z)."""
    out = []
    for row in cells:
        real_row = []
        for z in row:
            real_row.append(z.re)
            real_row.append(z.im)
        out.append(real_row)
    return out


def diamond_rows_from_cells(cells):
    """Expand every cell z to the 2x2 block [[Re, Im], [-Im, Re]]."""
    out = []
    for row in cells:
        top, bot = [], []
        for z in row:
            top.extend((z.re, z.im))
            bot.extend((-z.im, z.re))
        out.append(top)
        out.append(bot)
    return out
