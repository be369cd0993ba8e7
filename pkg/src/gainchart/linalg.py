"""Dense exact linear algebra over the rationals.

Matrices are immutable, entries are ``fractions.Fraction`` (always in lowest
terms with positive denominator). Rank and determinant run fraction-free
Bareiss elimination on a row-integerized copy to bound intermediate growth;
inverse and nullspace use plain Gauss-Jordan, which is exact over Q.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

Rat = Fraction


class SingularMatrixError(ValueError):
    """Raised when inverting a singular matrix.

    ``column`` is the index (0-based) of the first column that is linearly
    dependent on the columns before it.
    """

    def __init__(self, column):
        super().__init__(f"matrix is singular: column {column} is dependent")
        self.column = column


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError("float entries are not allowed in exact matrices")
    return Fraction(x)


class RatMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data):
        data = [[_frac(x) for x in row] for row in data]
        self.rows = len(data)
        self.cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != self.cols:
                raise ValueError("ragged rows in matrix literal")
        self._data = data

    # -- construction -----------------------------------------------------

    @staticmethod
    def identity(n: int) -> "RatMatrix":
        return RatMatrix([[Fraction(int(i == j)) for j in range(n)] for i in range(n)])

    @staticmethod
    def zeros(rows: int, cols: int) -> "RatMatrix":
        z = Fraction(0)
        return RatMatrix([[z] * cols for _ in range(rows)])

    @staticmethod
    def embed_identity(p: int, q: int) -> "RatMatrix":
        """The p x q matrix [I_q; 0] (requires p >= q)."""
        if p < q:
            raise ValueError("embed_identity requires p >= q")
        return RatMatrix([[Fraction(int(i == j)) for j in range(q)] for i in range(p)])

    @staticmethod
    def block_diag(*blocks: "RatMatrix") -> "RatMatrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        out = [[Fraction(0)] * cols for _ in range(rows)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                out[r0 + i][c0 : c0 + b.cols] = b._data[i]
            r0 += b.rows
            c0 += b.cols
        return RatMatrix(out)

    @staticmethod
    def hstack(blocks) -> "RatMatrix":
        blocks = list(blocks)
        rows = blocks[0].rows
        if any(b.rows != rows for b in blocks):
            raise ValueError("hstack: row counts differ")
        return RatMatrix([sum((b._data[i] for b in blocks), []) for i in range(rows)])

    @staticmethod
    def vstack(blocks) -> "RatMatrix":
        blocks = list(blocks)
        cols = blocks[0].cols
        if any(b.cols != cols for b in blocks):
            raise ValueError("vstack: column counts differ")
        return RatMatrix([row for b in blocks for row in b._data])

    # -- access ------------------------------------------------------------

    def __getitem__(self, key) -> Fraction:
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> "RatMatrix":
        return RatMatrix([self._data[i]])

    def rowlist(self, i: int) -> list[Fraction]:
        return list(self._data[i])

    def tolists(self) -> list[list[Fraction]]:
        return [list(row) for row in self._data]

    def submatrix(self, row_idx, col_idx) -> "RatMatrix":
        return RatMatrix([[self._data[i][j] for j in col_idx] for i in row_idx])

    def take_rows(self, row_idx) -> "RatMatrix":
        return RatMatrix([list(self._data[i]) for i in row_idx])

    def take_cols(self, col_idx) -> "RatMatrix":
        idx = list(col_idx)
        return RatMatrix([[row[j] for j in idx] for row in self._data])

    @property
    def shape(self):
        return (self.rows, self.cols)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._data for x in row)

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RatMatrix)
            and self.shape == other.shape
            and self._data == other._data
        )

    def __hash__(self):
        return hash(tuple(tuple(r) for r in self._data))

    def __add__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        return RatMatrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._data, other._data)
            ]
        )

    def __sub__(self, other: "RatMatrix") -> "RatMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in subtraction")
        return RatMatrix(
            [
                [a - b for a, b in zip(ra, rb)]
                for ra, rb in zip(self._data, other._data)
            ]
        )

    def __neg__(self) -> "RatMatrix":
        return RatMatrix([[-a for a in row] for row in self._data])

    def scale(self, c) -> "RatMatrix":
        c = _frac(c)
        return RatMatrix([[c * a for a in row] for row in self._data])

    def __matmul__(self, other: "RatMatrix") -> "RatMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"dimension mismatch in product: {self.shape} @ {other.shape}"
            )
        bt = list(zip(*other._data))
        out = []
        for arow in self._data:
            out.append([sum(a * b for a, b in zip(arow, bcol)) for bcol in bt])
        return RatMatrix(out)

    def transpose(self) -> "RatMatrix":
        return RatMatrix([list(col) for col in zip(*self._data)])

    def power(self, k: int) -> "RatMatrix":
        if not self.is_square():
            raise ValueError("power of non-square matrix")
        acc = RatMatrix.identity(self.rows)
        for _ in range(k):
            acc = acc @ self
        return acc

    # -- elimination kernels -------------------------------------------------

    def _integer_rows(self):
        out = []
        for row in self._data:
            mult = lcm(*(x.denominator for x in row)) if row else 1
            out.append([int(x * mult) for x in row])
        return out

    def rank(self) -> int:
        """Exact rank via fraction-free Bareiss elimination."""
        m = self._integer_rows()
        rows, cols = self.rows, self.cols
        if rows == 0 or cols == 0:
            return 0
        prev = 1
        pr = 0
        for pc in range(cols):
            piv = next((i for i in range(pr, rows) if m[i][pc]), None)
            if piv is None:
                continue
            m[pr], m[piv] = m[piv], m[pr]
            for i in range(pr + 1, rows):
                mi, mp = m[i], m[pr]
                f = mi[pc]
                for j in range(pc + 1, cols):
                    mi[j] = (mi[j] * mp[pc] - f * mp[j]) // prev
                mi[pc] = 0
            prev = m[pr][pc]
            pr += 1
            if pr == rows:
                break
        return pr

    def det(self) -> Fraction:
        """Exact determinant via Bareiss on a row-integerized copy."""
        if not self.is_square():
            raise ValueError("determinant of non-square matrix")
        n = self.rows
        if n == 0:
            return Fraction(1)
        m = []
        scale = Fraction(1)
        for row in self._data:
            mult = lcm(*(x.denominator for x in row))
            scale *= mult
            m.append([int(x * mult) for x in row])
        sign = 1
        prev = 1
        for c in range(n - 1):
            piv = next((i for i in range(c, n) if m[i][c]), None)
            if piv is None:
                return Fraction(0)
            if piv != c:
                m[c], m[piv] = m[piv], m[c]
                sign = -sign
            for i in range(c + 1, n):
                mi, mc = m[i], m[c]
                f = mi[c]
                for j in range(c + 1, n):
                    mi[j] = (mi[j] * mc[c] - f * mc[j]) // prev
                mi[c] = 0
            prev = m[c][c]
        return Fraction(sign * m[n - 1][n - 1], 1) / scale

    def inverse(self) -> "RatMatrix":
        """Exact inverse via Gauss-Jordan.

        Raises SingularMatrixError carrying the first dependent column index.
        """
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        a = [list(row) + [Fraction(int(i == j)) for j in range(n)]
             for i, row in enumerate(self._data)]
        for col in range(n):
            piv = next((i for i in range(col, n) if a[i][col] != 0), None)
            if piv is None:
                raise SingularMatrixError(col)
            a[col], a[piv] = a[piv], a[col]
            p = a[col][col]
            if p != 1:
                a[col] = [x / p for x in a[col]]
            for i in range(n):
                if i != col and a[i][col] != 0:
                    f = a[i][col]
                    a[i] = [x - f * y for x, y in zip(a[i], a[col])]
        return RatMatrix([row[n:] for row in a])

    def nullspace(self) -> list[list[Fraction]]:
        """Basis of the right null space, one vector per free column."""
        rows, cols = self.rows, self.cols
        a = [list(r) for r in self._data]
        pivots = []
        pr = 0
        for pc in range(cols):
            piv = next((i for i in range(pr, rows) if a[i][pc] != 0), None)
            if piv is None:
                continue
            a[pr], a[piv] = a[piv], a[pr]
            p = a[pr][pc]
            if p != 1:
                a[pr] = [x / p for x in a[pr]]
            for i in range(rows):
                if i != pr and a[i][pc] != 0:
                    f = a[i][pc]
                    a[i] = [x - f * y for x, y in zip(a[i], a[pr])]
            pivots.append(pc)
            pr += 1
            if pr == rows:
                break
        free = [c for c in range(cols) if c not in pivots]
        basis = []
        for fc in free:
            v = [Fraction(0)] * cols
            v[fc] = Fraction(1)
            for prow, pc in enumerate(pivots):
                v[pc] = -a[prow][fc]
            basis.append(v)
        return basis

    # -- misc ---------------------------------------------------------------

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self._data
        )
        return f"RatMatrix[{body}]"
