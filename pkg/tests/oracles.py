"""Independent oracles the tests check library results against.

These deliberately avoid the library's computation paths: matrix products by
the summation definition, invariant polynomials by gcds of all k x k minors
of sI - A (memoized Laplace expansion), and emptiness of the generating-block
set by exhaustive search over a 0/1 grid of top blocks.
"""

from fractions import Fraction
from itertools import combinations, product

from gainchart import Partition, RatMatrix
from gainchart.observability import RankDeficientError, assemble
from gainchart.poly import InvariantChain, UniPoly, char_matrix


def naive_matmul(a: RatMatrix, b: RatMatrix) -> RatMatrix:
    out = []
    for i in range(a.rows):
        row = []
        for j in range(b.cols):
            acc = Fraction(0)
            for t in range(a.cols):
                acc += a[i, t] * b[t, j]
            row.append(acc)
        out.append(row)
    return RatMatrix(out)


def minors_gcd_chain(a: RatMatrix) -> InvariantChain:
    """Invariant polynomials as quotients of minor gcds of sI - a."""
    n = a.rows
    m = char_matrix(a)
    memo = {}

    def det(rows, cols):
        if not rows:
            return UniPoly.one()
        key = (rows, cols)
        if key in memo:
            return memo[key]
        r0 = rows[0]
        acc = UniPoly.zero()
        for idx, c in enumerate(cols):
            e = m[r0][c]
            if e.is_zero():
                continue
            sub = det(rows[1:], cols[:idx] + cols[idx + 1 :])
            term = e * sub
            acc = acc + term if idx % 2 == 0 else acc - term
        memo[key] = acc
        return acc

    gcds = [UniPoly.one()]
    for k in range(1, n + 1):
        g = UniPoly.zero()
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = g.gcd(det(rows, cols))
        gcds.append(g)
    alphas = [(gcds[k] // gcds[k - 1]).monic() for k in range(1, n + 1)]
    return InvariantChain(tuple(alphas))


def grid_has_member(A: RatMatrix, r: Partition) -> bool:
    """Whether some 0/1 top block generates a full-column-rank matrix.

    For a nilpotent Weyr state matrix the generating blocks built from unit
    rows already witness nonemptiness, so the grid verdict is exact there.
    """
    d = A.rows
    r1 = r.part(1)
    for bits in product((0, 1), repeat=r1 * d):
        P1 = RatMatrix([list(bits[i * d : (i + 1) * d]) for i in range(r1)])
        try:
            assemble(A, r, P1)
            return True
        except RankDeficientError:
            continue
    return False
