"""Real Jordan and Weyr canonical forms and their centralizers.

Spectral input is pre-factored: each real eigenvalue and each conjugate
complex pair comes with its Segre partition (Jordan block sizes). Complex
pairs are realized over R by 2x2 rotation-style cells, so each such block of
total Segre size s occupies a 2s x 2s real slab.

Block order in assembled matrices always follows the SpectralData order (real
eigenvalues first, then pairs); charts and reduced forms depend on it.

Centralizer layout for one Weyr block with characteristic w_1 >= ... >= w_m
(t_i below is w_{m-i+1}): an element is block upper triangular with m x m
blocks Y_ij of shape w_i x w_j, every Y_ij is the top-left corner of
Y_{1, j-i+1}, and the first block row Y_1j splits into parameter cells
D^(j)_{i,k} of shape (t_i - t_{i-1}) x (t_k - t_{k-1}) that are free exactly
when k >= i - j + 1 and zero below. Free parameters are enumerated j
ascending, then i, then k, row-major inside each cell block; complex cells
contribute a (real, imaginary) scalar pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .gaussian import (
    GaussRat,
    diamond_rows_from_cells,
    fm_zeros,
)
from .linalg import RatMatrix
from .partitions import Partition
from .poly import InvariantChain, UniPoly


@dataclass(frozen=True)
class SpectralData:
    """Factored description of a similarity class.

    real: (eigenvalue, segre) pairs; complex: (a, b, segre) triples for the
    conjugate pair a + bi, a - bi with b normalized positive.
    """

    real: tuple
    complex: tuple

    def __init__(self, real=(), complex=()):
        real_n = []
        for lam, segre in real:
            if isinstance(lam, float):
                raise TypeError("float eigenvalues are not allowed")
            segre = segre if isinstance(segre, Partition) else Partition(segre)
            if not segre:
                raise ValueError("empty Segre partition")
            real_n.append((Fraction(lam), segre))
        cpx_n = []
        for a, b, segre in complex:
            if isinstance(a, float) or isinstance(b, float):
                raise TypeError("float eigenvalues are not allowed")
            a, b = Fraction(a), Fraction(b)
            if b == 0:
                raise ValueError("complex pair must have nonzero imaginary part")
            if b < 0:
                b = -b
            segre = segre if isinstance(segre, Partition) else Partition(segre)
            if not segre:
                raise ValueError("empty Segre partition")
            cpx_n.append((a, b, segre))
        if len({lam for lam, _ in real_n}) != len(real_n):
            raise ValueError("repeated real eigenvalue")
        if len({(a, b) for a, b, _ in cpx_n}) != len(cpx_n):
            raise ValueError("repeated complex pair")
        object.__setattr__(self, "real", tuple(real_n))
        object.__setattr__(self, "complex", tuple(cpx_n))

    @property
    def n(self) -> int:
        return sum(s.total() for _, s in self.real) + 2 * sum(
            s.total() for _, _, s in self.complex
        )


@dataclass(frozen=True)
class WeyrStructure:
    """Per-eigenvalue (or per-pair) block data of a real Weyr form."""

    segre: Partition
    is_complex: bool
    eigenvalue: Fraction | None = None
    pair: tuple | None = None

    @property
    def weyr(self) -> Partition:
        return self.segre.conjugate()

    @property
    def m(self) -> int:
        """Depth: number of Weyr levels (largest Segre part)."""
        return len(self.weyr)

    def tau(self, i: int) -> int:
        """t_i = w_{m-i+1}; nondecreasing, t_0 = 0, t_m = w_1."""
        if i == 0:
            return 0
        return self.weyr.part(self.m - i + 1)

    @property
    def s(self) -> int:
        """Cell-level block size (number of scalar columns over the field)."""
        return self.weyr.total()

    @property
    def real_cols(self) -> int:
        return 2 * self.s if self.is_complex else self.s

    @property
    def field_one(self):
        return GaussRat(1) if self.is_complex else Fraction(1)

    @property
    def field_eig(self):
        if self.is_complex:
            return GaussRat(self.pair[0], self.pair[1])
        return self.eigenvalue


def weyr_structures(sd: SpectralData) -> list[WeyrStructure]:
    out = [
        WeyrStructure(segre=s, is_complex=False, eigenvalue=lam)
        for lam, s in sd.real
    ]
    out.extend(
        WeyrStructure(segre=s, is_complex=True, pair=(a, b))
        for a, b, s in sd.complex
    )
    return out


def weyr_cells(ws: WeyrStructure):
    """The Weyr block as an s x s cell matrix over the block's field."""
    lam = ws.field_eig
    one = ws.field_one
    w = ws.weyr.parts
    s = ws.s
    mat = fm_zeros(s, s, one)
    off = 0
    for i, wi in enumerate(w):
        for t in range(wi):
            mat[off + t][off + t] = lam
        if i + 1 < len(w):
            nxt = w[i + 1]
            for t in range(nxt):
                mat[off + t][off + wi + t] = one
        off += wi
    return mat


def weyr_block_matrix(ws: WeyrStructure) -> RatMatrix:
    cells = weyr_cells(ws)
    if ws.is_complex:
        return RatMatrix(diamond_rows_from_cells(cells))
    return RatMatrix(cells)


def weyr_from_spectral(sd: SpectralData):
    """Real Weyr canonical form and its block structures, in sd order."""
    structures = weyr_structures(sd)
    blocks = [weyr_block_matrix(ws) for ws in structures]
    return RatMatrix.block_diag(*blocks), structures


def _jordan_real_block(lam: Fraction, segre: Partition) -> RatMatrix:
    blocks = []
    for k in segre:
        b = [[lam if i == j else Fraction(int(j == i + 1)) for j in range(k)] for i in range(k)]
        blocks.append(RatMatrix(b))
    return RatMatrix.block_diag(*blocks)

def _jordan_complex_block(a: Fraction, b: Fraction, segre: Partition) -> RatMatrix:
    blocks = []
    for k in segre:
        m = RatMatrix.zeros(2 * k, 2 * k).tolists()
        for t in range(k):
            m[2 * t][2 * t] = a
            m[2 * t][2 * t + 1] = b
            m[2 * t + 1][2 * t] = -b
            m[2 * t + 1][2 * t + 1] = a
            if t + 1 < k:
                m[2 * t][2 * t + 2] = Fraction(1)
                m[2 * t + 1][2 * t + 3] = Fraction(1)
        blocks.append(RatMatrix(m))
    return RatMatrix.block_diag(*blocks)


def jordan_from_spectral(sd: SpectralData) -> RatMatrix:
    """Real Jordan canonical form, blocks in sd order."""
    blocks = [_jordan_real_block(lam, s) for lam, s in sd.real]
    blocks.extend(_jordan_complex_block(a, b, s) for a, b, s in sd.complex)
    return RatMatrix.block_diag(*blocks)


def jordan_weyr_permutation(segre: Partition, is_complex: bool = False) -> RatMatrix:
    """Permutation Q with Q^T J Q = W for a single eigenvalue or pair.

    Row (chain i, position t) selects Jordan coordinate s_{t-1} + i, where
    s_t are the partial sums of the Weyr characteristic; for a pair the same
    selection acts on 2x2 coordinate slabs.
    """
    segre = segre if isinstance(segre, Partition) else Partition(segre)
    if not segre:
        raise ValueError("empty Segre partition")
    weyr = segre.conjugate()
    n = segre.total()
    prefix = [0]
    for w in weyr:
        prefix.append(prefix[-1] + w)
    positions = []
    for chain, m_i in enumerate(segre.parts, start=1):
        for t in range(m_i):
            positions.append(prefix[t] + chain - 1)  # 0-based Jordan coordinate
    if not is_complex:
        rows = []
        for pos in positions:
            rows.append([Fraction(int(j == pos)) for j in range(n)])
        return RatMatrix(rows)
    rows = []
    for pos in positions:
        for half in (0, 1):
            rows.append([Fraction(int(j == 2 * pos + half)) for j in range(2 * n)])
    return RatMatrix(rows)


# ---------------------------------------------------------------------------
# centralizer structure
# ---------------------------------------------------------------------------


def centralizer_slots(ws: WeyrStructure):
    """Free parameter blocks (j, i, k) with shapes, in canonical order."""
    m = ws.m
    slots = []
    for j in range(1, m + 1):
        for i in range(1, m + 1):
            for k in range(max(i - j + 1, 1), m - j + 2):
                h = ws.tau(i) - ws.tau(i - 1)
                wdt = ws.tau(k) - ws.tau(k - 1)
                if h and wdt:
                    slots.append((j, i, k, h, wdt))
    return slots


def block_param_count(ws: WeyrStructure) -> int:
    """Number of real scalars parameterizing this block's centralizer."""
    cells = sum(w * w for w in ws.weyr)
    return 2 * cells if ws.is_complex else cells


def centralizer_cells_from_blocks(ws: WeyrStructure, blocks: dict):
    """Assemble a centralizer element (as cells) from its parameter blocks.

    ``blocks`` maps (j, i, k) to a cell matrix of the slot's shape; missing
    slots are zero. Copies along the block diagonal band are filled by the
    corner rule Y_ij = top-left of Y_{1, j-i+1}.
    """
    one = ws.field_one
    m = ws.m
    w = ws.weyr
    w1 = w.part(1)
    s = ws.s
    band = []  # band[j-1] = Y_{1j} as w1 x w_j cells
    for j in range(1, m + 1):
        y1j = fm_zeros(w1, w.part(j), one)
        for i in range(1, m + 1):
            for k in range(max(i - j + 1, 1), m - j + 2):
                blk = blocks.get((j, i, k))
                if blk is None:
                    continue
                r0 = ws.tau(i - 1)
                c0 = ws.tau(k - 1)
                for a, row in enumerate(blk):
                    for b, val in enumerate(row):
                        y1j[r0 + a][c0 + b] = val
        band.append(y1j)
    out = fm_zeros(s, s, one)
    offsets = [0]
    for wi in w:
        offsets.append(offsets[-1] + wi)
    for i in range(1, m + 1):
        for j in range(i, m + 1):
            src = band[j - i]
            r0, c0 = offsets[i - 1], offsets[j - 1]
            for a in range(w.part(i)):
                for b in range(w.part(j)):
                    out[r0 + a][c0 + b] = src[a][b]
    return out


def centralizer_block_from_params(ws: WeyrStructure, params):
    """Cells of the centralizer element with the given scalar parameters."""
    it = iter(params)
    blocks = {}
    for (j, i, k, h, wdt) in centralizer_slots(ws):
        blk = []
        for _ in range(h):
            row = []
            for _ in range(wdt):
                if ws.is_complex:
                    row.append(GaussRat(next(it), next(it)))
                else:
                    row.append(Fraction(next(it)))
            blk.append(row)
        blocks[(j, i, k)] = blk
    return centralizer_cells_from_blocks(ws, blocks)


def block_cells_to_real(ws: WeyrStructure, cells) -> RatMatrix:
    if ws.is_complex:
        return RatMatrix(diamond_rows_from_cells(cells))
    return RatMatrix(cells)


def centralizer_element(structures, params) -> RatMatrix:
    """The centralizer element of the full Weyr form for given parameters.

    ``params`` concatenates every block's scalars in sd order; its length
    must equal the centralizer dimension.
    """
    params = [Fraction(p) for p in params]
    need = sum(block_param_count(ws) for ws in structures)
    if len(params) != need:
        raise ValueError(f"expected {need} parameters, got {len(params)}")
    blocks = []
    pos = 0
    for ws in structures:
        cnt = block_param_count(ws)
        cells = centralizer_block_from_params(ws, params[pos : pos + cnt])
        blocks.append(block_cells_to_real(ws, cells))
        pos += cnt
    return RatMatrix.block_diag(*blocks)


@dataclass(frozen=True)
class CentralizerBasis:
    dimension: int
    basis: tuple
    slots: tuple  # per block: tuple of (j, i, k, rows, cols)


def centralizer_basis(a: RatMatrix, structures) -> CentralizerBasis:
    """One basis element per free scalar of the centralizer of a Weyr form."""
    expected = RatMatrix.block_diag(*(weyr_block_matrix(ws) for ws in structures))
    if a != expected:
        raise ValueError("matrix is not the real Weyr form of the given structures")
    n = sum(block_param_count(ws) for ws in structures)
    basis = []
    for idx in range(n):
        params = [0] * n
        params[idx] = 1
        basis.append(centralizer_element(structures, params))
    return CentralizerBasis(
        dimension=n,
        basis=tuple(basis),
        slots=tuple(tuple(centralizer_slots(ws)) for ws in structures),
    )


# ---------------------------------------------------------------------------
# invariant polynomials of a spectral description
# ---------------------------------------------------------------------------


def invariant_chain(sd: SpectralData) -> InvariantChain:
    """The chain a_1 | ... | a_n determined by the factored spectral data."""
    n = sd.n
    depth = 0
    for _, s in sd.real:
        depth = max(depth, len(s))
    for _, _, s in sd.complex:
        depth = max(depth, len(s))
    if depth > n:
        raise ValueError("inconsistent spectral data")
    top = []
    for i in range(1, depth + 1):
        poly = UniPoly.one()
        for lam, segre in sd.real:
            e = segre.part(i)
            if e:
                poly = poly * UniPoly((-lam, 1)).power(e)
        for aa, bb, segre in sd.complex:
            e = segre.part(i)
            if e:
                poly = poly * UniPoly((aa * aa + bb * bb, -2 * aa, 1)).power(e)
        top.append(poly)
    chain = [UniPoly.one()] * (n - depth) + list(reversed(top))
    return InvariantChain(tuple(chain))


def centralizer_dimension(chain: InvariantChain) -> int:
    """dim of the commuting algebra, degree-weighted form: sum (2k-1) deg a_{n-k+1}."""
    degs = chain.degrees_desc()
    return sum((2 * k - 1) * d for k, d in enumerate(degs, start=1))


def centralizer_dimension_weyr(structures) -> int:
    """Same dimension from the Weyr characteristics: sum of squared levels."""
    return sum(block_param_count(ws) for ws in structures)


def weyr_union(sd: SpectralData) -> Partition:
    """Union of all per-eigenvalue Weyr characteristics, pairs counted twice."""
    acc = Partition()
    for _, s in sd.real:
        acc = acc.union(s.conjugate())
    for _, _, s in sd.complex:
        w = s.conjugate()
        acc = acc.union(w).union(w)
    return acc


def degrees_desc(sd: SpectralData) -> Partition:
    """Nonincreasing invariant-polynomial degree sequence of the class."""
    depth = 0
    for _, s in sd.real:
        depth = max(depth, len(s))
    for _, _, s in sd.complex:
        depth = max(depth, len(s))
    degs = []
    for i in range(1, depth + 1):
        d = sum(s.part(i) for _, s in sd.real) + 2 * sum(
            s.part(i) for _, _, s in sd.complex
        )
        degs.append(d)
    return Partition(degs)
