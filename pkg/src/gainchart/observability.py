"""Truncated observability matrices, nonemptiness, admissible index sequences.

A member is generated by a top block P_1 with r_1 rows: block i+1 is the
first r_{i+1} rows of block i multiplied by the state matrix on the right.
Membership additionally requires full column rank.

Admissible sequences certify a chart: stage j selects t_j row indices of P_1
(t_j = w_{m-j+1} for the block's Weyr characteristic) such that each batch of
new indices increases, and the selected rows restricted to the first t_j
scalar columns are invertible; for a conjugate-pair block invertibility is
taken over the Gaussian-rational cells, which is the same as invertibility of
the 2x2-expanded real minor.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .canonical import WeyrStructure
from .errors import GainchartError
from .gaussian import (
    RowSpan,
    cells_from_real_rows,
    diamond_rows_from_cells,
    fm_is_invertible,
    real_rows_from_cells,
)
from .linalg import RatMatrix
from .partitions import Partition
from .poly import InvariantChain


class RankDeficientError(GainchartError):
    """Assembled matrix is not full column rank: P_1 does not generate."""

    exit_code = 4

    def __init__(self, rank, d):
        super().__init__(
            f"assembled observability matrix has rank {rank} < {d}: "
            "the top block is not generating"
        )
        self.rank = rank
        self.d = d


@dataclass(frozen=True)
class TruncObsMatrix:
    A: RatMatrix
    r: Partition
    P1: RatMatrix
    P: RatMatrix

    @property
    def d(self) -> int:
        return self.A.rows

    @property
    def n(self) -> int:
        return self.r.total()


def assemble(A: RatMatrix, r: Partition, P1: RatMatrix, require_full_rank: bool = True) -> TruncObsMatrix:
    """Build the full matrix from its generating top block.

    With ``require_full_rank`` the result must have rank equal to the state
    dimension, else RankDeficientError is raised.
    """
    if not A.is_square():
        raise ValueError("state matrix must be square")
    d = A.rows
    if P1.rows != r.part(1) or P1.cols != d:
        raise ValueError(
            f"top block must be {r.part(1)} x {d}, got {P1.rows} x {P1.cols}"
        )
    blocks = [P1]
    current = P1
    for i in range(2, len(r) + 1):
        current = current.take_rows(range(r.part(i))) @ A
        blocks.append(current)
    P = RatMatrix.vstack(blocks)
    if require_full_rank:
        rk = P.rank()
        if rk < d:
            raise RankDeficientError(rk, d)
    return TruncObsMatrix(A=A, r=r, P1=P1, P=P)


# ---------------------------------------------------------------------------
# nonemptiness
# ---------------------------------------------------------------------------


def _degrees_of(target) -> Partition:
    if isinstance(target, InvariantChain):
        return Partition(target.degrees_desc())
    from .canonical import SpectralData, degrees_desc

    if isinstance(target, SpectralData):
        return degrees_desc(target)
    raise TypeError("target must be an InvariantChain or SpectralData")


def nonempty(target, r: Partition) -> bool:
    """Whether any generating top block exists for this class and r.

    Evaluates two equivalent criteria and checks they agree:
    - tail sums of the conjugate indices dominate head sums of the degrees;
    - prefix sums of the conjugate degree sequence stay below those of r.
    """
    degs = _degrees_of(target)
    d = degs.total()
    if r.total() < d:
        raise ValueError(f"sum of r ({r.total()}) must be at least the state size {d}")
    k = r.conjugate()
    rr = r.part(1)

    # tail sums of k against head sums of the small degrees, via prefixes
    crit_k = True
    n_total = k.total()
    for i in range(1, max(d, rr) + 1):
        tail = n_total - sum(k.part(j) for j in range(1, i + 1))
        head = d - sum(degs.part(j) for j in range(1, i + 1))
        if tail < head:
            crit_k = False
            break

    w = degs.conjugate()
    crit_w = all(
        sum(w.part(j) for j in range(1, i + 1)) <= sum(r.part(j) for j in range(1, i + 1))
        for i in range(1, d + 1)
    )
    if crit_k != crit_w:
        raise AssertionError("nonemptiness criteria disagree")
    return crit_w


# ---------------------------------------------------------------------------
# admissible sequences
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibleSeq:
    """Nested stage sets recorded as one ordered index tuple.

    ``order`` lists 1-based row indices of the top block in the order they
    were certified; stage j is the prefix of length t_j.
    """

    order: tuple

    def stage(self, ws: WeyrStructure, j: int) -> tuple:
        return self.order[: ws.tau(j)]

    def validate_shape(self, ws: WeyrStructure, nrows: int):
        if len(self.order) != ws.tau(ws.m):
            raise ValueError(
                f"index sequence must have {ws.tau(ws.m)} entries, got {len(self.order)}"
            )
        if len(set(self.order)) != len(self.order):
            raise ValueError("repeated row index in admissible sequence")
        for idx in self.order:
            if not 1 <= idx <= nrows:
                raise ValueError(f"row index {idx} out of range 1..{nrows}")
        for j in range(1, ws.m + 1):
            batch = self.order[ws.tau(j - 1) : ws.tau(j)]
            if any(a >= b for a, b in zip(batch, batch[1:])):
                raise ValueError("each stage batch must be strictly increasing")


MultiIndex = tuple  # tuple[AdmissibleSeq, ...], one per spectral block


def block_cells_of(P1: RatMatrix, ws: WeyrStructure, col_offset: int):
    """Extract one block's top-block cells from the full real top block."""
    cols = range(col_offset, col_offset + ws.real_cols)
    rows = [[P1[i, j] for j in cols] for i in range(P1.rows)]
    if ws.is_complex:
        return cells_from_real_rows(rows)
    return [[Fraction(x) for x in row] for row in rows]


def is_admissible(P1_cells, ws: WeyrStructure, seq: AdmissibleSeq) -> bool:
    """Re-verify every stage minor of a candidate sequence."""
    seq.validate_shape(ws, len(P1_cells))
    for j in range(1, ws.m + 1):
        t = ws.tau(j)
        minor = [[P1_cells[i - 1][c] for c in range(t)] for i in seq.order[:t]]
        if not fm_is_invertible(minor):
            return False
    return True


def find_admissible(P1_cells, ws: WeyrStructure) -> AdmissibleSeq:
    """Greedy stage-wise lexicographically smallest admissible sequence.

    Exists for every member; failure to complete a stage means the block is
    not a member (or the caller passed inconsistent data).
    """
    nrows = len(P1_cells)
    order = []
    chosen = set()
    for j in range(1, ws.m + 1):
        t = ws.tau(j)
        span = RowSpan()
        for i in order:
            if not span.try_add(P1_cells[i - 1][:t]):
                raise GainchartError("previously selected rows became dependent")
        batch = []
        for i in range(1, nrows + 1):
            if len(order) + len(batch) == t:
                break
            if i in chosen:
                continue
            if span.try_add(P1_cells[i - 1][:t]):
                batch.append(i)
        if len(order) + len(batch) < t:
            raise GainchartError(
                "no admissible index sequence: top block is not generating"
            )
        order.extend(batch)
        chosen.update(batch)
    return AdmissibleSeq(order=tuple(order))


def diamond(Z: RatMatrix) -> RatMatrix:
    """Expand 1x2 cells of a real matrix into 2x2 rotation-style blocks."""
    if Z.cols % 2:
        raise ValueError("diamond expansion needs an even column count")
    cells = cells_from_real_rows(Z.tolists())
    return RatMatrix(diamond_rows_from_cells(cells))


def split_block_columns(mat: RatMatrix, structures) -> list:
    """Column spans of each spectral block inside an assembled matrix."""
    spans = []
    off = 0
    for ws in structures:
        spans.append((off, ws.real_cols))
        off += ws.real_cols
    if off != mat.cols:
        raise ValueError("block widths do not cover the matrix")
    return spans


def member_cells(obs: TruncObsMatrix, structures):
    """Per-block top-block cells of a member over the block fields."""
    spans = split_block_columns(obs.P1, structures)
    return [
        block_cells_of(obs.P1, ws, off) for ws, (off, _) in zip(structures, spans)
    ]


def find_multi_index(obs: TruncObsMatrix, structures) -> MultiIndex:
    """Stage-wise lexicographically smallest multi-index of a member."""
    return tuple(
        find_admissible(cells, ws)
        for cells, ws in zip(member_cells(obs, structures), structures)
    )


def block_memberships(obs: TruncObsMatrix, structures) -> list:
    """Per-block full-column-rank test of the product-set factors.

    Each column slab must have rank equal to its width; a square assembled
    matrix can still be singular when every factor passes (the global
    invertibility gate is assemble's rank check).
    """
    out = []
    off = 0
    for ws in structures:
        slab = obs.P.take_cols(range(off, off + ws.real_cols))
        out.append(slab.rank() == ws.real_cols)
        off += ws.real_cols
    return out


def real_cells_roundtrip(ws: WeyrStructure, cells) -> list:
    if ws.is_complex:
        return real_rows_from_cells(cells)
    return [list(row) for row in cells]
