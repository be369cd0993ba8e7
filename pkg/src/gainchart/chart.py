"""Local parametrization of the feedback gains assigning a similarity class.

Pipeline for a controllable pair (F, G) and a factored target class:

1. reduce (F, G) to the canonical pair, carrying the feedback-group
   transform; feasibility is the index/degree majorization test;
2. fix the target's real Weyr form A and a multi-index; coordinates fill the
   blockwise normal-form pattern of a generating top block, which assembles
   into a square intertwining matrix P_x;
3. the gain for the canonical pair sends each generator row p_j to
   p_j A^{k_j} through P_x^{-1}; stacking a free block for the inputs beyond
   rank G and pulling back through the feedback transform gives the gain for
   the original pair.

The inverse map recovers an intertwining matrix from the gain by solving the
generator-row linear system, reduces it to the normal form of the chart's
multi-index, and reads the coordinates back off the free entries.

Every synthesized gain is verified against the target invariant polynomials
before being returned.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction

from .canonical import (
    SpectralData,
    centralizer_dimension,
    centralizer_dimension_weyr,
    invariant_chain,
    weyr_from_spectral,
)
from .errors import (
    ChartDomainError,
    InfeasibleError,
    NotInChartError,
    NotInClassError,
    VerificationError,
)
from .feedback import BrunovskyData, ControlPair, rosenbrock_feasible, to_p_brunovsky
from .linalg import RatMatrix, SingularMatrixError
from .observability import (
    AdmissibleSeq,
    MultiIndex,
    TruncObsMatrix,
    assemble,
    find_multi_index,
    is_admissible,
    member_cells,
    real_cells_roundtrip,
)
from .partitions import Partition
from .poly import InvariantChain, invariant_polynomials
from .reduction import block_free_param_count, fill_block_params, reduce


@dataclass(frozen=True)
class FeedbackGain:
    """A gain K, optionally carrying the chart coordinates that produced it."""

    K: RatMatrix
    coords: tuple | None = None
    K2: RatMatrix | None = None


@dataclass(frozen=True)
class Chart:
    pair: ControlPair
    sd: SpectralData
    chain: InvariantChain
    bd: BrunovskyData
    A: RatMatrix
    structures: tuple
    mi: MultiIndex
    N: int
    dim: int

    @property
    def n(self) -> int:
        return self.pair.n

    @property
    def m(self) -> int:
        return self.pair.m

    @property
    def r(self) -> Partition:
        return self.bd.r

    @property
    def rank_g(self) -> int:
        return self.bd.rank_g


def default_multi_index(structures) -> MultiIndex:
    """Leading-row multi-index: stage j takes the first t_j rows."""
    return tuple(
        AdmissibleSeq(order=tuple(range(1, ws.tau(ws.m) + 1))) for ws in structures
    )


def parse_multi_index(structures, orders) -> MultiIndex:
    mi = tuple(AdmissibleSeq(order=tuple(int(i) for i in o)) for o in orders)
    if len(mi) != len(structures):
        raise ValueError(
            f"multi-index has {len(mi)} components, expected {len(structures)}"
        )
    return mi


def build_chart(F: RatMatrix, G: RatMatrix, sd: SpectralData, multi_index=None) -> Chart:
    """Construct a chart for the given pair and target class.

    Raises UncontrollableError / InfeasibleError when no gain exists, and
    validates the multi-index shape against the target's Weyr structures.
    """
    pair = ControlPair(F, G)
    if sd.n != pair.n:
        raise ValueError(
            f"target class has size {sd.n}, state dimension is {pair.n}"
        )
    bd = to_p_brunovsky(pair)
    chain = invariant_chain(sd)
    if not rosenbrock_feasible(bd.k, chain):
        raise InfeasibleError(
            "no gain assigns this class: controllability indices "
            f"{bd.k.parts} are not majorized by the degree sequence "
            f"{chain.degrees_desc()}"
        )
    A, structures = weyr_from_spectral(sd)
    N = centralizer_dimension(chain)
    if N != centralizer_dimension_weyr(structures):
        raise VerificationError("centralizer dimension formulas disagree")
    if multi_index is None:
        mi = default_multi_index(structures)
    else:
        mi = multi_index
    rr = bd.rank_g
    for ws, seq in zip(structures, mi):
        seq.validate_shape(ws, rr)
    dim = pair.n * rr - N
    return Chart(
        pair=pair, sd=sd, chain=chain, bd=bd, A=A,
        structures=tuple(structures), mi=mi, N=N, dim=dim,
    )


def manifold_dimension(n: int, m: int, chain: InvariantChain) -> int:
    """Dimension n*m - N of the full gain manifold."""
    return n * m - centralizer_dimension(chain)


def nu(chart: Chart, x) -> TruncObsMatrix:
    """Coordinates to the reduced-pattern member P_x (not yet rank-checked)."""
    coords = [Fraction(v) for v in x]
    if len(coords) != chart.dim:
        raise ValueError(f"expected {chart.dim} coordinates, got {len(coords)}")
    it = iter(coords)
    rr = chart.rank_g
    blocks = []
    for ws, seq in zip(chart.structures, chart.mi):
        cells = fill_block_params(ws, seq, rr, it)
        blocks.append(RatMatrix(real_cells_roundtrip(ws, cells)))
    P1 = RatMatrix.hstack(blocks)
    return assemble(chart.A, chart.r, P1, require_full_rank=False)


def coordinates_of_member(chart: Chart, obs: TruncObsMatrix):
    """Read chart coordinates off a reduced member (inverse of nu)."""
    rf, _ = reduce(obs, chart.structures, chart.mi)
    return list(rf.params)


def in_domain(chart: Chart, x) -> bool:
    """Domain predicate of the chart: the assembled member is invertible."""
    return nu(chart, x).P.rank() == chart.n


def phi(obs: TruncObsMatrix, k: Partition) -> RatMatrix:
    """Gain block for the canonical pair: rows p_j A^{k_j} through P^{-1}."""
    P = obs.P
    if P.rows != P.cols:
        raise ValueError("the chart pipeline needs a square member")
    Pinv = P.inverse()
    A = obs.A
    powers = {}
    rows = []
    for j in range(len(k)):
        kj = k.part(j + 1)
        if kj not in powers:
            powers[kj] = A.power(kj)
        p_j = RatMatrix([obs.P1.rowlist(j)])
        rows.append((p_j @ powers[kj]).rowlist(0))
    return RatMatrix(rows) @ Pinv


def synthesize(chart: Chart, x, K2: RatMatrix | None = None) -> FeedbackGain:
    """Gain at chart coordinates x, pulled back to the original pair.

    K2 is the free block for inputs beyond rank G (defaults to zero). The
    result is verified: F + G K must have the prescribed invariant
    polynomials exactly.
    """
    obs = nu(chart, x)
    n, m, rr = chart.n, chart.m, chart.rank_g
    try:
        K1 = phi(obs, chart.bd.k)
    except SingularMatrixError as e:
        raise ChartDomainError(
            "coordinates leave the chart domain: assembled member is "
            f"singular (column {e.column} dependent)"
        ) from None
    if m > rr:
        if K2 is None:
            K2 = RatMatrix.zeros(m - rr, n)
        if K2.shape != (m - rr, n):
            raise ValueError(f"K2 must be {m - rr} x {n}, got {K2.shape}")
        Kp = RatMatrix.vstack([K1, K2])
    else:
        if K2 is not None and K2.rows:
            raise ValueError("K2 given but every input already carries a gain row")
        K2 = None
        Kp = K1
    K = chart.bd.psi_inv(Kp)
    achieved = invariant_polynomials(chart.pair.F + chart.pair.G @ K)
    if achieved != chart.chain:
        raise VerificationError(
            "synthesized gain failed the invariant-polynomial check"
        )
    return FeedbackGain(K=K, coords=tuple(Fraction(v) for v in x), K2=K2)


def _closed_loop_canonical(chart: Chart, K: RatMatrix) -> tuple:
    Kp = chart.bd.psi(K)
    rr = chart.rank_g
    K1 = Kp.take_rows(range(rr))
    K2 = Kp.take_rows(range(rr, chart.m)) if chart.m > rr else None
    G1 = chart.bd.Gp.take_cols(range(rr))
    M = chart.bd.Fp + G1 @ K1
    return M, K1, K2


def recover_member(chart: Chart, K: RatMatrix) -> TruncObsMatrix:
    """An invertible intertwining member P with P A = (closed loop) P.

    Solves the generator-row linear system; any invertible solution is a
    valid representative (all lie in one orbit of the centralizer action).
    Raises NotInClassError when the gain does not assign the target class.
    """
    if K.shape != (chart.m, chart.n):
        raise ValueError(f"gain must be {chart.m} x {chart.n}, got {K.shape}")
    M, K1, _ = _closed_loop_canonical(chart, K)
    if invariant_polynomials(M) != chart.chain:
        raise NotInClassError(
            "closed-loop matrix does not have the prescribed invariant polynomials"
        )
    n, rr = chart.n, chart.rank_g
    A = chart.A
    k = chart.bd.k
    kmax = k.part(1)
    powers = [RatMatrix.identity(n)]
    for _ in range(kmax):
        powers.append(powers[-1] @ A)

    # generator row and A-power of each assembled row
    row_gen = []
    row_pow = []
    for i in range(1, len(chart.r) + 1):
        for j in range(chart.r.part(i)):
            row_gen.append(j)
            row_pow.append(i - 1)

    # unknowns: top-block entries, row-major; equations: for each generator j,
    # p_j A^{k_j} - sum_s K1[j, s] p_{gen(s)} A^{pow(s)} = 0
    cols = rr * n
    system = []
    for j in range(rr):
        coef = [[Fraction(0)] * n for _ in range(cols)]
        kj = k.part(j + 1)
        pw = powers[kj]
        for b in range(n):
            u = j * n + b
            row = coef[u]
            for c in range(n):
                row[c] += pw[b, c]
        for s in range(chart.n):
            f = K1[j, s]
            if f == 0:
                continue
            pw_s = powers[row_pow[s]]
            a = row_gen[s]
            for b in range(n):
                u = a * n + b
                row = coef[u]
                for c in range(n):
                    row[c] -= f * pw_s[b, c]
        for c in range(n):
            system.append([coef[u][c] for u in range(cols)])
    basis = RatMatrix(system).nullspace()
    if not basis:
        raise VerificationError("intertwining system has no solutions")

    def as_member(vec):
        P1 = RatMatrix([[vec[a * n + b] for b in range(n)] for a in range(rr)])
        return assemble(A, chart.r, P1, require_full_rank=False)

    candidates = [list(v) for v in basis]
    rng = random.Random(0x5EED)
    for attempt in range(400):
        for vec in candidates:
            obs = as_member(vec)
            if obs.P.rank() == n:
                if obs.P @ A != M @ obs.P:
                    raise VerificationError("recovered member fails to intertwine")
                return obs
        bound = 4 + attempt // 20
        weights = [rng.randint(-bound, bound) for _ in basis]
        candidates = [
            [sum(w * v[i] for w, v in zip(weights, basis)) for i in range(cols)]
        ]
    raise VerificationError("no invertible intertwining member found")


def coordinates(chart: Chart, K: RatMatrix):
    """Chart coordinates of a gain, plus its free K2 block.

    Raises NotInClassError when K does not assign the class, and
    NotInChartError when it does but this chart's multi-index is not
    admissible for it.
    """
    obs = recover_member(chart, K)
    cells = member_cells(obs, chart.structures)
    for block_cells, ws, seq in zip(cells, chart.structures, chart.mi):
        if not is_admissible(block_cells, ws, seq):
            raise NotInChartError(
                "gain lies in the class manifold but outside this chart "
                "(a stage minor of the multi-index is singular)"
            )
    x = coordinates_of_member(chart, obs)
    _, _, K2 = _closed_loop_canonical(chart, K)
    return x, K2


def chart_for_gain(F: RatMatrix, G: RatMatrix, sd: SpectralData, K: RatMatrix) -> Chart:
    """The chart (smallest admissible multi-index) containing a given gain."""
    base = build_chart(F, G, sd)
    obs = recover_member(base, K)
    mi = find_multi_index(obs, base.structures)
    return replace(base, mi=mi)


def chart_dimension_check(chart: Chart) -> bool:
    """Coordinate count equals the sum of blockwise free-parameter counts."""
    total = sum(
        block_free_param_count(ws, chart.rank_g) for ws in chart.structures
    )
    return total == chart.dim
