from fractions import Fraction

import pytest

from gainchart import (
    AdmissibleSeq,
    Partition,
    RatMatrix,
    SpectralData,
    assemble,
    find_multi_index,
    reduce,
    reduce_complex,
    reduce_real,
    weyr_from_spectral,
)
from gainchart.observability import member_cells
from gainchart.reduction import (
    AdmissibilityViolation,
    block_free_param_count,
    elementary_type_i,
    elementary_type_ii,
)

from conftest import (
    dominating_partition,
    rand_frac,
    rand_spectral,
    random_invertible_centralizer,
    random_member,
    worked_example,
)


def _pattern_ok(cells, ws, seq):
    """Entrywise normal-form pattern check on the selected rows."""
    one = ws.field_one
    zero = one - one
    m = ws.m
    for i_band in range(1, m + 1):
        rows = seq.order[ws.tau(i_band - 1) : ws.tau(i_band)]
        for j in range(1, m + 1):
            base = sum(ws.weyr.part(t) for t in range(1, j))
            for k in range(1, m - j + 2):
                c0, c1 = base + ws.tau(k - 1), base + ws.tau(k)
                block = [[cells[i - 1][c] for c in range(c0, c1)] for i in rows]
                if j == 1 and k == i_band:
                    for a, row in enumerate(block):
                        for b, v in enumerate(row):
                            if v != (one if a == b else zero):
                                return False
                elif j == 1 and k > i_band:
                    if any(v != zero for row in block for v in row):
                        return False
                elif j >= 2 and k >= max(i_band - j + 1, 1):
                    if any(v != zero for row in block for v in row):
                        return False
    return True


def test_elementary_matrices_are_centralizer_elements(rng):
    sd = SpectralData(real=[(0, Partition([4, 2, 2, 2, 1, 1]))])
    A, ws = weyr_from_spectral(sd)
    from gainchart.canonical import block_cells_to_real

    w = ws[0]
    T = [[Fraction(3)]]
    y1 = block_cells_to_real(w, elementary_type_i(w, 1, T))
    assert A @ y1 == y1 @ A
    assert y1.det() != 0
    d = [[Fraction(5), Fraction(1), Fraction(-2)]]
    y2 = block_cells_to_real(w, elementary_type_ii(w, 2, 1, 3, d))
    assert A @ y2 == y2 @ A
    assert y2.det() == 1  # unipotent


def test_elementary_type_ii_slot_validation():
    sd = SpectralData(real=[(0, Partition([2, 1]))])
    _, ws = weyr_from_spectral(sd)
    with pytest.raises(ValueError):
        elementary_type_ii(ws[0], 1, 2, 2, [[Fraction(1)]])


def test_already_reduced_is_fixed_point(rng):
    sd = SpectralData(real=[(0, Partition([2, 1]))])
    A, ws = weyr_from_spectral(sd)
    r = Partition([2, 2, 1])
    p1 = RatMatrix([[rand_frac(rng), 1, 0], [1, 0, 0]])
    obs = assemble(A, r, p1, require_full_rank=False)
    seq = AdmissibleSeq(order=(2, 1))
    rf, y = reduce_real(obs, seq, ws[0])
    assert rf.obs.P == obs.P
    assert y == RatMatrix.identity(3)


def test_worked_example_real_block_formula(rng):
    # reduced leading entry is the ratio of the two leading entries
    sd = SpectralData(real=[(0, Partition([2, 1]))])
    A, ws = weyr_from_spectral(sd)
    r = Partition([2, 2, 1])
    for _ in range(5):
        p11, p12, p21, p22, c1, c2 = (rand_frac(rng) for _ in range(6))
        if p21 == 0 or p11 * p22 - p12 * p21 == 0:
            continue
        obs = assemble(A, r, RatMatrix([[p11, p12, c1], [p21, p22, c2]]))
        seq = AdmissibleSeq(order=(2, 1))
        rf, y = reduce_real(obs, seq, ws[0])
        assert rf.obs.P1 == RatMatrix([[p11 / p21, 1, 0], [1, 0, 0]])
        assert rf.params == (p11 / p21,)
        assert obs.P @ y == rf.obs.P


def test_worked_example_complex_block_formula(rng):
    sd = SpectralData(complex=[(0, 1, Partition([1]))])
    A, ws = weyr_from_spectral(sd)
    r = Partition([2, 2, 1])
    for _ in range(5):
        p14, p15, p24, p25 = (rand_frac(rng) for _ in range(4))
        if p14 == 0 and p15 == 0:
            continue
        obs = assemble(A, r, RatMatrix([[p14, p15], [p24, p25]]))
        seq = AdmissibleSeq(order=(1,))
        rf, y = reduce_complex(obs, seq, ws[0])
        nrm = p14 * p14 + p15 * p15
        p24_re = (p14 * p24 + p15 * p25) / nrm
        p25_re = (p14 * p25 - p15 * p24) / nrm
        assert rf.obs.P1 == RatMatrix([[1, 0], [p24_re, p25_re]])
        # the transforming element realizes the inverse leading cell
        assert y == RatMatrix([[p14 / nrm, -p15 / nrm], [p15 / nrm, p14 / nrm]])
        assert obs.P @ y == rf.obs.P


def test_complex_block_already_reduced():
    sd = SpectralData(complex=[(0, 1, Partition([1]))])
    A, ws = weyr_from_spectral(sd)
    obs = assemble(A, Partition([2, 2, 1]), RatMatrix([[1, 0], [0, 0]]), require_full_rank=False)
    rf, y = reduce_complex(obs, AdmissibleSeq(order=(1,)), ws[0])
    assert rf.obs.P1 == RatMatrix([[1, 0], [0, 0]])
    assert y == RatMatrix.identity(2)
    assert rf.params == (Fraction(0), Fraction(0))


def test_worked_example_full_reduction(rng):
    F, G, sd = worked_example()
    A, ws = weyr_from_spectral(sd)
    r = Partition([2, 2, 1])
    obs = random_member(rng, A, r)
    mi = find_multi_index(obs, ws)
    rf, y = reduce(obs, ws, mi)
    assert len(rf.params) == 3  # n*r - N = 10 - 7
    assert obs.P @ y == rf.obs.P
    assert A @ y == y @ A
    assert y.det() != 0


def test_parameter_count_twelve_dimensional_block(rng):
    sd = SpectralData(real=[(2, Partition([4, 2, 2, 2, 1, 1]))])
    A, ws = weyr_from_spectral(sd)
    r = Partition([7, 4, 2, 1])
    assert block_free_param_count(ws[0], 7) == 30  # 7*12 - 54
    obs = random_member(rng, A, r)
    mi = find_multi_index(obs, ws)
    rf, y = reduce(obs, ws, mi)
    assert len(rf.params) == 30
    assert obs.P @ y == rf.obs.P


def test_uniqueness_under_centralizer_action(rng):
    for trial in range(12):
        sd = rand_spectral(rng, rng.randint(2, 8))
        A, ws = weyr_from_spectral(sd)
        r = dominating_partition(rng, __import__("gainchart").weyr_union(sd))
        if trial % 3 == 0:
            # rectangular members: more generator rows than the state size
            r = Partition([r.part(1) + 1] + list(r.parts[1:]))
        obs = random_member(rng, A, r)
        mi = find_multi_index(obs, ws)
        y0 = random_invertible_centralizer(rng, ws)
        moved = assemble(A, r, obs.P1 @ y0)
        rf1, y1 = reduce(obs, ws, mi)
        rf2, y2 = reduce(moved, ws, mi)
        assert rf1.obs.P == rf2.obs.P
        assert rf1.params == rf2.params
        assert obs.P @ y1 == rf1.obs.P
        assert moved.P @ y2 == rf2.obs.P


def test_reduction_is_idempotent(rng):
    for _ in range(5):
        sd = rand_spectral(rng, rng.randint(2, 6))
        A, ws = weyr_from_spectral(sd)
        r = dominating_partition(rng, __import__("gainchart").weyr_union(sd))
        obs = random_member(rng, A, r)
        mi = find_multi_index(obs, ws)
        rf, _ = reduce(obs, ws, mi)
        again, y = reduce(rf.obs, ws, mi)
        assert again.obs.P == rf.obs.P
        assert y == RatMatrix.identity(y.rows)


def test_pattern_assertions_hold(rng):
    for _ in range(6):
        sd = rand_spectral(rng, rng.randint(2, 7))
        A, ws = weyr_from_spectral(sd)
        r = dominating_partition(rng, __import__("gainchart").weyr_union(sd))
        obs = random_member(rng, A, r)
        mi = find_multi_index(obs, ws)
        rf, _ = reduce(obs, ws, mi)
        for cells, w, seq in zip(member_cells(rf.obs, ws), ws, mi):
            assert _pattern_ok(cells, w, seq)


def test_free_param_count_matches_dimension_formula(rng):
    for _ in range(6):
        sd = rand_spectral(rng, rng.randint(2, 7))
        A, ws = weyr_from_spectral(sd)
        r = dominating_partition(rng, __import__("gainchart").weyr_union(sd))
        obs = random_member(rng, A, r)
        mi = find_multi_index(obs, ws)
        rf, _ = reduce(obs, ws, mi)
        expect = sum(block_free_param_count(w, r.part(1)) for w in ws)
        assert len(rf.params) == expect


def test_fill_read_round_trip_on_deep_block(rng):
    # filling free coordinates and reading them back is the identity, also
    # when some stages are empty (weyr (6,4,1,1) has tau = 1,1,4,6)
    from gainchart.reduction import fill_block_params, read_block_params

    for segre, nrows, is_complex in [
        (Partition([4, 2, 2, 2, 1, 1]), 7, False),
        (Partition([2]), 2, True),
        (Partition([3, 1]), 4, True),
    ]:
        sd = (
            SpectralData(complex=[(1, 1, segre)])
            if is_complex
            else SpectralData(real=[(0, segre)])
        )
        _, ws = weyr_from_spectral(sd)
        w = ws[0]
        count = block_free_param_count(w, nrows)
        seq = AdmissibleSeq(order=tuple(range(1, w.weyr.part(1) + 1)))
        params = [rand_frac(rng) for _ in range(count)]
        cells = fill_block_params(w, seq, nrows, iter(params))
        assert read_block_params(cells, w, seq) == params


def test_filled_pattern_is_reduction_fixpoint(rng):
    # a pattern-filled member reduces to itself: uniqueness at work, in a
    # rectangular (more rows than state size) instance
    sd = SpectralData(real=[(0, Partition([4, 2, 2, 2, 1, 1]))])
    A, ws = weyr_from_spectral(sd)
    r = Partition([7, 4, 2, 1])
    from gainchart.reduction import fill_block_params

    seq = AdmissibleSeq(order=(1, 2, 3, 4, 5, 6))
    count = block_free_param_count(ws[0], 7)
    params = [rand_frac(rng, -2, 2) for _ in range(count)]
    cells = fill_block_params(ws[0], seq, 7, iter(params))
    from gainchart.observability import real_cells_roundtrip

    obs = assemble(A, r, RatMatrix(real_cells_roundtrip(ws[0], cells)), require_full_rank=False)
    rf, y = reduce(obs, ws, (seq,))
    assert rf.obs.P == obs.P
    assert y == RatMatrix.identity(12)
    assert list(rf.params) == params


def test_bad_multi_index_raises(rng):
    sd = SpectralData(real=[(0, Partition([2, 1]))])
    A, ws = weyr_from_spectral(sd)
    # leading entry of row one vanishes: the stage-one minor for order (1, 2)
    # is singular
    obs = assemble(A, Partition([2, 2, 1]), RatMatrix([[0, 1, 5], [3, 7, 2]]))
    with pytest.raises(AdmissibilityViolation):
        reduce_real(obs, AdmissibleSeq(order=(1, 2)), ws[0])
