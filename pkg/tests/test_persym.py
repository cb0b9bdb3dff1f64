"""Persymmetric families: construction, layout, sweeps, chunking, budget."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import reference_histogram
from persymrank import (
    BudgetError,
    CoeffSeq,
    HistogramSource,
    RankHistogram,
    Shape,
    build_persym,
    enumerate_histogram,
    merge_histograms,
    partition_sweep,
)
from persymrank.persym import resolve_budget_bits


def test_shape_basics():
    s = Shape.parse("2,2,2,2,1")
    assert s.blocks == (2, 2, 2, 2, 1)
    assert s.n == 5
    assert s.total_rows == 9
    assert str(s) == "2,2,2,2,1"
    assert s.seq_bits(4) == (5, 5, 5, 5, 4)
    assert s.total_bits(4) == 24
    assert s.max_rank(4) == 4
    assert Shape.uniform(3) == Shape((2, 2, 2))


def test_shape_validation():
    with pytest.raises(ValueError):
        Shape.parse("")
    with pytest.raises(ValueError):
        Shape.parse("2,x")
    with pytest.raises(ValueError):
        Shape((3,))
    with pytest.raises(ValueError):
        Shape((2,) * 10)


def test_block_window_layout():
    # height-2 block, k=3: rows are the two k-bit windows of the 4-bit mask
    shape = Shape((2,))
    seq = CoeffSeq.from_index(shape, 3, 0b1011)
    m = build_persym(seq, shape)
    assert m.rows == (0b011, 0b101)
    assert m.n_cols == 3
    # each antidiagonal is constant: entry (r, c) = coefficient r + c
    for r in range(2):
        for c in range(3):
            assert m.entry(r, c) == (0b1011 >> (r + c)) & 1


def test_height_one_block():
    shape = Shape((1,))
    seq = CoeffSeq.from_index(shape, 2, 0b10)
    assert build_persym(seq, shape).rows == (0b10,)


def test_index_split_order():
    # low bits feed the first block
    shape = Shape((2, 1))
    k = 2
    assert shape.seq_bits(k) == (3, 2)
    seq = CoeffSeq.from_index(shape, k, 0b10_110)
    assert seq.block_masks == (0b110, 0b10)
    m = build_persym(seq, shape)
    assert m.rows == (0b10, 0b11, 0b10)


@settings(max_examples=100, deadline=None)
@given(st.data())
def test_index_roundtrip(data):
    heights = data.draw(st.lists(st.sampled_from([1, 2]), min_size=1, max_size=4))
    shape = Shape(tuple(heights))
    k = data.draw(st.integers(1, 4))
    index = data.draw(st.integers(0, (1 << shape.total_bits(k)) - 1))
    seq = CoeffSeq.from_index(shape, k, index)
    assert seq.to_index(shape) == index


def test_build_validation():
    shape = Shape((2, 2))
    with pytest.raises(ValueError):
        build_persym(CoeffSeq((0b1,), 2), shape)  # wrong block count
    with pytest.raises(ValueError):
        build_persym(CoeffSeq((0b1000, 0), 2), shape)  # mask too wide
    with pytest.raises(ValueError):
        CoeffSeq.from_index(shape, 2, 1 << 6)  # index out of range


@pytest.mark.parametrize(
    "blocks,k",
    [((2,), 1), ((2,), 2), ((2,), 3), ((1,), 2), ((2, 1), 2), ((1, 2), 2), ((2, 2), 2), ((1, 1), 3)],
)
def test_enumeration_matches_reference(blocks, k):
    shape = Shape(blocks)
    hist = enumerate_histogram(shape, k)
    assert list(hist.counts) == reference_histogram(shape, k)
    assert hist.source is HistogramSource.ENUMERATED


def test_full_histogram_invariants():
    for n in (1, 2, 3):
        for k in (2, 3, 4):
            hist = enumerate_histogram(Shape.uniform(n), k)
            assert hist.counts[0] == 1
            assert hist.total() == 1 << hist.shape.total_bits(k)
            assert hist.counts[1] == 3 * (2**n - 1)


def test_partition_chunks_merge_to_full():
    shape = Shape.uniform(2)
    k = 4
    full = enumerate_histogram(shape, k)
    for chunk_count in (1, 7, 64):
        parts = [partition_sweep(shape, k, c, chunk_count) for c in range(chunk_count)]
        merged = merge_histograms(parts)
        assert merged.counts == full.counts
    # chunk 0 holds the zero sequence, later chunks do not
    parts = [partition_sweep(shape, k, c, 4) for c in range(4)]
    assert parts[0].counts[0] == 1
    assert all(p.counts[0] == 0 for p in parts[1:])


def test_more_chunks_than_indices():
    shape = Shape((2,))
    k = 1  # 4 sequences
    parts = [partition_sweep(shape, k, c, 64) for c in range(64)]
    assert sum(p.total() for p in parts) == 4
    assert merge_histograms(parts).counts == enumerate_histogram(shape, k).counts


def test_worker_counts_agree():
    shape = Shape.uniform(2)
    k = 4
    reference = enumerate_histogram(shape, k, parallelism=1)
    for workers in (2, 8):
        assert enumerate_histogram(shape, k, parallelism=workers).counts == reference.counts


def test_progress_sink():
    calls = []
    hist = enumerate_histogram(
        Shape.uniform(2), 3, progress_sink=lambda done, total: calls.append((done, total))
    )
    assert calls, "progress sink never called"
    done_values = [d for d, _ in calls]
    assert done_values == sorted(done_values)
    assert calls[-1] == (hist.total(), hist.total())
    assert all(t == hist.total() for _, t in calls)


def test_merge_validation():
    a = partition_sweep(Shape.uniform(2), 3, 0, 2)
    b = partition_sweep(Shape.uniform(2), 4, 0, 2)
    with pytest.raises(ValueError):
        merge_histograms([])
    with pytest.raises(ValueError):
        merge_histograms([a, b])
    table = RankHistogram(
        Shape.uniform(2), 3, (1, 9, 198, 816), HistogramSource.BAKED_TABLE
    )
    with pytest.raises(ValueError):
        merge_histograms([a, table])


def test_histogram_validation():
    with pytest.raises(ValueError):
        RankHistogram(Shape.uniform(2), 3, (1, 2), HistogramSource.ENUMERATED)
    with pytest.raises(ValueError):
        RankHistogram(Shape.uniform(1), 1, (1, -1), HistogramSource.ENUMERATED)


def test_budget_refusal_carries_required_bits():
    with pytest.raises(BudgetError) as excinfo:
        enumerate_histogram(Shape.uniform(4), 12)
    assert excinfo.value.required_bits == 52
    assert excinfo.value.budget_bits == 40
    assert "52" in str(excinfo.value)
    with pytest.raises(BudgetError):
        partition_sweep(Shape.uniform(4), 12, 0, 1 << 20)


def test_budget_env_override(monkeypatch):
    shape = Shape((2,))
    monkeypatch.setenv("PERSYM_BUDGET_BITS", "5")
    with pytest.raises(BudgetError):
        enumerate_histogram(shape, 8)  # needs 9 bits
    monkeypatch.setenv("PERSYM_BUDGET_BITS", "9")
    assert enumerate_histogram(shape, 8).total() == 1 << 9
    monkeypatch.setenv("PERSYM_BUDGET_BITS", "not-a-number")
    with pytest.raises(ValueError):
        enumerate_histogram(shape, 8)
    # explicit argument wins over the environment
    monkeypatch.setenv("PERSYM_BUDGET_BITS", "5")
    assert enumerate_histogram(shape, 8, budget_bits=12).total() == 1 << 9


def test_budget_hard_cap():
    assert resolve_budget_bits(100, 40) == 58
    assert resolve_budget_bits(None, 40) == 40
