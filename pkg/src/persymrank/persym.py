"""Stacked persymmetric matrices over F2 and exhaustive rank histograms.

A shape is a list of block heights (1 or 2).  A height-h block with k
columns is generated by a sequence of k + h - 1 coefficients: row r of the
block reads the k-bit window starting at position r, so every antidiagonal
of the block is constant.  Stacking n such blocks gives an (n-fold)
persymmetric matrix, and sweeping all 2^B coefficient sequences
(B = sum of k + h_j - 1) yields the rank histogram of the whole family.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .bitmat import BitMatrix

DEFAULT_BUDGET_BITS = 40
HARD_BUDGET_CAP = 58
BUDGET_ENV_VAR = "PERSYM_BUDGET_BITS"
MAX_BLOCKS = 9


class BudgetError(RuntimeError):
    """A sweep or brute-force pass was refused because it needs too many bits."""

    def __init__(self, required_bits: int, budget_bits: int, what: str = "sweep"):
        self.required_bits = required_bits
        self.budget_bits = budget_bits
        super().__init__(
            f"{what} needs {required_bits} index bits "
            f"(2^{required_bits} cases) but the budget is {budget_bits} bits; "
            f"raise it via {BUDGET_ENV_VAR} or budget_bits="
        )


def resolve_budget_bits(budget_bits: Optional[int], default: int) -> int:
    """Effective bit budget: explicit argument, else environment, else default.

    The hard cap keeps every index inside a signed 64-bit word for the
    compiled kernels.
    """
    if budget_bits is None:
        raw = os.environ.get(BUDGET_ENV_VAR)
        if raw is not None:
            try:
                budget_bits = int(raw)
            except ValueError:
                raise ValueError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}")
        else:
            budget_bits = default
    return min(budget_bits, HARD_BUDGET_CAP)


@dataclass(frozen=True)
class Shape:
    """Block heights of a stacked persymmetric family, top to bottom."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= len(self.blocks) <= MAX_BLOCKS:
            raise ValueError(f"need 1..{MAX_BLOCKS} blocks, got {len(self.blocks)}")
        for h in self.blocks:
            if h not in (1, 2):
                raise ValueError(f"block heights must be 1 or 2, got {h}")

    @classmethod
    def parse(cls, text: str) -> "Shape":
        """Parse a comma-separated height list such as '2,2,2,2,1'."""
        parts = [p.strip() for p in text.split(",") if p.strip()]
        if not parts:
            raise ValueError(f"empty shape string: {text!r}")
        try:
            heights = tuple(int(p) for p in parts)
        except ValueError:
            raise ValueError(f"shape must be comma-separated integers, got {text!r}")
        return cls(heights)

    @classmethod
    def uniform(cls, n: int) -> "Shape":
        """The n-block shape with every block of height 2."""
        return cls((2,) * n)

    @property
    def n(self) -> int:
        return len(self.blocks)

    @property
    def total_rows(self) -> int:
        return sum(self.blocks)

    def seq_bits(self, k: int) -> tuple[int, ...]:
        """Coefficient-sequence length k + h - 1 for each block."""
        return tuple(k + h - 1 for h in self.blocks)

    def total_bits(self, k: int) -> int:
        """Total index width B: one matrix per B-bit integer."""
        return sum(self.seq_bits(k))

    def max_rank(self, k: int) -> int:
        return min(self.total_rows, k)

    def __str__(self) -> str:
        return ",".join(str(h) for h in self.blocks)


@dataclass(frozen=True)
class CoeffSeq:
    """Per-block coefficient windows for one matrix of a family.

    block_masks[j] is an integer of shape.seq_bits(k)[j] bits; bit t is the
    coefficient shared by every cell (r, c) of block j with r + c = t.
    """

    block_masks: tuple[int, ...]
    k: int

    @classmethod
    def from_index(cls, shape: Shape, k: int, index: int) -> "CoeffSeq":
        """Split a B-bit index into block masks, least significant bits first."""
        if k < 1:
            raise ValueError(f"k must be >= 1, got {k}")
        total = shape.total_bits(k)
        if not 0 <= index < (1 << total):
            raise ValueError(f"index must be in [0, 2^{total}), got {index}")
        masks = []
        rem = index
        for nbits in shape.seq_bits(k):
            masks.append(rem & ((1 << nbits) - 1))
            rem >>= nbits
        return cls(tuple(masks), k)

    def to_index(self, shape: Shape) -> int:
        """Inverse of from_index for the same shape."""
        index = 0
        pos = 0
        for mask, nbits in zip(self.block_masks, shape.seq_bits(self.k)):
            index |= mask << pos
            pos += nbits
        return index


def build_persym(seq: CoeffSeq, shape: Shape) -> BitMatrix:
    """Materialize the stacked matrix generated by a coefficient sequence."""
    if len(seq.block_masks) != shape.n:
        raise ValueError(
            f"sequence has {len(seq.block_masks)} blocks, shape wants {shape.n}"
        )
    k = seq.k
    kmask = (1 << k) - 1
    rows = []
    for mask, h, nbits in zip(seq.block_masks, shape.blocks, shape.seq_bits(k)):
        if not 0 <= mask < (1 << nbits):
            raise ValueError(f"block mask {mask} does not fit in {nbits} bits")
        for r in range(h):
            rows.append((mask >> r) & kmask)
    return BitMatrix(tuple(rows), k)


class HistogramSource(Enum):
    """How a rank histogram was obtained."""

    ENUMERATED = "Enumerated"
    BAKED_TABLE = "BakedTable"
    CLOSED_FORM = "ClosedForm"


@dataclass(frozen=True)
class RankHistogram:
    """counts[i] = number of coefficient sequences giving a rank-i matrix."""

    shape: Shape
    k: int
    counts: tuple[int, ...]
    source: HistogramSource

    def __post_init__(self):
        if len(self.counts) != self.shape.max_rank(self.k) + 1:
            raise ValueError(
                f"expected {self.shape.max_rank(self.k) + 1} rank buckets, "
                f"got {len(self.counts)}"
            )
        for c in self.counts:
            if c < 0:
                raise ValueError("rank counts must be non-negative")

    @property
    def max_rank(self) -> int:
        return len(self.counts) - 1

    def total(self) -> int:
        return sum(self.counts)


def _check_sweep_args(shape: Shape, k: int, budget_bits: Optional[int]) -> int:
    if k < 1 or k > 64:
        raise ValueError(f"k must be in 1..64, got {k}")
    budget = resolve_budget_bits(budget_bits, DEFAULT_BUDGET_BITS)
    required = shape.total_bits(k)
    if required > budget:
        raise BudgetError(required, budget, what=f"rank sweep for shape {shape}, k={k}")
    return required


def _sweep_range(shape: Shape, k: int, start: int, stop: int) -> tuple[int, ...]:
    heights = np.asarray(shape.blocks, dtype=np.int64)
    counts = np.zeros(shape.max_rank(k) + 2, dtype=np.int64)
    _kernels.sweep_ranks(heights, k, start, stop, counts)
    if counts[-1] != 0:
        raise AssertionError("rank exceeded the provable maximum; kernel bug")
    return tuple(int(c) for c in counts[:-1])


def partition_sweep(
    shape: Shape,
    k: int,
    chunk_index: int,
    chunk_count: int,
    budget_bits: Optional[int] = None,
) -> RankHistogram:
    """Rank histogram of one contiguous slice of the 2^B index space.

    The B-bit index space is split into chunk_count near-equal ranges;
    summing the histograms of all chunks reproduces the full enumeration
    exactly, so chunks can be computed in any order, persisted, and merged.
    """
    if chunk_count < 1:
        raise ValueError(f"chunk_count must be >= 1, got {chunk_count}")
    if not 0 <= chunk_index < chunk_count:
        raise ValueError(
            f"chunk_index must be in [0, {chunk_count}), got {chunk_index}"
        )
    required = _check_sweep_args(shape, k, budget_bits)
    total = 1 << required
    start = total * chunk_index // chunk_count
    stop = total * (chunk_index + 1) // chunk_count
    counts = _sweep_range(shape, k, start, stop)
    return RankHistogram(shape, k, counts, HistogramSource.ENUMERATED)


def merge_histograms(parts: Iterable[RankHistogram]) -> RankHistogram:
    """Sum chunk histograms of the same family into one histogram."""
    parts = list(parts)
    if not parts:
        raise ValueError("nothing to merge")
    first = parts[0]
    acc = [0] * len(first.counts)
    for part in parts:
        if part.shape != first.shape or part.k != first.k:
            raise ValueError("cannot merge histograms of different families")
        if part.source is not HistogramSource.ENUMERATED:
            raise ValueError("only enumerated histograms can be merged")
        for i, c in enumerate(part.counts):
            acc[i] += c
    return RankHistogram(first.shape, first.k, tuple(acc), HistogramSource.ENUMERATED)


def enumerate_histogram(
    shape: Shape,
    k: int,
    parallelism: int = 1,
    progress_sink: Optional[Callable[[int, int], None]] = None,
    budget_bits: Optional[int] = None,
) -> RankHistogram:
    """Exhaustive rank histogram over all 2^B coefficient sequences.

    Args:
        shape: block heights of the family.
        k: number of columns.
        parallelism: worker threads; 0 means one per available CPU.  The
            result is bit-identical for every worker count and chunking.
        progress_sink: optional callable fed (done_indices, total_indices)
            after each finished slice; the final call reports completion.
        budget_bits: sweep refusal threshold, defaulting to 40 or the
            PERSYM_BUDGET_BITS environment variable.

    Returns:
        The full RankHistogram with source ENUMERATED.
    """
    required = _check_sweep_args(shape, k, budget_bits)
    total = 1 << required
    if parallelism == 0:
        parallelism = os.cpu_count() or 1
    if parallelism < 0:
        raise ValueError(f"parallelism must be >= 0, got {parallelism}")

    if parallelism <= 1 and progress_sink is None:
        counts = _sweep_range(shape, k, 0, total)
        return RankHistogram(shape, k, counts, HistogramSource.ENUMERATED)

    chunk_count = min(total, max(parallelism, 1) * 8)
    bounds = [
        (total * c // chunk_count, total * (c + 1) // chunk_count)
        for c in range(chunk_count)
    ]
    results: list[Optional[tuple[int, ...]]] = [None] * chunk_count
    done = 0
    if parallelism <= 1:
        for c, (start, stop) in enumerate(bounds):
            results[c] = _sweep_range(shape, k, start, stop)
            done += stop - start
            if progress_sink is not None:
                progress_sink(done, total)
    else:
        with ThreadPoolExecutor(max_workers=parallelism) as pool:
            futures = {
                pool.submit(_sweep_range, shape, k, start, stop): c
                for c, (start, stop) in enumerate(bounds)
            }
            for future in as_completed(futures):
                c = futures[future]
                results[c] = future.result()
                start, stop = bounds[c]
                done += stop - start
                if progress_sink is not None:
                    progress_sink(done, total)

    acc = [0] * (shape.max_rank(k) + 1)
    for part in results:
        assert part is not None
        for i, c in enumerate(part):
            acc[i] += c
    return RankHistogram(shape, k, tuple(acc), HistogramSource.ENUMERATED)


def histogram_from_counts(
    shape: Shape, k: int, counts: Sequence[int], source: HistogramSource
) -> RankHistogram:
    """Wrap externally produced counts (tables, closed forms) as a histogram."""
    return RankHistogram(shape, k, tuple(int(c) for c in counts), source)
