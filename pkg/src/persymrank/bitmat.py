"""Word-packed matrices over F2 and a bit-twiddling rank kernel.

A matrix row is a single Python int: bit j holds the entry in column j+1.
Rank is computed by forward elimination whose pivot is always the lowest
set bit of the incoming row, so the reduction order is canonical and the
result never depends on dict/iteration order.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

MAX_DIM = 64


@dataclass(frozen=True)
class BitMatrix:
    """An n_rows x n_cols matrix over F2, one int per row."""

    rows: tuple[int, ...]
    n_cols: int

    def __post_init__(self):
        if not 1 <= self.n_cols <= MAX_DIM:
            raise ValueError(f"n_cols must be in 1..{MAX_DIM}, got {self.n_cols}")
        if not 1 <= len(self.rows) <= MAX_DIM:
            raise ValueError(f"need 1..{MAX_DIM} rows, got {len(self.rows)}")
        limit = 1 << self.n_cols
        for r, row in enumerate(self.rows):
            if not 0 <= row < limit:
                raise ValueError(f"row {r} does not fit in {self.n_cols} columns")

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        """Entry in row i, column j (both 0-based)."""
        return (self.rows[i] >> j) & 1


def rank_of_rows(rows: Iterable[int], n_cols: int) -> int:
    """Rank over F2 of the span of `rows`, each an int of up to n_cols bits.

    Maintains one stored pivot row per low-bit position.  XOR-ing a stored
    pivot into the working row strictly raises its lowest set bit, so the
    absorb loop terminates after at most n_cols steps per row.
    """
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            seen = pivots.get(low)
            if seen is None:
                pivots[low] = row
                break
            row ^= seen
    return len(pivots)


def rank(m: BitMatrix) -> int:
    """Rank of a BitMatrix over F2."""
    return rank_of_rows(m.rows, m.n_cols)
