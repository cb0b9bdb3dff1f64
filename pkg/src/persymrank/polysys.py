"""Solution counts of bilinear polynomial systems over F2[T].

An instance fixes q polynomials Y_i of degree < k and, for each of n
equations, q multipliers U_j^(i) of degree <= 1; equation j asks that the
sum over i of U_j^(i) * Y_i vanish.  The number of (Y, U) tuples solving
all n equations is counted three ways: direct brute force over all
2^(q(k+2n)) parameter choices, a rank-weighted power sum over the
persymmetric histogram, and (for special parameters) closed forms and the
classical count of unstructured F2 matrices by rank.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import _kernels
from .forms import DomainError, _exact_int, _need
from .persym import BudgetError, RankHistogram, Shape, resolve_budget_bits

DEFAULT_BRUTE_BITS = 30


def clmul(p: int, r: int) -> int:
    """Carry-less product of two coefficient masks: XOR of shifted copies."""
    acc = 0
    shift = 0
    while r:
        if r & 1:
            acc ^= p << shift
        r >>= 1
        shift += 1
    return acc


@dataclass(frozen=True)
class PolySystemInstance:
    """One parameter choice: q polynomials Y_i and n x q multipliers U_j^(i).

    Y[i] holds the coefficients of T^0..T^(k-1); U[j][i] is a two-bit mask
    a + b*T.  Bit t of a residual is the coefficient of T^t.
    """

    q: int
    n: int
    k: int
    Y: tuple[int, ...]
    U: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.q < 1 or self.n < 1 or self.k < 1:
            raise ValueError("q, n, k must all be >= 1")
        if len(self.Y) != self.q:
            raise ValueError(f"need {self.q} polynomials, got {len(self.Y)}")
        for y in self.Y:
            if not 0 <= y < (1 << self.k):
                raise ValueError(f"Y mask {y} does not fit in {self.k} bits")
        if len(self.U) != self.n:
            raise ValueError(f"need {self.n} multiplier rows, got {len(self.U)}")
        for row in self.U:
            if len(row) != self.q:
                raise ValueError(f"need {self.q} multipliers per row, got {len(row)}")
            for u in row:
                if not 0 <= u < 4:
                    raise ValueError(f"U mask {u} does not fit in 2 bits")

    @classmethod
    def from_index(cls, q: int, n: int, k: int, index: int) -> "PolySystemInstance":
        """Decode a packed index: per column, Y_i then U_1..U_n, low bits first."""
        total = q * (k + 2 * n)
        if not 0 <= index < (1 << total):
            raise ValueError(f"index must be in [0, 2^{total}), got {index}")
        rem = index
        Y = []
        U = [[0] * q for _ in range(n)]
        for i in range(q):
            Y.append(rem & ((1 << k) - 1))
            rem >>= k
            for j in range(n):
                U[j][i] = rem & 3
                rem >>= 2
        return cls(q, n, k, tuple(Y), tuple(tuple(row) for row in U))

    def to_index(self) -> int:
        """Inverse of from_index."""
        index = 0
        pos = 0
        for i in range(self.q):
            index |= self.Y[i] << pos
            pos += self.k
            for j in range(self.n):
                index |= self.U[j][i] << pos
                pos += 2
        return index

    def residuals(self) -> tuple[int, ...]:
        """Coefficient mask of each equation's sum of products."""
        out = []
        for j in range(self.n):
            acc = 0
            for i in range(self.q):
                acc ^= clmul(self.Y[i], self.U[j][i])
            out.append(acc)
        return tuple(out)

    def is_solution(self) -> bool:
        return all(r == 0 for r in self.residuals())


def r_bruteforce(
    q: int,
    n: int,
    k: int,
    budget_bits: Optional[int] = None,
    parallelism: int = 1,
) -> int:
    """Count solutions by sweeping every packed parameter index.

    Refuses when q*(k+2n) exceeds the bit budget (default 30, or the
    PERSYM_BUDGET_BITS environment variable).  The index space is split into
    contiguous ranges exactly like the rank sweep, so results are identical
    for every parallelism level.
    """
    if q < 1 or n < 1 or k < 1:
        raise ValueError("q, n, k must all be >= 1")
    budget = resolve_budget_bits(budget_bits, DEFAULT_BRUTE_BITS)
    required = q * (k + 2 * n)
    if required > budget:
        raise BudgetError(
            required, budget, what=f"solution brute force for q={q}, n={n}, k={k}"
        )
    total = 1 << required
    if parallelism <= 1:
        return int(_kernels.count_zero_evals(q, n, k, 0, total))
    chunk_count = min(total, parallelism * 8)
    bounds = [
        (total * c // chunk_count, total * (c + 1) // chunk_count)
        for c in range(chunk_count)
    ]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        futures = [
            pool.submit(_kernels.count_zero_evals, q, n, k, start, stop)
            for start, stop in bounds
        ]
        return sum(int(f.result()) for f in futures)


GammaArg = Union[RankHistogram, Sequence[int]]


def r_formula(q: int, n: int, k: int, gammas: GammaArg) -> int:
    """Solution count as a rank-weighted power sum over the histogram.

    count = 2^(q*(2n+k) - (k+1)*n) * sum_i gamma_i * 2^(-i*q), summed over
    ranks 0..min(2n, k).  The prefactor exponent may be negative; the whole
    expression always collapses to an exact integer.
    """
    if q < 1 or n < 1 or k < 1:
        raise ValueError("q, n, k must all be >= 1")
    i_max = min(2 * n, k)
    if isinstance(gammas, RankHistogram):
        if gammas.shape != Shape.uniform(n) or gammas.k != k:
            raise ValueError(
                f"histogram is for shape {gammas.shape}, k={gammas.k}; "
                f"wanted the uniform {n}-block shape with k={k}"
            )
        counts: Sequence[int] = gammas.counts
    else:
        counts = list(gammas)
    if len(counts) != i_max + 1:
        raise ValueError(
            f"rank distribution must cover ranks 0..{i_max}, got {len(counts)} entries"
        )
    two = Fraction(2)
    weighted = sum(Fraction(c) * two ** (-i * q) for i, c in enumerate(counts))
    value = two ** (q * (2 * n + k) - (k + 1) * n) * weighted
    return _exact_int(value, f"r_formula(q={q}, n={n}, k={k})")


def r_q4_k_closed(k: int) -> int:
    """Closed form for the q = 4 solution count of the quadruple family."""
    _need(k >= 3, f"r_q4_k_closed(k={k})", "k >= 3")
    X = 2**k
    return (
        X**4
        + 5400 * X**3
        + 3763200 * X**2
        + 377395200 * X
        + 3674603520
    )


def landsberg_count(m: int, q: int, l: int) -> int:
    """Number of m x q matrices over F2 of rank l, as an exact product.

    The numerator and denominator products are assembled in full before one
    exact division; a nonzero remainder would be a hard arithmetic error.
    """
    _need(m >= 1, f"landsberg_count(m={m})", "m >= 1")
    _need(q >= 1, f"landsberg_count(q={q})", "q >= 1")
    _need(0 <= l <= min(m, q), f"landsberg_count(l={l})", f"0 <= l <= {min(m, q)}")
    num = 1
    den = 1
    for s in range(l):
        num *= (2**m - 2**s) * (2**q - 2**s)
        den *= 2**l - 2**s
    value, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(
            f"landsberg_count({m}, {q}, {l}): product division left remainder {rem}"
        )
    return value


def r_q41_identity(q: int) -> tuple[int, int, int]:
    """Three routes to the k = 1 solution count of the quadruple family.

    Returns (matrix-count route, closed form, histogram route): the sum over
    ranks l of landsberg_count(8, q, l) * 2^(q - l), the closed expression
    2^(9q-8) + 255 * 2^(8q-8), and r_formula with the k = 1 golden table.
    All three agree for every q >= 1.
    """
    _need(q >= 1, f"r_q41_identity(q={q})", "q >= 1")
    via_matrices = sum(
        landsberg_count(8, q, l) << (q - l) for l in range(min(8, q) + 1)
    )
    closed = (1 << (9 * q - 8)) + 255 * (1 << (8 * q - 8))
    via_histogram = r_formula(q, 4, 1, [1, 255])
    return via_matrices, closed, via_histogram
