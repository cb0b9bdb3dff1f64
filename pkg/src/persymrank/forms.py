"""Exact closed-form rank counts for the stacked persymmetric families.

Every formula is evaluated with fractions.Fraction or big-int arithmetic, so
results are exact at any size; a closed form whose rational intermediate
fails to collapse to an integer raises instead of rounding.  Each formula
carries an explicit validity domain and refuses evaluation outside it.

Vocabulary used throughout: the "n-block family" stacks n height-2 blocks
(2n x k matrices); the "quadruple family" is its n = 4 member (8 x k); the
"mixed family" is the shape 2,2,2,2,1 (9 x k).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .persym import RankHistogram, Shape


class DomainError(ValueError):
    """A closed form was asked for parameters outside its validity domain."""


def _exact_int(value: Fraction, what: str) -> int:
    """Collapse an exact rational to an int, refusing any rounding."""
    if value.denominator != 1:
        raise ArithmeticError(f"{what} did not reduce to an integer: {value}")
    return int(value)


def _need(cond: bool, what: str, constraint: str):
    if not cond:
        raise DomainError(f"{what}: requires {constraint}")


# ---------------------------------------------------------------------------
# n-block family: ranks 0..5 as polynomials in 2^n and 2^k
# ---------------------------------------------------------------------------

GENERAL_MIN_K = {0: 1, 1: 2, 2: 3, 3: 4, 4: 5, 5: 6}


def gamma_general(i: int, n: int, k: int) -> int:
    """Number of rank-i members of the n-block family with k columns.

    Valid for 0 <= i <= 5 with k >= GENERAL_MIN_K[i]; the rank-4 and rank-5
    coefficients are rationals in 2^k whose combination is always integral.
    """
    _need(0 <= i <= 5, f"gamma_general(i={i})", "0 <= i <= 5")
    _need(n >= 1, f"gamma_general(n={n})", "n >= 1")
    _need(
        k >= GENERAL_MIN_K[i],
        f"gamma_general(i={i}, k={k})",
        f"k >= {GENERAL_MIN_K[i]}",
    )
    X = Fraction(2) ** k
    N = Fraction(2) ** n
    if i == 0:
        v = Fraction(1)
    elif i == 1:
        v = 3 * (N - 1)
    elif i == 2:
        v = 7 * N**2 + (2 * X - 25) * N - 2 * X + 18
    elif i == 3:
        v = 15 * N**3 + (7 * X - 133) * N**2 + (294 - 21 * X) * N + 14 * X - 176
    elif i == 4:
        v = (
            31 * N**4
            + (35 * X - 1210) / 2 * N**3
            + (4 * X**2 - 783 * X + 19028) / 6 * N**2
            + (-2 * X**2 + 269 * X - 5744) * N
            + (4 * X**2 - 468 * X + 9440) / 3
        )
    else:
        v = (
            63 * N**5
            + (Fraction(155, 4) * X - 2573) * N**4
            + (Fraction(5, 2) * X**2 - Fraction(2565, 4) * X + 29150) * N**3
            + (-35 * X**2 + 6265 * X - 247520) / 2 * N**2
            + (35 * X**2 - 5490 * X + 203872) * N
            - 20 * X**2
            + 2960 * X
            - 106752
        )
    return _exact_int(v, f"gamma_general(i={i}, n={n}, k={k})")


_RANK4_SMALL_N_MIN_K = {1: 1, 2: 2, 3: 3}


def gamma_rank4_small_n(n: int, k: int) -> int:
    """Rank-4 count of the n-block family for n = 1, 2, 3 (quadratic in 2^k)."""
    _need(n in _RANK4_SMALL_N_MIN_K, f"gamma_rank4_small_n(n={n})", "n in {1, 2, 3}")
    _need(
        k >= _RANK4_SMALL_N_MIN_K[n],
        f"gamma_rank4_small_n(n={n}, k={k})",
        f"k >= {_RANK4_SMALL_N_MIN_K[n]}",
    )
    X = 2**k
    if n == 1:
        return 0
    if n == 2:
        return 4 * X**2 - 48 * X + 128
    return 28 * X**2 + 2604 * X - 22624


def gamma_rank4_k5_k6(n: int, k: int) -> int:
    """Rank-4 count at fixed k = 5 or k = 6, as a polynomial in 2^n."""
    _need(k in (5, 6), f"gamma_rank4_k5_k6(k={k})", "k in {5, 6}")
    _need(n >= 1, f"gamma_rank4_k5_k6(n={n})", "n >= 1")
    N = 2**n
    if k == 5:
        return 31 * N**4 - 45 * N**3 - 322 * N**2 + 816 * N - 480
    return 31 * N**4 + 515 * N**3 - 2450 * N**2 + 3280 * N - 1376


_RANK5_SMALL_N_MIN_K = {1: 1, 2: 1, 3: 3, 4: 4}


def gamma_rank5_small_n(n: int, k: int) -> int:
    """Rank-5 count of the n-block family for n = 1..4 (quadratic in 2^k)."""
    _need(n in _RANK5_SMALL_N_MIN_K, f"gamma_rank5_small_n(n={n})", "n in {1, 2, 3, 4}")
    _need(
        k >= _RANK5_SMALL_N_MIN_K[n],
        f"gamma_rank5_small_n(n={n}, k={k})",
        f"k >= {_RANK5_SMALL_N_MIN_K[n]}",
    )
    X = 2**k
    if n in (1, 2):
        return 0
    if n == 3:
        return 420 * X**2 - 10080 * X + 53760
    return 6300 * X**2 + 630000 * X - 11692800


def gamma_rank5_k6(n: int) -> int:
    """Rank-5 count at fixed k = 6, as a polynomial in 2^n."""
    _need(n >= 1, f"gamma_rank5_k6(n={n})", "n >= 1")
    N = 2**n
    return 63 * N**5 - 93 * N**4 - 1650 * N**3 + 5040 * N**2 - 4128 * N + 768


# ---------------------------------------------------------------------------
# quadruple family (n = 4): closed-form lines and enumerated golden tables
# ---------------------------------------------------------------------------

QUADRUPLE_MIN_K = {0: 4, 1: 4, 2: 4, 3: 4, 4: 5, 5: 4, 6: 4, 7: 4, 8: 8}


def gamma_quadruple(i: int, k: int) -> int:
    """Rank-i count of the quadruple family, polynomial in 2^k.

    Each line is valid from QUADRUPLE_MIN_K[i] on; below that use
    gamma_table_small_k.  For k > i the lines with i > k evaluate to the
    forced zeros exactly.
    """
    _need(0 <= i <= 8, f"gamma_quadruple(i={i})", "0 <= i <= 8")
    _need(
        k >= QUADRUPLE_MIN_K[i],
        f"gamma_quadruple(i={i}, k={k})",
        f"k >= {QUADRUPLE_MIN_K[i]}",
    )
    X = 2**k
    if i == 0:
        return 1
    if i == 1:
        return 45
    if i == 2:
        return 30 * X + 1410
    if i == 3:
        return 1470 * X + 31920
    if i == 4:
        return 140 * X**2 + 42420 * X + 276640
    if i == 5:
        return 6300 * X**2 + 630000 * X - 11692800
    if i == 6:
        return 120 * X**3 + 123480 * X**2 - 6142080 * X + 66170880
    if i == 7:
        return 3720 * X**3 - 416640 * X**2 + 13332480 * X - 121896960
    # full rank: 2^4 times the number of onto linear maps, as a product
    return 16 * (X - 128) * (X - 64) * (X - 32) * (X - 16)


QUADRUPLE_TABLES = {
    1: (1, 255),
    2: (1, 45, 4050),
    3: (1, 45, 1650, 63840),
    4: (1, 45, 1890, 55440, 991200),
    5: (1, 45, 2370, 78960, 1777440, 14918400),
    6: (1, 45, 3330, 126000, 3564960, 54432000, 210309120),
    7: (1, 45, 5250, 220080, 8000160, 172166400, 1554739200, 2559836160),
    8: (
        1,
        45,
        9090,
        408240,
        20311200,
        562464000,
        8599449600,
        38397542400,
        21139292160,
    ),
}


def gamma_table_small_k(i: int, k: int) -> int:
    """Golden rank counts of the quadruple family for k = 1..8.

    These are exhaustively enumerated values; they take precedence over the
    closed forms below their validity thresholds.
    """
    _need(k in QUADRUPLE_TABLES, f"gamma_table_small_k(k={k})", "k in 1..8")
    table = QUADRUPLE_TABLES[k]
    _need(
        0 <= i < len(table),
        f"gamma_table_small_k(i={i}, k={k})",
        f"0 <= i <= {len(table) - 1}",
    )
    return table[i]


def quadruple_distribution(k: int) -> list[int]:
    """Full rank distribution of the quadruple family for any k >= 1.

    Tables for k <= 8, closed forms beyond; the two agree on every rank
    where both apply.
    """
    _need(k >= 1, f"quadruple_distribution(k={k})", "k >= 1")
    if k in QUADRUPLE_TABLES:
        return list(QUADRUPLE_TABLES[k])
    return [gamma_quadruple(i, k) for i in range(9)]


# ---------------------------------------------------------------------------
# fixed k = 7 and k = 8: every rank as a polynomial in 2^n
# ---------------------------------------------------------------------------

# coefficient lists, ascending powers of x = 2^n
_K7_POLYS = {
    0: [1],
    1: [-3, 3],
    2: [-238, 231, 7],
    3: [1616, -2394, 763, 15],
    4: [5024, -4080, -2610, 1635, 31],
    5: [-55552, 74592, -9520, -11970, 2387, 63],
    6: [114688, -166656, 35168, 24240, -7378, -189, 127],
    7: [-65536, 98304, -23808, -13920, 4960, 126, -127, 0, 1],
}

_K8_POLYS = {
    0: [1],
    1: [-3, 3],
    2: [-494, 487, 7],
    3: [3408, -5082, 1659, 15],
    4: [50592, -67952, 13454, 3875, 31],
    5: [-659712, 1092192, -468720, 28830, 7347, 63],
    6: [2637824, -4804352, 2548448, -339760, -52514, 10227, 127],
    7: [-4128768, 7913472, -4617984, 758880, 105648, -31122, -381, 255],
    8: [2097152, -4128768, 2523136, -451840, -60512, 20832, 254, -255, 0, 1],
}


def gamma_k7_k8(i: int, n: int, k: int) -> int:
    """Rank-i count of the n-block family at k = 7 or k = 8, for any n >= 1."""
    _need(k in (7, 8), f"gamma_k7_k8(k={k})", "k in {7, 8}")
    _need(n >= 1, f"gamma_k7_k8(n={n})", "n >= 1")
    _need(
        0 <= i <= min(2 * n, k),
        f"gamma_k7_k8(i={i}, n={n}, k={k})",
        f"0 <= i <= {min(2 * n, k)}",
    )
    coeffs = (_K7_POLYS if k == 7 else _K8_POLYS)[i]
    x = 2**n
    return sum(c * x**p for p, c in enumerate(coeffs))


# ---------------------------------------------------------------------------
# mixed family (shape 2,2,2,2,1): closed lines and the structural recurrence
# ---------------------------------------------------------------------------

MIXED_SHAPE = Shape((2, 2, 2, 2, 1))


def gamma_mixed_9xk(i: int, k: int) -> int:
    """Rank-i count of the mixed 9 x k family, valid for k >= 4."""
    _need(0 <= i <= 9, f"gamma_mixed_9xk(i={i})", "0 <= i <= 9")
    _need(k >= 4, f"gamma_mixed_9xk(k={k})", "k >= 4")
    X = 2**k
    if i == 0:
        return 1
    if i == 1:
        return X + 89
    if i == 2:
        return 165 * X + 5550
    if i == 3:
        return 30 * X**2 + 13050 * X + 249720
    if i == 4:
        return 3710 * X**2 + 698880 * X + 4170880
    if i == 5:
        return 140 * X**3 + 241780 * X**2 + 19757920 * X - 378595840
    if i == 6:
        return 13980 * X**3 + 8331120 * X**2 - 424945920 * X + 4609105920
    if i == 7:
        return (
            120 * X**4
            + 591960 * X**3
            - 67374720 * X**2
            + 2165821440 * X
            - 75675 * 2**18
        )
    if i == 8:
        return (
            7816 * X**4
            - 1875840 * X**3
            + 140062720 * X**2
            - 3841720320 * X
            + 977 * 2**25
        )
    return (
        16 * X**5
        - 7936 * X**4
        + 1269760 * X**3
        - 81264640 * X**2
        + 2080374784 * X
        - 2**34
    )


def _quadruple_value(i: int, k: int) -> int:
    """Quadruple count with out-of-range ranks mapped to zero."""
    if i < 0 or i > min(8, k):
        return 0
    dist = quadruple_distribution(k)
    return dist[i]


def mixed_recurrence(i: int, k: int) -> int:
    """Mixed-family rank count derived from the quadruple family.

    Appending one height-1 block to the quadruple family gives
    count(i) = 2^i * quad(i) + (2^k - 2^(i-1)) * quad(i-1), where the second
    term vanishes for i = 0.  Exact for every k >= 1 (quadruple inputs come
    from tables for k <= 8 and closed forms beyond).
    """
    _need(0 <= i <= 9, f"mixed_recurrence(i={i})", "0 <= i <= 9")
    _need(k >= 1, f"mixed_recurrence(k={k})", "k >= 1")
    value = 2**i * _quadruple_value(i, k)
    if i > 0:
        value += (2**k - 2 ** (i - 1)) * _quadruple_value(i - 1, k)
    return value


# ---------------------------------------------------------------------------
# distribution resolver and moment identities
# ---------------------------------------------------------------------------


def gamma_distribution(n: int, k: int) -> list[int]:
    """Best exact rank distribution of the n-block family without sweeping.

    Sources, in precedence order per rank: golden tables (n = 4, k <= 8),
    the k = 7/8 polynomials, the quadruple lines (n = 4), the general rank
    0..5 lines, and the small-n rank-4/rank-5 lines.  Raises DomainError
    naming the ranks for which no exact source exists.
    """
    _need(n >= 1, f"gamma_distribution(n={n})", "n >= 1")
    _need(k >= 1, f"gamma_distribution(k={k})", "k >= 1")
    if n == 4:
        dist = quadruple_distribution(k)
        return dist[: min(2 * n, k) + 1]
    i_max = min(2 * n, k)
    if k in (7, 8):
        return [gamma_k7_k8(i, n, k) for i in range(i_max + 1)]
    values: list[Optional[int]] = []
    for i in range(i_max + 1):
        if i <= 5 and k >= GENERAL_MIN_K[i]:
            values.append(gamma_general(i, n, k))
        elif i == 4 and n in _RANK4_SMALL_N_MIN_K and k >= _RANK4_SMALL_N_MIN_K[n]:
            values.append(gamma_rank4_small_n(n, k))
        elif i == 5 and n in _RANK5_SMALL_N_MIN_K and k >= _RANK5_SMALL_N_MIN_K[n]:
            values.append(gamma_rank5_small_n(n, k))
        else:
            values.append(None)
    missing = [i for i, v in enumerate(values) if v is None]
    if missing:
        raise DomainError(
            f"no exact closed form for ranks {missing} of the {n}-block "
            f"family at k={k}; enumerate instead"
        )
    return [v for v in values if v is not None]


def moment_rhs(n: int, k: int, q: int) -> Fraction:
    """Closed form for sum_i count(i) * 2^(-q*i) over the n-block family."""
    _need(n >= 1, f"moment_rhs(n={n})", "n >= 1")
    _need(k >= 1, f"moment_rhs(k={k})", "k >= 1")
    _need(q in (0, 1, 2), f"moment_rhs(q={q})", "q in {0, 1, 2}")
    two = Fraction(2)
    if q == 0:
        return two ** ((k + 1) * n)
    if q == 1:
        return two ** (n + k * (n - 1)) + two ** ((k - 1) * n) - two ** ((k - 1) * n - k)
    return (
        two ** (n + k * (n - 2))
        + two ** (-n + k * (n - 2)) * (3 * two**k - 3)
        + two ** (-2 * n + k * (n - 2)) * (6 * two ** (k - 1) - 6)
        + two ** (-3 * n + k * n)
        - 6 * two ** (n * (k - 3) - k)
        + 8 * two ** (-3 * n + k * (n - 2))
    )


GammaSource = Union[RankHistogram, Sequence[int], None]


def moment_identities(
    n: int, k: int, gammas: GammaSource = None
) -> list[tuple[int, int]]:
    """Check data for the three moment identities of the n-block family.

    For q = 0, 1, 2 the weighted sum sum_i count(i) * 2^(-q*i) has a closed
    form.  Both sides are returned scaled by 2^(q * i_max), which makes them
    exact integers; callers compare the pairs.

    Args:
        n: number of height-2 blocks.
        k: number of columns.
        gammas: rank distribution to use on the left side.  None resolves
            closed forms/tables via gamma_distribution; a RankHistogram must
            belong to the uniform n-block shape with matching k; otherwise
            any integer sequence of length i_max + 1 is accepted.

    Returns:
        [(lhs_0, rhs_0), (lhs_1, rhs_1), (lhs_2, rhs_2)].
    """
    i_max = min(2 * n, k)
    if gammas is None:
        counts: Sequence[int] = gamma_distribution(n, k)
    elif isinstance(gammas, RankHistogram):
        if gammas.shape != Shape.uniform(n) or gammas.k != k:
            raise ValueError(
                f"histogram is for shape {gammas.shape}, k={gammas.k}; "
                f"wanted the uniform {n}-block shape with k={k}"
            )
        counts = gammas.counts
    else:
        counts = list(gammas)
    if len(counts) != i_max + 1:
        missing = list(range(len(counts), i_max + 1))
        raise DomainError(
            f"rank distribution must cover ranks 0..{i_max}; missing {missing}"
            if missing
            else f"rank distribution has {len(counts)} entries, wanted {i_max + 1}"
        )
    pairs = []
    for q in (0, 1, 2):
        lhs = sum(c << (q * (i_max - i)) for i, c in enumerate(counts))
        rhs = _exact_int(
            moment_rhs(n, k, q) * Fraction(2) ** (q * i_max),
            f"moment_rhs(n={n}, k={k}, q={q}) * 2^{q * i_max}",
        )
        pairs.append((lhs, rhs))
    return pairs


def applicable_forms(shape: Shape, k: int, i: int) -> list[tuple[str, int]]:
    """Every in-domain closed-form value for rank i of the given family.

    Returns (formula_id, value) pairs; an empty list means no closed form
    covers this rank.  Used to cross-check enumerated histograms against
    all formulas at once.
    """
    out: list[tuple[str, int]] = []
    if all(h == 2 for h in shape.blocks):
        n = shape.n
        if i <= 5 and k >= GENERAL_MIN_K[i]:
            out.append(("general-rank", gamma_general(i, n, k)))
        if n == 4:
            if i <= 8 and k >= QUADRUPLE_MIN_K[i]:
                out.append(("quadruple", gamma_quadruple(i, k)))
            if k in QUADRUPLE_TABLES and i < len(QUADRUPLE_TABLES[k]):
                out.append(("quadruple-table", gamma_table_small_k(i, k)))
        if k in (7, 8) and i <= min(2 * n, k):
            out.append(("k7k8", gamma_k7_k8(i, n, k)))
        if i == 4:
            if n in _RANK4_SMALL_N_MIN_K and k >= _RANK4_SMALL_N_MIN_K[n]:
                out.append(("rank4-small-n", gamma_rank4_small_n(n, k)))
            if k in (5, 6):
                out.append(("rank4-k5-k6", gamma_rank4_k5_k6(n, k)))
        if i == 5:
            if n in _RANK5_SMALL_N_MIN_K and k >= _RANK5_SMALL_N_MIN_K[n]:
                out.append(("rank5-small-n", gamma_rank5_small_n(n, k)))
            if k == 6:
                out.append(("rank5-k6", gamma_rank5_k6(n)))
    if shape == MIXED_SHAPE and i <= 9:
        if k >= 4:
            out.append(("mixed9", gamma_mixed_9xk(i, k)))
        out.append(("mixed-recurrence", mixed_recurrence(i, k)))
    return out


# ---------------------------------------------------------------------------
# formula registry
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormulaInfo:
    """Registry entry: identifier, validity domain, and content anchor."""

    formula_id: str
    domain: str
    anchor: str


FORMULAS: tuple[FormulaInfo, ...] = (
    FormulaInfo(
        "general-rank",
        "n-block family; ranks 0..5; rank i needs k >= i+1",
        "rank counts as polynomials in 2^n with coefficients rational in 2^k",
    ),
    FormulaInfo(
        "rank4-small-n",
        "n in {1, 2, 3}; k >= n",
        "rank-4 counts as quadratics in 2^k for up to three blocks",
    ),
    FormulaInfo(
        "rank4-k5-k6",
        "k in {5, 6}; any n >= 1",
        "rank-4 counts as quartics in 2^n at fixed k",
    ),
    FormulaInfo(
        "rank5-small-n",
        "n in {1, 2, 3, 4}; k >= 3 for n=3, k >= 4 for n=4",
        "rank-5 counts as quadratics in 2^k for up to four blocks",
    ),
    FormulaInfo(
        "rank5-k6",
        "k = 6; any n >= 1",
        "rank-5 count as a quintic in 2^n at fixed k",
    ),
    FormulaInfo(
        "quadruple",
        "quadruple (8 x k) family; rank i from k >= 4, rank 4 from k >= 5, "
        "rank 8 from k >= 8",
        "one polynomial in 2^k per rank, full rank as a surjection product",
    ),
    FormulaInfo(
        "quadruple-table",
        "quadruple family; k in 1..8",
        "exhaustively enumerated golden histograms",
    ),
    FormulaInfo(
        "k7k8",
        "k in {7, 8}; any n >= 1; ranks 0..min(2n, k)",
        "rank counts as polynomials in 2^n at fixed k",
    ),
    FormulaInfo(
        "mixed9",
        "mixed (9 x k) family, shape 2,2,2,2,1; k >= 4; ranks 0..9",
        "one polynomial in 2^k per rank",
    ),
    FormulaInfo(
        "mixed-recurrence",
        "mixed family; any k >= 1; ranks 0..9",
        "mixed counts from quadruple counts via one block extension",
    ),
    FormulaInfo(
        "moments",
        "n-block family; q in {0, 1, 2}",
        "closed forms for sum_i count(i) * 2^(-q*i)",
    ),
    FormulaInfo(
        "solution-count-histogram",
        "n-block family; any q >= 1; needs the rank distribution",
        "zero-evaluation count as a rank-weighted power sum",
    ),
    FormulaInfo(
        "solution-count-q4-closed",
        "q = 4, quadruple family; k >= 3",
        "quartic polynomial in 2^k for the q = 4 zero-evaluation count",
    ),
    FormulaInfo(
        "landsberg-product",
        "0 <= l <= min(m, q)",
        "number of m x q matrices of rank l over F2 as an exact product",
    ),
    FormulaInfo(
        "solution-count-q1",
        "q = 1, quadruple family at k = 1",
        "cross-check of the sweep, the weighted sum, and the matrix count",
    ),
)


def formula_catalog() -> tuple[FormulaInfo, ...]:
    """All registered formulas with identifier, domain, and anchor."""
    return FORMULAS
