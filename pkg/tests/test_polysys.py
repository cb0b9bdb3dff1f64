"""Solution counting: carry-less products, brute force, and formula routes."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from persymrank import (
    BudgetError,
    PolySystemInstance,
    QUADRUPLE_TABLES,
    Shape,
    clmul,
    enumerate_histogram,
    landsberg_count,
    quadruple_distribution,
    r_bruteforce,
    r_formula,
    r_q41_identity,
    r_q4_k_closed,
    rank_of_rows,
)
from persymrank.forms import DomainError


# ---------------------------------------------------------------------------
# carry-less multiplication
# ---------------------------------------------------------------------------


def test_clmul_examples():
    assert clmul(0b1, 0b1101) == 0b1101
    assert clmul(0b11, 0b11) == 0b101  # (1+T)^2 = 1+T^2 over F2
    assert clmul(0, 12345) == 0
    assert clmul(0b101, 0b10) == 0b1010


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1))
def test_clmul_commutes(a, b):
    assert clmul(a, b) == clmul(b, a)


@settings(max_examples=200, deadline=None)
@given(
    st.integers(0, 2**12 - 1), st.integers(0, 2**12 - 1), st.integers(0, 2**12 - 1)
)
def test_clmul_distributes_over_xor(a, b, c):
    assert clmul(a ^ b, c) == clmul(a, c) ^ clmul(b, c)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 20), st.integers(0, 20))
def test_clmul_monomials(i, j):
    assert clmul(1 << i, 1 << j) == 1 << (i + j)


# ---------------------------------------------------------------------------
# instances
# ---------------------------------------------------------------------------


def test_instance_roundtrip_exhaustive():
    q, n, k = 2, 1, 2
    for index in range(1 << (q * (k + 2 * n))):
        inst = PolySystemInstance.from_index(q, n, k, index)
        assert inst.to_index() == index


def test_instance_residuals():
    # one column, two equations: residual j is U_j * Y
    inst = PolySystemInstance(1, 2, 3, (0b101,), ((0b11,), (0b00,)))
    assert inst.residuals() == (clmul(0b101, 0b11), 0)
    assert not inst.is_solution()
    zero = PolySystemInstance(1, 2, 3, (0,), ((0b11,), (0b01,)))
    assert zero.is_solution()


def test_instance_validation():
    with pytest.raises(ValueError):
        PolySystemInstance(1, 1, 2, (0b100,), ((0b01,),))  # Y too wide
    with pytest.raises(ValueError):
        PolySystemInstance(1, 1, 2, (0b01,), ((4,),))  # U too wide
    with pytest.raises(ValueError):
        PolySystemInstance(2, 1, 2, (0b01,), ((0b01, 0b01),))  # wrong Y arity
    with pytest.raises(ValueError):
        PolySystemInstance.from_index(1, 1, 1, 1 << 5)


def test_bruteforce_matches_instance_sweep():
    # independent pure-Python recount of every instance
    q, n, k = 1, 2, 2
    total_bits = q * (k + 2 * n)
    expected = sum(
        PolySystemInstance.from_index(q, n, k, index).is_solution()
        for index in range(1 << total_bits)
    )
    assert r_bruteforce(q, n, k) == expected


# ---------------------------------------------------------------------------
# count identities
# ---------------------------------------------------------------------------


def test_bruteforce_examples():
    assert r_bruteforce(1, 1, 1) == 5
    for k in range(1, 5):
        assert r_bruteforce(1, 4, k) == 2**8 + 2**k - 1, k


def test_bruteforce_budget():
    with pytest.raises(BudgetError) as excinfo:
        r_bruteforce(9, 4, 8)
    assert excinfo.value.required_bits == 9 * 16


def test_bruteforce_parallel_agrees():
    assert r_bruteforce(2, 2, 2, parallelism=3) == r_bruteforce(2, 2, 2)


def test_formula_matches_bruteforce():
    for q, n, k in ((1, 1, 2), (1, 2, 3), (2, 1, 3), (2, 2, 2), (3, 1, 2)):
        hist = enumerate_histogram(Shape.uniform(n), k)
        assert r_formula(q, n, k, hist) == r_bruteforce(q, n, k), (q, n, k)


def test_formula_q1_closed_value():
    for n in (1, 2, 3):
        for k in range(1, 6):
            hist = enumerate_histogram(Shape.uniform(n), k)
            assert r_formula(1, n, k, hist) == 2 ** (2 * n) + 2**k - 1, (n, k)


def test_formula_pinned_values():
    assert r_formula(4, 4, 1, [1, 255]) == 4546625536
    assert r_formula(4, 4, 2, QUADRUPLE_TABLES[2]) == 5270142976


def test_formula_validation():
    hist = enumerate_histogram(Shape.uniform(2), 3)
    with pytest.raises(ValueError):
        r_formula(1, 2, 4, hist)  # k mismatch
    with pytest.raises(ValueError):
        r_formula(1, 3, 3, hist)  # shape mismatch
    with pytest.raises(ValueError):
        r_formula(1, 2, 3, [1, 9, 198])  # wrong length
    with pytest.raises(ValueError):
        r_formula(0, 1, 1, [1, 3])


def test_q4_closed_form():
    for k in range(3, 9):
        assert r_q4_k_closed(k) == r_formula(4, 4, k, QUADRUPLE_TABLES[k]), k
    for k in (9, 10, 12):
        assert r_q4_k_closed(k) == r_formula(4, 4, k, quadruple_distribution(k)), k
    with pytest.raises(DomainError):
        r_q4_k_closed(2)


# ---------------------------------------------------------------------------
# unstructured-matrix counts
# ---------------------------------------------------------------------------


def test_landsberg_small_cases_by_direct_count():
    for m, q in ((2, 2), (3, 2), (2, 3), (3, 3)):
        seen = [0] * (min(m, q) + 1)
        for bits in range(1 << (m * q)):
            rows = [(bits >> (r * q)) & ((1 << q) - 1) for r in range(m)]
            seen[rank_of_rows(rows, q)] += 1
        for l, count in enumerate(seen):
            assert landsberg_count(m, q, l) == count, (m, q, l)


def test_landsberg_identities():
    assert landsberg_count(8, 1, 1) == 255
    for q in range(1, 11):
        assert landsberg_count(8, q, 1) == (2**8 - 1) * (2**q - 1)
        total = sum(landsberg_count(8, q, l) for l in range(min(8, q) + 1))
        assert total == 1 << (8 * q)
    with pytest.raises(DomainError):
        landsberg_count(8, 2, 3)
    with pytest.raises(DomainError):
        landsberg_count(8, 2, -1)


def test_r_q41_routes_agree():
    for q in range(1, 9):
        via_matrices, closed, via_histogram = r_q41_identity(q)
        assert via_matrices == closed == via_histogram, q
    assert r_q41_identity(1) == (257, 257, 257)
