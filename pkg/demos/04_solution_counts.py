"""Counting solutions of the bilinear systems three independent ways.

Run:  python3 demos/04_solution_counts.py
"""

from persymrank import (
    PolySystemInstance,
    QUADRUPLE_TABLES,
    Shape,
    clmul,
    enumerate_histogram,
    landsberg_count,
    r_bruteforce,
    r_formula,
    r_q41_identity,
    r_q4_k_closed,
)


def main():
    print("== The system: q columns, n equations over F2[T] ==")
    print("  equation j:  sum_i U_j^(i) * Y_i = 0,  deg Y < k, deg U <= 1")
    inst = PolySystemInstance(2, 2, 3, (0b101, 0b011), ((0b01, 0b10), (0b11, 0b00)))
    print(f"  Y = {[bin(y) for y in inst.Y]}, U = {inst.U}")
    print(f"  residuals: {[bin(r) for r in inst.residuals()]}")
    print(f"  products use carry-less multiplication: (1+T)*(1+T) -> {bin(clmul(3, 3))}")
    print()

    print("== Brute force vs the rank-weighted formula ==")
    for q, n, k in ((1, 2, 3), (2, 2, 2), (3, 1, 3)):
        hist = enumerate_histogram(Shape.uniform(n), k)
        brute = r_bruteforce(q, n, k)
        formula = r_formula(q, n, k, hist)
        print(f"  q={q} n={n} k={k}: brute {brute}, formula {formula}, "
              f"{'agree' if brute == formula else 'MISMATCH'}")
    print()

    print("== q=1 collapses to a two-term closed form ==")
    for n, k in ((2, 4), (3, 5), (4, 6)):
        hist = enumerate_histogram(Shape.uniform(n), k)
        print(f"  n={n} k={k}: {r_formula(1, n, k, hist)} == 2^{2*n} + 2^{k} - 1")
    print()

    print("== The quadruple family at q=4 ==")
    print(f"  k=1: {r_formula(4, 4, 1, [1, 255])}")
    print(f"  k=2: {r_formula(4, 4, 2, QUADRUPLE_TABLES[2])}")
    print("  one quartic polynomial in 2^k covers k >= 3:")
    for k in (3, 5, 8):
        closed = r_q4_k_closed(k)
        via_table = r_formula(4, 4, k, QUADRUPLE_TABLES[k])
        print(f"    k={k}: {closed}  (table route agrees: {closed == via_table})")
    print()

    print("== Unstructured-matrix cross-check ==")
    print("  rank counts of all 8 x q matrices over F2 (classical product):")
    q = 3
    for l in range(min(8, q) + 1):
        print(f"    rank {l}: {landsberg_count(8, q, l)}")
    total = sum(landsberg_count(8, q, l) for l in range(min(8, q) + 1))
    print(f"    sum = {total} = 2^{8*q}: {total == 1 << (8*q)}")
    print()
    print("  three routes to the k=1 solution count:")
    for q in (1, 2, 5, 8):
        a, b, c = r_q41_identity(q)
        print(f"    q={q}: matrix {a}, closed {b}, histogram {c} "
              f"-> {'agree' if a == b == c else 'MISMATCH'}")


if __name__ == "__main__":
    main()
