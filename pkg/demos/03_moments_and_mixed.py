"""Moment identities and the mixed 9 x k family with its recurrence.

Run:  python3 demos/03_moments_and_mixed.py
"""

from persymrank import (
    MIXED_SHAPE,
    Shape,
    enumerate_histogram,
    gamma_mixed_9xk,
    mixed_recurrence,
    moment_identities,
)


def main():
    print("== Moment identities: three exact equalities per histogram ==")
    print("  sum_i count(i) * 2^(-q*i) has a closed form for q = 0, 1, 2;")
    print("  both sides are scaled by 2^(q*i_max) so everything is an integer.")
    for n, k in ((2, 3), (3, 4), (4, 4)):
        hist = enumerate_histogram(Shape.uniform(n), k)
        print(f"  n={n}, k={k}:")
        for q, (lhs, rhs) in enumerate(moment_identities(n, k, hist)):
            print(f"    q={q}: {lhs} == {rhs}  {'ok' if lhs == rhs else 'MISMATCH'}")
    print()

    print("== Formula-level moments: no sweep needed ==")
    for k in (10, 15, 20):
        pairs = moment_identities(4, k)
        status = all(l == r for l, r in pairs)
        print(f"  quadruple family k={k}: all three identities hold: {status}")
    print()

    print("== The mixed family: shape 2,2,2,2,1 (9 x k) ==")
    hist = enumerate_histogram(MIXED_SHAPE, 4)
    print(f"  swept 2^{MIXED_SHAPE.total_bits(4)} sequences at k=4:")
    for i, count in enumerate(hist.counts):
        line = gamma_mixed_9xk(i, 4)
        print(f"    rank {i}: sweep {count:>9}  closed line {line:>9}")
    print()

    print("== One-block extension recurrence ==")
    print("  mixed(i) = 2^i * quad(i) + (2^k - 2^(i-1)) * quad(i-1)")
    print("  closed lines need k >= 4; the recurrence is exact for every k:")
    for k in (2, 3, 4, 8, 12):
        row = [mixed_recurrence(i, k) for i in range(min(9, k) + 1)]
        print(f"    k={k}: {row}")
    agree = all(
        mixed_recurrence(i, k) == gamma_mixed_9xk(i, k)
        for k in range(4, 13)
        for i in range(10)
    )
    print(f"  recurrence == closed lines for k=4..12, all ranks: {agree}")


if __name__ == "__main__":
    main()
