"""Tour of the closed forms: exact evaluation, domains, cross-checks.

Run:  python3 demos/02_closed_forms.py
"""

from persymrank import (
    DomainError,
    QUADRUPLE_TABLES,
    Shape,
    enumerate_histogram,
    formula_catalog,
    gamma_distribution,
    gamma_general,
    gamma_k7_k8,
    gamma_quadruple,
    gamma_table_small_k,
)


def main():
    print("== Closed forms vs a live sweep (3-block family, k=5) ==")
    hist = enumerate_histogram(Shape.uniform(3), 5)
    resolved = gamma_distribution(3, 5)  # general lines + small-n rank-5 quadratic
    for i, count in enumerate(hist.counts):
        marker = "ok" if resolved[i] == count else "MISMATCH"
        print(f"  rank {i}: sweep {count:>7}  formula {resolved[i]:>7}  {marker}")
    print(f"  (ranks 0..4 from the general lines, e.g. rank 2 = "
          f"{gamma_general(2, 3, 5)}; rank 5 from the small-n quadratic)")
    print()

    print("== The quadruple (8 x k) family: lines above, tables below ==")
    print("  k : rank counts")
    for k in range(1, 9):
        print(f"  {k} : {list(QUADRUPLE_TABLES[k])}")
    print("  closed lines take over beyond the tables, e.g. k=12:")
    print(f"    {gamma_distribution(4, 12)}")
    print()

    print("== Exact big-int evaluation ==")
    print(f"  full-rank count at k=40: {gamma_quadruple(8, 40)}")
    print(f"  (that is 16*(2^40-128)*(2^40-64)*(2^40-32)*(2^40-16), no rounding)")
    print()

    print("== Fixed k=7/k=8: one polynomial in 2^n per rank, any n ==")
    for n in (3, 5, 9):
        row = [gamma_k7_k8(i, n, 7) for i in range(min(2 * n, 7) + 1)]
        print(f"  n={n}, k=7: {row}")
    print(f"  n=4 columns equal the tables: "
          f"{[gamma_k7_k8(i, 4, 8) for i in range(9)] == list(QUADRUPLE_TABLES[8])}")
    print()

    print("== Domains are enforced, never extrapolated ==")
    for call in (
        lambda: gamma_general(2, 1, 2),
        lambda: gamma_quadruple(4, 4),
        lambda: gamma_table_small_k(0, 9),
    ):
        try:
            call()
        except DomainError as exc:
            print(f"  refused: {exc}")
    print("  below its threshold the rank-4 line defers to the table:")
    print(f"    table value at k=4: {gamma_table_small_k(4, 4)}")
    print()

    print("== Formula catalog ==")
    for info in formula_catalog():
        print(f"  {info.formula_id:<26} {info.domain}")


if __name__ == "__main__":
    main()
