"""Tour of the enumeration engine: families, sweeps, chunking, budgets.

Run:  python3 demos/01_rank_histograms.py
"""

from persymrank import (
    BudgetError,
    CoeffSeq,
    Shape,
    build_persym,
    enumerate_histogram,
    merge_histograms,
    partition_sweep,
    rank,
)


def show_matrix(m):
    for r in range(m.n_rows):
        print("    " + " ".join(str(m.entry(r, c)) for c in range(m.n_cols)))


def main():
    print("== A stacked persymmetric family ==")
    shape = Shape.parse("2,2")
    k = 4
    print(f"shape {shape}: {shape.n} blocks, {shape.total_rows} rows, k={k} columns")
    print(f"coefficient bits per block: {shape.seq_bits(k)} -> B={shape.total_bits(k)}")
    print()

    print("Each block reads sliding k-bit windows of its coefficient mask;")
    print("every antidiagonal is constant. Index 0b1011_00110:")
    seq = CoeffSeq.from_index(shape, k, 0b10110_01101)
    m = build_persym(seq, shape)
    show_matrix(m)
    print(f"  rank over F2: {rank(m)}")
    print()

    print(f"== Exhaustive sweep over all 2^{shape.total_bits(k)} sequences ==")
    hist = enumerate_histogram(shape, k)
    for i, count in enumerate(hist.counts):
        print(f"  rank {i}: {count}")
    print(f"  total {hist.total()} = 2^{shape.total_bits(k)}")
    print()

    print("== The same histogram from 6 independent chunks ==")
    parts = [partition_sweep(shape, k, c, 6) for c in range(6)]
    for c, part in enumerate(parts):
        print(f"  chunk {c}: {part.total():>5} sequences, counts {list(part.counts)}")
    merged = merge_histograms(parts)
    print(f"  merged == full sweep: {merged.counts == hist.counts}")
    print()

    print("== Worker threads change nothing but wall time ==")
    for workers in (1, 2, 4):
        h = enumerate_histogram(shape, k, parallelism=workers)
        print(f"  {workers} worker(s): {list(h.counts)}")
    print()

    print("== Progress reporting ==")
    big = Shape.uniform(4)
    enumerate_histogram(
        big,
        3,
        progress_sink=lambda done, total: print(f"  swept {done}/{total}"),
        parallelism=2,
    )
    print()

    print("== Budget guard ==")
    try:
        enumerate_histogram(Shape.uniform(4), 12)
    except BudgetError as exc:
        print(f"  refused: {exc}")


if __name__ == "__main__":
    main()
