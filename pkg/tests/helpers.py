"""Shared test utilities: independent oracles and a CLI runner."""

from __future__ import annotations

import contextlib
import io
import json
from collections import Counter

from persymrank import BitMatrix, CoeffSeq, Shape, build_persym, rank
from persymrank.cli import main


def naive_rank(rows_bits, n_cols):
    """Textbook Gauss-Jordan on dense 0/1 lists; independent of the bit kernel."""
    a = [[(r >> j) & 1 for j in range(n_cols)] for r in rows_bits]
    n_rows = len(a)
    lead = 0
    for col in range(n_cols):
        piv = next((r for r in range(lead, n_rows) if a[r][col] == 1), None)
        if piv is None:
            continue
        a[lead], a[piv] = a[piv], a[lead]
        for r in range(n_rows):
            if r != lead and a[r][col] == 1:
                a[r] = [(x + y) % 2 for x, y in zip(a[r], a[lead])]
        lead += 1
    return lead


def transpose(m: BitMatrix) -> BitMatrix:
    cols = tuple(
        sum(((m.rows[i] >> j) & 1) << i for i in range(m.n_rows))
        for j in range(m.n_cols)
    )
    return BitMatrix(cols, m.n_rows)


def reference_histogram(shape: Shape, k: int) -> list[int]:
    """Rank histogram by materializing every matrix; only for tiny families."""
    total_bits = shape.total_bits(k)
    counter: Counter[int] = Counter()
    for index in range(1 << total_bits):
        seq = CoeffSeq.from_index(shape, k, index)
        counter[rank(build_persym(seq, shape))] += 1
    return [counter.get(i, 0) for i in range(shape.max_rank(k) + 1)]


def run_cli(argv):
    """Invoke the CLI in-process; returns (exit_code, stdout, stderr)."""
    out = io.StringIO()
    err = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def run_cli_json(argv):
    """Run the CLI and parse its JSON report; asserts a zero exit."""
    code, out, err = run_cli(argv)
    assert code == 0, f"exit {code}: {err}"
    return json.loads(out)
