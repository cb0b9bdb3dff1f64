"""Command-line front end: sweeps, formula evaluation, verification suites.

Reports are JSON objects {schema, command, params, payload, source,
elapsed_ms} printed to stdout.  Every count in a payload is a decimal
string, so arbitrarily large values survive any JSON reader.  Exit codes:
0 success, 2 budget refusal, 3 bad arguments, 4 formula domain violation,
5 a verification check failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from dataclasses import asdict
from pathlib import Path
from typing import Optional, Sequence

from . import forms, polysys
from .forms import DomainError
from .persym import (
    BudgetError,
    HistogramSource,
    RankHistogram,
    Shape,
    enumerate_histogram,
    merge_histograms,
    partition_sweep,
)

SCHEMA_VERSION = 1
LAYOUT_VERSION = 1
DEFAULT_CHECKPOINT_CHUNKS = 64

EXIT_OK = 0
EXIT_BUDGET = 2
EXIT_BAD_ARGS = 3
EXIT_DOMAIN = 4
EXIT_VERIFY_FAILED = 5

TAG_ENUMERATED = HistogramSource.ENUMERATED.value
TAG_BAKED_TABLE = HistogramSource.BAKED_TABLE.value
TAG_CLOSED_FORM = HistogramSource.CLOSED_FORM.value


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with the bad-arguments code."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_BAD_ARGS, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(
        prog="persymrank",
        description="Exact rank statistics of stacked persymmetric matrices "
        "over F2 and the solution counts they control.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="exhaustive rank histogram")
    p.add_argument("--shape", required=True, help="block heights, e.g. 2,2,2,2,1")
    p.add_argument("--k", required=True, type=int, help="number of columns")
    p.add_argument("--jobs", type=int, default=1, help="worker threads; 0 = all CPUs")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--checkpoint-dir", default=None, help="persist/resume chunk files")
    p.add_argument(
        "--chunks",
        type=int,
        default=DEFAULT_CHECKPOINT_CHUNKS,
        help="chunk count when checkpointing",
    )

    p = sub.add_parser("formula", help="evaluate one closed form")
    p.add_argument(
        "--family",
        choices=("general", "quadruple", "table", "k7k8", "mixed9"),
        help="formula family",
    )
    p.add_argument("--i", type=int, help="rank")
    p.add_argument("--n", type=int, help="block count (general and k7k8 only)")
    p.add_argument("--k", type=int, help="number of columns")
    p.add_argument("--list", action="store_true", help="print the formula catalog")
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "suite",
        choices=("moments", "formula-vs-enum", "recurrence", "r-identities", "landsberg"),
    )
    p.add_argument("--shape", help="block heights (moments, formula-vs-enum)")
    p.add_argument("--k", help="column count or range a..b (recurrence)")
    p.add_argument("--q", help="column-count range a..b (r-identities, landsberg)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json",), default="json")

    p = sub.add_parser("count-solutions", help="count zero tuples of the system")
    p.add_argument("--q", required=True, type=int)
    p.add_argument("--n", required=True, type=int)
    p.add_argument("--k", required=True, type=int)
    p.add_argument("--method", choices=("formula", "brute", "both"), default="formula")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json",), default="json")

    return parser


def _parse_span(text: str, what: str) -> tuple[int, int]:
    """Parse '3' or '1..8' into an inclusive (lo, hi) pair."""
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError:
        raise ValueError(f"{what} must be an integer or a..b range, got {text!r}")
    if lo > hi:
        raise ValueError(f"{what} range is empty: {text!r}")
    return lo, hi


def _status(ok: bool) -> str:
    return "pass" if ok else "fail"


# ---------------------------------------------------------------------------
# enumerate
# ---------------------------------------------------------------------------


def _chunk_path(root: Path, shape: Shape, k: int, index: int, count: int) -> Path:
    tag = str(shape).replace(",", "x")
    return root / f"chunk-{tag}-k{k}-{index:05d}of{count}-v{LAYOUT_VERSION}.json"


def _load_chunk(
    path: Path, shape: Shape, k: int, index: int, count: int
) -> Optional[RankHistogram]:
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return None
    expected = {
        "layout_version": LAYOUT_VERSION,
        "shape": str(shape),
        "k": k,
        "chunk_index": index,
        "chunk_count": count,
    }
    if any(data.get(key) != value for key, value in expected.items()):
        return None
    counts = data.get("counts")
    if not isinstance(counts, list) or len(counts) != shape.max_rank(k) + 1:
        return None
    try:
        values = tuple(int(c) for c in counts)
    except (TypeError, ValueError):
        return None
    if any(v < 0 for v in values):
        return None
    return RankHistogram(shape, k, values, HistogramSource.ENUMERATED)


def _store_chunk(path: Path, hist: RankHistogram, index: int, count: int):
    data = {
        "layout_version": LAYOUT_VERSION,
        "shape": str(hist.shape),
        "k": hist.k,
        "chunk_index": index,
        "chunk_count": count,
        "counts": [str(c) for c in hist.counts],
    }
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data, indent=2, sort_keys=True) + "\n")
    os.replace(tmp, path)


def _checkpointed_enumerate(
    shape: Shape, k: int, jobs: int, root: Path, chunk_count: int
) -> RankHistogram:
    root.mkdir(parents=True, exist_ok=True)
    chunk_count = max(1, min(chunk_count, 1 << shape.total_bits(k)))
    parts: list[Optional[RankHistogram]] = [None] * chunk_count
    missing = []
    for index in range(chunk_count):
        path = _chunk_path(root, shape, k, index, chunk_count)
        parts[index] = _load_chunk(path, shape, k, index, chunk_count)
        if parts[index] is None:
            missing.append(index)

    def compute(index: int) -> RankHistogram:
        hist = partition_sweep(shape, k, index, chunk_count)
        _store_chunk(_chunk_path(root, shape, k, index, chunk_count), hist, index, chunk_count)
        return hist

    if jobs == 0:
        jobs = os.cpu_count() or 1
    if jobs > 1 and len(missing) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = {pool.submit(compute, index): index for index in missing}
            for future in as_completed(futures):
                parts[futures[future]] = future.result()
    else:
        for index in missing:
            parts[index] = compute(index)
    return merge_histograms([p for p in parts if p is not None])


def _cmd_enumerate(args) -> tuple[dict, dict, list[str], int]:
    shape = Shape.parse(args.shape)
    if args.chunks < 1:
        raise ValueError(f"--chunks must be >= 1, got {args.chunks}")
    if args.jobs < 0:
        raise ValueError(f"--jobs must be >= 0, got {args.jobs}")
    if args.checkpoint_dir is not None:
        hist = _checkpointed_enumerate(
            shape, args.k, args.jobs, Path(args.checkpoint_dir), args.chunks
        )
    else:
        hist = enumerate_histogram(shape, args.k, parallelism=args.jobs)
    params = {"shape": str(shape), "k": args.k, "jobs": args.jobs}
    if args.checkpoint_dir is not None:
        params["checkpoint_dir"] = str(args.checkpoint_dir)
        params["chunks"] = args.chunks
    payload = {
        "counts": [str(c) for c in hist.counts],
        "total": str(hist.total()),
        "max_rank": hist.max_rank,
    }
    return params, payload, [TAG_ENUMERATED], EXIT_OK


# ---------------------------------------------------------------------------
# formula
# ---------------------------------------------------------------------------


def _cmd_formula(args) -> tuple[dict, dict, list[str], int]:
    if args.list:
        payload = {"formulas": [asdict(info) for info in forms.formula_catalog()]}
        return {"list": True}, payload, [TAG_CLOSED_FORM], EXIT_OK
    if args.family is None:
        raise ValueError("--family is required unless --list is given")
    if args.i is None or args.k is None:
        raise ValueError("--i and --k are required")
    needs_n = args.family in ("general", "k7k8")
    if needs_n and args.n is None:
        raise ValueError(f"--n is required for family {args.family}")
    if not needs_n and args.n is not None:
        raise ValueError(f"--n is not used by family {args.family}")
    if args.family == "general":
        value = forms.gamma_general(args.i, args.n, args.k)
        tag = TAG_CLOSED_FORM
    elif args.family == "quadruple":
        value = forms.gamma_quadruple(args.i, args.k)
        tag = TAG_CLOSED_FORM
    elif args.family == "table":
        value = forms.gamma_table_small_k(args.i, args.k)
        tag = TAG_BAKED_TABLE
    elif args.family == "k7k8":
        value = forms.gamma_k7_k8(args.i, args.n, args.k)
        tag = TAG_CLOSED_FORM
    else:
        value = forms.gamma_mixed_9xk(args.i, args.k)
        tag = TAG_CLOSED_FORM
    params = {"family": args.family, "i": args.i, "k": args.k}
    if needs_n:
        params["n"] = args.n
    return params, {"value": str(value)}, [tag], EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _verify_moments(args) -> tuple[dict, dict, list[str], int]:
    if args.shape is None or args.k is None:
        raise ValueError("verify moments needs --shape and --k")
    shape = Shape.parse(args.shape)
    if any(h != 2 for h in shape.blocks):
        raise ValueError("moment identities apply to uniform height-2 shapes")
    k_lo, k_hi = _parse_span(args.k, "--k")
    checks = []
    for k in range(k_lo, k_hi + 1):
        hist = enumerate_histogram(shape, k, parallelism=args.jobs)
        pairs = forms.moment_identities(shape.n, k, hist)
        for q, (lhs, rhs) in enumerate(pairs):
            checks.append(
                {
                    "k": k,
                    "q": q,
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                    "status": _status(lhs == rhs),
                }
            )
    params = {"shape": str(shape), "k": args.k, "jobs": args.jobs}
    return params, {"suite": "moments", "checks": checks}, [
        TAG_ENUMERATED,
        TAG_CLOSED_FORM,
    ], EXIT_OK


def _verify_formula_vs_enum(args) -> tuple[dict, dict, list[str], int]:
    if args.shape is None or args.k is None:
        raise ValueError("verify formula-vs-enum needs --shape and --k")
    shape = Shape.parse(args.shape)
    k_lo, k_hi = _parse_span(args.k, "--k")
    checks = []
    tags = {TAG_ENUMERATED}
    for k in range(k_lo, k_hi + 1):
        hist = enumerate_histogram(shape, k, parallelism=args.jobs)
        checks.append(
            {
                "k": k,
                "formula": "total",
                "i": None,
                "expected": str(1 << shape.total_bits(k)),
                "enumerated": str(hist.total()),
                "status": _status(hist.total() == 1 << shape.total_bits(k)),
            }
        )
        for i, count in enumerate(hist.counts):
            for formula_id, expected in forms.applicable_forms(shape, k, i):
                if formula_id == "quadruple-table":
                    tags.add(TAG_BAKED_TABLE)
                else:
                    tags.add(TAG_CLOSED_FORM)
                checks.append(
                    {
                        "k": k,
                        "formula": formula_id,
                        "i": i,
                        "expected": str(expected),
                        "enumerated": str(count),
                        "status": _status(expected == count),
                    }
                )
    params = {"shape": str(shape), "k": args.k, "jobs": args.jobs}
    return params, {"suite": "formula-vs-enum", "checks": checks}, sorted(tags), EXIT_OK


def _verify_recurrence(args) -> tuple[dict, dict, list[str], int]:
    k_lo, k_hi = _parse_span(args.k or "4..12", "--k")
    if k_lo < 4:
        raise DomainError(
            f"verify recurrence: requires k >= 4 for the closed lines, got {k_lo}"
        )
    checks = []
    for k in range(k_lo, k_hi + 1):
        for i in range(10):
            lhs = forms.mixed_recurrence(i, k)
            rhs = forms.gamma_mixed_9xk(i, k)
            checks.append(
                {
                    "k": k,
                    "i": i,
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                    "status": _status(lhs == rhs),
                }
            )
    params = {"k": f"{k_lo}..{k_hi}"}
    return params, {"suite": "recurrence", "checks": checks}, [
        TAG_BAKED_TABLE,
        TAG_CLOSED_FORM,
    ], EXIT_OK


def _verify_r_identities(args) -> tuple[dict, dict, list[str], int]:
    q_lo, q_hi = _parse_span(args.q or "1..8", "--q")
    if q_lo < 1:
        raise ValueError(f"--q must start at 1, got {q_lo}")
    checks = []
    for q in range(q_lo, q_hi + 1):
        via_matrices, closed, via_histogram = polysys.r_q41_identity(q)
        checks.append(
            {
                "q": q,
                "matrix_route": str(via_matrices),
                "closed_route": str(closed),
                "histogram_route": str(via_histogram),
                "status": _status(via_matrices == closed == via_histogram),
            }
        )
    params = {"q": f"{q_lo}..{q_hi}"}
    return params, {"suite": "r-identities", "checks": checks}, [
        TAG_BAKED_TABLE,
        TAG_CLOSED_FORM,
    ], EXIT_OK


def _verify_landsberg(args) -> tuple[dict, dict, list[str], int]:
    q_lo, q_hi = _parse_span(args.q or "1..8", "--q")
    if q_lo < 1:
        raise ValueError(f"--q must start at 1, got {q_lo}")
    checks = []
    for q in range(q_lo, q_hi + 1):
        total = sum(polysys.landsberg_count(8, q, l) for l in range(min(8, q) + 1))
        checks.append(
            {
                "q": q,
                "check": "partition-sum",
                "lhs": str(total),
                "rhs": str(1 << (8 * q)),
                "status": _status(total == 1 << (8 * q)),
            }
        )
        rank_one = polysys.landsberg_count(8, q, 1)
        expected = (2**8 - 1) * (2**q - 1)
        checks.append(
            {
                "q": q,
                "check": "rank-one",
                "lhs": str(rank_one),
                "rhs": str(expected),
                "status": _status(rank_one == expected),
            }
        )
    params = {"q": f"{q_lo}..{q_hi}"}
    return params, {"suite": "landsberg", "checks": checks}, [TAG_CLOSED_FORM], EXIT_OK


def _cmd_verify(args) -> tuple[dict, dict, list[str], int]:
    handlers = {
        "moments": _verify_moments,
        "formula-vs-enum": _verify_formula_vs_enum,
        "recurrence": _verify_recurrence,
        "r-identities": _verify_r_identities,
        "landsberg": _verify_landsberg,
    }
    params, payload, tags, _ = handlers[args.suite](args)
    all_pass = all(check["status"] == "pass" for check in payload["checks"])
    payload["all_pass"] = all_pass
    return params, payload, tags, EXIT_OK if all_pass else EXIT_VERIFY_FAILED


# ---------------------------------------------------------------------------
# count-solutions
# ---------------------------------------------------------------------------


def _resolve_gammas(n: int, k: int, jobs: int) -> tuple[list[int], str]:
    """Rank distribution for the histogram formula, with its source tag."""
    try:
        dist = forms.gamma_distribution(n, k)
        tag = TAG_BAKED_TABLE if (n == 4 and k <= 8) else TAG_CLOSED_FORM
        return dist, tag
    except DomainError:
        hist = enumerate_histogram(Shape.uniform(n), k, parallelism=jobs)
        return list(hist.counts), TAG_ENUMERATED


def _cmd_count_solutions(args) -> tuple[dict, dict, list[str], int]:
    params = {"q": args.q, "n": args.n, "k": args.k, "method": args.method}
    payload: dict = {}
    tags = set()
    exit_code = EXIT_OK
    if args.method in ("formula", "both"):
        gammas, tag = _resolve_gammas(args.n, args.k, args.jobs)
        payload["formula"] = str(polysys.r_formula(args.q, args.n, args.k, gammas))
        tags.add(tag)
    if args.method in ("brute", "both"):
        value = polysys.r_bruteforce(args.q, args.n, args.k, parallelism=max(args.jobs, 1))
        payload["brute"] = str(value)
        tags.add(TAG_ENUMERATED)
    if args.method == "both":
        match = payload["formula"] == payload["brute"]
        payload["match"] = match
        if not match:
            exit_code = EXIT_VERIFY_FAILED
    return params, payload, sorted(tags), exit_code


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------


def _emit_csv(payload: dict):
    print("rank,count")
    for i, count in enumerate(payload["counts"]):
        print(f"{i},{count}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    handlers = {
        "enumerate": _cmd_enumerate,
        "formula": _cmd_formula,
        "verify": _cmd_verify,
        "count-solutions": _cmd_count_solutions,
    }
    start = time.perf_counter()
    try:
        params, payload, tags, exit_code = handlers[args.command](args)
    except BudgetError as exc:
        print(f"persymrank: budget refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except DomainError as exc:
        print(f"persymrank: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ValueError as exc:
        print(f"persymrank: bad arguments: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    if getattr(args, "format", "json") == "csv":
        _emit_csv(payload)
    else:
        report = {
            "schema": SCHEMA_VERSION,
            "command": args.command,
            "params": params,
            "payload": payload,
            "source": list(tags),
            "elapsed_ms": elapsed_ms,
        }
        print(json.dumps(report, indent=2, sort_keys=True))
    return exit_code


def run():
    """Console-script entry point."""
    raise SystemExit(main())


if __name__ == "__main__":
    run()
