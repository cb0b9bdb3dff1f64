"""Exact rank statistics of stacked persymmetric matrices over F2.

The package enumerates every matrix of a stacked persymmetric family,
evaluates the closed-form rank counts with exact big-int arithmetic, and
cross-checks both against each other and against the solution counts of the
bilinear polynomial systems the families control.
"""

from .bitmat import BitMatrix, rank, rank_of_rows
from .forms import (
    DomainError,
    FormulaInfo,
    MIXED_SHAPE,
    QUADRUPLE_TABLES,
    applicable_forms,
    formula_catalog,
    gamma_distribution,
    gamma_general,
    gamma_k7_k8,
    gamma_mixed_9xk,
    gamma_quadruple,
    gamma_rank4_k5_k6,
    gamma_rank4_small_n,
    gamma_rank5_k6,
    gamma_rank5_small_n,
    gamma_table_small_k,
    mixed_recurrence,
    moment_identities,
    moment_rhs,
    quadruple_distribution,
)
from .persym import (
    BudgetError,
    CoeffSeq,
    HistogramSource,
    RankHistogram,
    Shape,
    build_persym,
    enumerate_histogram,
    histogram_from_counts,
    merge_histograms,
    partition_sweep,
)
from .polysys import (
    PolySystemInstance,
    clmul,
    landsberg_count,
    r_bruteforce,
    r_formula,
    r_q41_identity,
    r_q4_k_closed,
)

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BudgetError",
    "CoeffSeq",
    "DomainError",
    "FormulaInfo",
    "HistogramSource",
    "MIXED_SHAPE",
    "PolySystemInstance",
    "QUADRUPLE_TABLES",
    "RankHistogram",
    "Shape",
    "applicable_forms",
    "build_persym",
    "clmul",
    "enumerate_histogram",
    "formula_catalog",
    "gamma_distribution",
    "gamma_general",
    "gamma_k7_k8",
    "gamma_mixed_9xk",
    "gamma_quadruple",
    "gamma_rank4_k5_k6",
    "gamma_rank4_small_n",
    "gamma_rank5_k6",
    "gamma_rank5_small_n",
    "gamma_table_small_k",
    "histogram_from_counts",
    "landsberg_count",
    "merge_histograms",
    "mixed_recurrence",
    "moment_identities",
    "moment_rhs",
    "partition_sweep",
    "quadruple_distribution",
    "r_bruteforce",
    "r_formula",
    "r_q41_identity",
    "r_q4_k_closed",
    "rank",
    "rank_of_rows",
]
