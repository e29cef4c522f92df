# spm/counting.py
"""
Cardinality recurrences for SPM(n), printed and structure-derived, with the
brute-force oracles they are measured against.
"""
import csv
import logging
from collections import Counter
from functools import cache
from typing import Literal, Optional, TextIO

from spm.core.errors import SpmError, UnknownVariantError
from spm.core.partition import fixed_point, stair_length, triangular, triangular_root
from spm.diagram import build_bfs
from spm.incremental import (
    build_chain,
    compare_generating_counts,
    decompose_theorem3,
    generating_partitions,
    printed_generating_count,
    stratify_range,
)
from spm.models import CountTables
from spm.schemas import ReconciliationReport, ReconciliationRow
from spm.sptree import build_tree, count_paths_oracle

logger = logging.getLogger(__name__)

DELTA_VARIANTS = ("printed-corollary", "printed-theorem3", "corrected")
C_VARIANTS = ("printed-c", "structural-c")
TREE_MODES = ("printed", "structural")

INITIAL_CONDITIONS_NOTE = (
    "p-recursion initial conditions: p(0,0)=p(0,1)=1, p(0,2)=2, p(1,1)=1, "
    "p(i,1)=0 for i>1, p(i,0)=p(i,2)=0 for i>=1; the printed 'p(1,j)=0 for j>1' "
    "is read as 'p(i,1)=0 for i>1'"
)
C_PRINTED_NOTE = (
    "c_printed: the first case 'l<=0 and k<=0' is read as 'l<=0 or k<=0' "
    "(the literal conjunction never terminates)"
)
TREE_SUM_NOTE = "tree sums treat c(x, .) as 0 for x <= 0: a path of length 0 is the chain node itself"


def _max_stairs(n: int) -> int:
    """Largest possible stair length among partitions of n."""
    k = 0
    while triangular(k + 1) <= n:
        k += 1
    return k


# -------------------------------------------------
# 🔢 p(i, n) = |P_i(n)|
# -------------------------------------------------
def p_table_oracle(max_n: int, budget: Optional[int] = None) -> CountTables:
    """p[i][n] by scanning build_bfs(n); p[0][n] = |SPM(n)|."""
    rows = _max_stairs(max_n) + 2
    p = [[0] * (max_n + 1) for _ in range(rows)]
    for n in range(max_n + 1):
        d = build_bfs(n, budget)
        p[0][n] = len(d)
        for e, count in Counter(stair_length(s) for s in d.nodes).items():
            for i in range(1, e + 1):
                p[i][n] += count
    return CountTables(variant="oracle", p=p, spm_size=list(p[0]))


def _delta(variant: str, i: int, m: int) -> int:
    """The correction term of the recurrence for p(i, m), m = n + 2."""
    if variant == "printed-corollary":
        return int(triangular_root(m - 2) is not None)
    k = triangular_root(m)
    if k is None:
        return 0
    if variant == "printed-theorem3":
        return int(i <= k)
    return int(i == k)


def p_recursion(max_n: int, variant: str = "corrected") -> CountTables:
    """
    p(i, m) = p(i, m-i-1) + sum_{j>i} p(j, m-1) + delta(i, m) for m >= 3,
    applied where i(i+1)/2 <= m; every other entry with i >= 1 is 0.
    """
    if variant not in DELTA_VARIANTS:
        raise UnknownVariantError(f"unknown delta variant {variant!r}; expected one of {DELTA_VARIANTS}")
    if max_n < 2:
        raise ValueError("the recurrence needs max_n >= 2")
    rows = _max_stairs(max_n) + 2
    p = [[0] * (max_n + 1) for _ in range(rows)]
    p[0][0], p[0][1], p[0][2] = 1, 1, 2
    p[1][1] = 1

    def at(i: int, m: int) -> int:
        return p[i][m] if 0 <= m and i < rows else 0

    for m in range(3, max_n + 1):
        for i in range(1, rows):
            if triangular(i) > m:
                continue
            p[i][m] = at(i, m - i - 1) + sum(at(j, m - 1) for j in range(i + 1, rows)) + _delta(variant, i, m)
        p[0][m] = p[0][m - 1] + sum(p[i][m - 1] for i in range(1, rows))
    return CountTables(variant=variant, p=p, spm_size=list(p[0]))


def spm_size_via_p(n: int, tables: CountTables) -> int:
    """|SPM(n)| = |SPM(n-1)| + sum_{i>=1} p(i, n-1)."""
    if n == 0:
        return 1
    if n - 1 > tables.max_n:
        raise SpmError(f"tables cover n <= {tables.max_n}, need {n - 1}")
    return tables.p_at(0, n - 1) + sum(tables.p_at(i, n - 1) for i in range(1, len(tables.p)))


# -------------------------------------------------
# 🌳 Paths in X_k subtrees
# -------------------------------------------------
@cache
def c_printed(l: int, k: int) -> int:
    if l <= 0 or k <= 0:
        return 0
    if k == 1:
        return 1
    if l == 1:
        return k
    epsilon = 0 if k > l else 1
    return c_printed(l - k, k) + sum(c_printed(l - i + 1, k - i) for i in range(1, k)) + epsilon


@cache
def d_structural(m: int, k: int) -> int:
    """Paths of length m from an N_k root."""
    if m < 0 or k < 1:
        return 0
    if m == 0 or k == 1:
        return 1
    chain = 1 if m <= k - 1 else 0
    branches = sum(_c_plus(m - j + 1, k - 1 - j) for j in range(1, k - 1))
    return chain + branches + _c_plus(m - k + 1, k)


@cache
def c_structural(l: int, k: int) -> int:
    """Paths of length l from an X_k root: through its i-th son into an N_i subtree."""
    if l < 0 or k < 1:
        return 0
    if l == 0:
        return 1
    return sum(d_structural(l - 1, i) for i in range(1, k + 1))


def path_count_tables(max_l: int, max_k: int, variant: str = "structural-c") -> CountTables:
    """
    c[(l, k)] for l <= max_l, k <= max_k. The structural variant also fills
    d[(m, k)] for m < max_l, the N_k counts c is summed from.
    """
    c = _c(variant)
    tables = CountTables(variant=variant)
    for k in range(1, max_k + 1):
        for l in range(1, max_l + 1):
            tables.c[(l, k)] = c(l, k)
        if variant == "structural-c":
            for m in range(max_l):
                tables.d[(m, k)] = d_structural(m, k)
    return tables


def _c_plus(l: int, k: int) -> int:
    return c_structural(l, k) if l > 0 else 0


def _c(variant: str):
    if variant == "printed-c":
        return c_printed
    if variant == "structural-c":
        return c_structural
    raise UnknownVariantError(f"unknown c variant {variant!r}; expected one of {C_VARIANTS}")


def spm_size_via_tree(n: int, mode: str = "structural", c_variant: str = "structural-c") -> int:
    """
    Count level n of SPT(infinity) along the rightmost chain. "printed" is
    the double sum as printed; "structural" places X_k at k(k+1)/2 and X_m at
    k(k+1)/2 + (k-m).
    """
    c = _c(c_variant)

    def plus(l: int, k: int) -> int:
        return c(l, k) if l > 0 else 0

    if mode == "printed":
        k = _max_stairs(n)
        return 1 + sum(
            c(n - i * (i - 1) // 2 - j + 1, i - j + 1)
            for i in range(1, k + 1)
            for j in range(1, i + 1)
        )
    if mode == "structural":
        total = 1
        k = 1
        while triangular(k) <= n:
            base = n - triangular(k)
            total += plus(base, k) + sum(plus(base - (k - m), m) for m in range(1, k))
            k += 1
        return total
    raise UnknownVariantError(f"unknown tree mode {mode!r}; expected one of {TREE_MODES}")


# -------------------------------------------------
# 📊 Reconciliation
# -------------------------------------------------
def _row(formula: str, variant: str, args: str, value: Optional[int], oracle: Optional[int]) -> ReconciliationRow:
    return ReconciliationRow(
        formula=formula,
        variant=variant,
        args=args,
        formula_value=value,
        oracle_value=oracle,
        status="match" if value == oracle else "mismatch",
    )


def reconcile(
    max_n: int, max_l: int = 8, max_k: int = 4, gp_max_n: int = 200, budget: Optional[int] = None,
) -> ReconciliationReport:
    """Every recurrence against its oracle; mismatches are findings, not errors."""
    report = ReconciliationReport(
        max_n=max_n, max_l=max_l, max_k=max_k,
        notes=[INITIAL_CONDITIONS_NOTE, C_PRINTED_NOTE, TREE_SUM_NOTE],
    )
    rows = report.rows
    oracle = p_table_oracle(max_n, budget)

    recursions = {v: p_recursion(max(max_n, 2), v) for v in DELTA_VARIANTS}
    for variant, tables in recursions.items():
        for i in range(1, len(oracle.p)):
            for n in range(max_n + 1):
                rows.append(_row("p", variant, f"i={i},n={n}", tables.p_at(i, n), oracle.p_at(i, n)))

    c_tables = {v: path_count_tables(max_l, max_k, v) for v in C_VARIANTS}
    for k in range(1, max_k + 1):
        root = fixed_point(triangular(k))
        t = build_tree(max_l, root, budget=budget)
        for l in range(1, max_l + 1):
            truth = count_paths_oracle(t, root, l, k)
            for variant in C_VARIANTS:
                rows.append(_row("c", variant, f"l={l},k={k}", c_tables[variant].c[(l, k)], truth))

    for n in range(max_n + 1):
        truth = oracle.spm_size[n]
        rows.append(_row("spm-size-via-p", "oracle", f"n={n}", spm_size_via_p(n, oracle), truth))
        for variant, tables in recursions.items():
            rows.append(_row("spm-size-via-p", variant, f"n={n}", spm_size_via_p(n, tables), truth))
        for mode in TREE_MODES:
            for c_variant in C_VARIANTS:
                rows.append(_row(
                    "spm-size-via-tree", f"{mode}/{c_variant}", f"n={n}",
                    spm_size_via_tree(n, mode, c_variant), truth,
                ))

    compare_generating_counts(gp_max_n)
    for n in range(4, gp_max_n + 1):
        enumerated = len(generating_partitions(n))
        for reading in ("sum", "product"):
            rows.append(_row("generating-count", reading, f"n={n}", printed_generating_count(n, reading), enumerated))

    strata = stratify_range(max_n, budget)
    for m in range(2, max_n + 1):
        i = 1
        while triangular(i) <= m:
            result = decompose_theorem3(i, m - 2, strata)
            rows.append(ReconciliationRow(
                formula="theorem3",
                variant="multiset",
                args=f"i={i},n={m}",
                formula_value=result.rhs_size,
                oracle_value=result.true_size,
                status=result.status,
            ))
            i += 1

    for formula in dict.fromkeys(r.formula for r in rows):
        logger.info("reconcile %s: %d mismatch rows", formula, len(report.mismatches(formula)))
    return report


CSV_COLUMNS = ("formula", "variant", "args", "formula_value", "oracle_value", "status")


def write_report_csv(report: ReconciliationReport, stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.rows:
        writer.writerow([
            r.formula, r.variant, r.args,
            "" if r.formula_value is None else r.formula_value,
            "" if r.oracle_value is None else r.oracle_value,
            r.status,
        ])


def write_report_json(report: ReconciliationReport, stream: TextIO) -> None:
    stream.write(report.model_dump_json(indent=2))
    stream.write("\n")


CountMethod = Literal["bfs", "incremental", "p-rec", "tree"]


def count(n: int, method: CountMethod = "bfs", variant: Optional[str] = None, budget: Optional[int] = None) -> int:
    """|SPM(n)| by the chosen method; variant selects the recurrence flavour."""
    if n < 0:
        raise ValueError("grain count must be non-negative")
    if method == "bfs":
        return len(build_bfs(n, budget))
    if method == "incremental":
        return len(build_chain(n, budget)[-1])
    if method == "p-rec":
        tables = p_recursion(max(n, 2), variant or "corrected")
        return tables.spm_size[n]
    if method == "tree":
        c_variant = variant or "structural-c"
        if c_variant not in C_VARIANTS:
            raise UnknownVariantError(f"unknown c variant {c_variant!r}; expected one of {C_VARIANTS}")
        mode = "printed" if c_variant == "printed-c" else "structural"
        return spm_size_via_tree(n, mode, c_variant)
    raise UnknownVariantError(f"unknown count method {method!r}")
