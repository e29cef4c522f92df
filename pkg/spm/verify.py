# spm/verify.py
"""
Invariant suites behind `spm verify`. Every suite returns CheckResults;
nothing here raises on a failed property.
"""
import logging
from itertools import combinations_with_replacement, product
from typing import Iterable, Optional

from spm.core.errors import SpmError
from spm.core.partition import (
    add_grain,
    can_add_grain,
    cliff_back_path,
    fall,
    fixed_point,
    is_spm,
    lift_successors,
    partitions_of,
    rank,
    stair_length,
    successors,
)
from spm.counting import (
    c_structural,
    p_recursion,
    p_table_oracle,
    spm_size_via_p,
    spm_size_via_tree,
)
from spm.diagram import build_bfs, check_image_sublattice, check_lattice, closure_masks, extremum
from spm.incremental import build_next, generating_partition, generating_partitions, q_classes, stratify
from spm.infinite import (
    build_upto,
    check_filter_sublattice,
    check_union_cover,
    embed_pi,
    inf_infinite,
    leq_infinite,
    sup_infinite,
    successors_infinite,
)
from spm.models import InfinitePartition
from spm.schemas import CheckResult
from spm.sptree import (
    build_tree,
    chain_decomposition,
    check_fathers,
    check_labels_bounded,
    check_n1_chains,
    check_nk_structure,
    count_paths_oracle,
    expected_attachments,
    successors_via_tree,
)

logger = logging.getLogger(__name__)


def _result(name: str, failures: list[str]) -> CheckResult:
    return CheckResult(name=name, passed=not failures, failures=failures)


# -------------------------------------------------
# 🧱 core / diagram
# -------------------------------------------------
def check_characterization(n: int, budget: Optional[int] = None) -> CheckResult:
    """is_spm selects exactly the BFS-reachable partitions of n."""
    reachable = set(build_bfs(n, budget).nodes)
    failures = [str(s) for s in partitions_of(n) if is_spm(s) != (s in reachable)]
    return _result(f"characterization-{n}", failures)


def check_successor_laws(n: int, budget: Optional[int] = None) -> CheckResult:
    """
    For e(s) >= i-1: a plateau or a cliff at i keeps the successors of s
    (lifted by a grain on column i); a step adds (i, s with a grain on i+1).
    A cliff is also bypassed from s with a grain on 1 by labels i, ..., 1.
    """
    failures = []
    for s in build_bfs(n, budget).nodes:
        for i in range(1, stair_length(s) + 2):
            if not can_add_grain(s, i):
                continue
            up = add_grain(s, i)
            got = set(successors(up))
            expected = lift_successors(s, i)
            diff = s.col(i) - s.col(i + 1)
            if diff == 1:
                expected.add((i, add_grain(s, i + 1)))
            if got != expected:
                failures.append(f"{s}@{i}")
            if diff >= 2:
                try:
                    path = cliff_back_path(s, i)
                except SpmError:
                    failures.append(f"{s}@{i}: back path blocked")
                    continue
                if path[-1][1] != fall(up, i):
                    failures.append(f"{s}@{i}: back path ends at {path[-1][1]}")
    return _result(f"successor-laws-{n}", failures)


# -------------------------------------------------
# 🏗 incremental
# -------------------------------------------------
def check_incremental(n: int, budget: Optional[int] = None) -> list[CheckResult]:
    """SPM(n) -> SPM(n+1) against BFS, the gained/added sets and the image sublattice."""
    d, bigger = build_bfs(n, budget), build_bfs(n + 1, budget)
    trace: list = []
    built = build_next(d, budget, trace=trace)
    st = stratify(d)
    gained_added = [
        f"step {i}"
        for i, gained, added in trace
        if gained != st.i_sets[i - 1] or added != st.c_sets[i - 1]
    ]
    image = check_image_sublattice(d, bigger, lambda s: add_grain(s, 1))
    return [
        CheckResult(name=f"build-next-{n}", passed=built == bigger),
        _result(f"gained-added-sets-{n}", gained_added),
        image.model_copy(update={"name": f"image-sublattice-{n}"}),
    ]


def check_generating(n: int, budget: Optional[int] = None) -> CheckResult:
    """Generating partitions are the maxima of the Q classes, and every class satisfies its claims."""
    d = build_bfs(n, budget)
    failures = []
    for i in range(1, stair_length(fixed_point(n)) + 2):
        classes = q_classes(d, i)
        for k, q in classes.items():
            g = generating_partition(n, k, i)
            if g is None or g.body != q.maximum:
                failures.append(f"Q_{i},{k}: maximum {q.maximum} vs {g.body if g else None}")
            r = q.report
            if not (r.lattice and r.reachable_from_maximum and r.internal_labels_above_i and r.meet_closed):
                failures.append(f"Q_{i},{k}: {r.model_dump_json()}")
        if i == 1 and n >= 3:
            bodies = sorted(g.body for g in generating_partitions(n))
            if bodies != sorted(q.maximum for q in classes.values()):
                failures.append("generating partitions differ from class maxima")
    return _result(f"generating-partitions-{n}", failures)


# -------------------------------------------------
# ♾ infinite
# -------------------------------------------------
def check_infinite(n: int, budget: Optional[int] = None) -> list[CheckResult]:
    d = build_upto(n, budget=budget)
    desc, _ = closure_masks(d)
    tails = [InfinitePartition(s) for s in d.nodes]

    lemma = []
    for u, v in product(range(len(d)), repeat=2):
        reach = bool(desc[u] >> v & 1)
        if reach != leq_infinite(tails[u], tails[v]).a_geq_b:
            lemma.append(f"{tails[u]};{tails[v]}")

    triples = {(d.nodes[u], label, d.nodes[v]) for u, label, v in d.edges}
    expected = {
        (s.tail, label, t.tail)
        for s in tails
        for label, t in successors_infinite(s)
        if t.tail.n <= n
    }
    edge_law = [f"{a} -{l}-> {b}" for a, l, b in triples ^ expected]
    graded = [f"{d.nodes[u]}->{d.nodes[v]}" for u, _, v in d.edges if rank(d.nodes[v]) != rank(d.nodes[u]) + 1]

    pi_failures = []
    for m in range(n + 1):
        small = build_bfs(m, budget)
        sdesc, sanc = closure_masks(small)
        for u, v in combinations_with_replacement(range(len(small)), 2):
            a, b = small.nodes[u], small.nodes[v]
            meet = small.nodes[extremum(sdesc[u] & sdesc[v], sdesc)]
            join = small.nodes[extremum(sanc[u] & sanc[v], sanc)]
            pa, pb = embed_pi(a), embed_pi(b)
            if embed_pi(meet) != inf_infinite(pa, pb) or embed_pi(join) != sup_infinite(pa, pb, budget):
                pi_failures.append(f"{a};{b}")

    component = build_upto(n, mode="component", budget=budget)
    return [
        _result(f"shot-order-equals-reachability-{n}", lemma),
        _result(f"label-shift-law-{n}", edge_law),
        _result(f"infinite-rank-graded-{n}", graded),
        _result(f"pi-preserves-meet-join-{n}", pi_failures),
        CheckResult(name=f"upto-modes-agree-{n}", passed=component == d),
        check_union_cover(n, budget),
    ]


# -------------------------------------------------
# 🌳 tree
# -------------------------------------------------
def check_tree(depth: int, budget: Optional[int] = None) -> list[CheckResult]:
    t = build_tree(depth, budget=budget)
    levels = [
        str(n) for n in range(depth + 1) if set(t.levels[n]) != set(build_bfs(n, budget).nodes)
    ]
    via_tree = [
        str(s)
        for s in t.nodes()
        if successors_via_tree(s, t) != {label for label, _ in successors_infinite(InfinitePartition(s))}
    ]
    chain = chain_decomposition(depth)
    fixed = [str(s) for level, s in chain.chain if s != fixed_point(level)]
    pattern = [(level, m) for level, m, _ in chain.attachments]
    return [
        _result(f"tree-levels-equal-spm-{depth}", levels),
        check_fathers(t),
        check_nk_structure(t),
        check_n1_chains(t),
        check_labels_bounded(t),
        _result(f"successors-via-tree-{depth}", via_tree),
        _result(f"chain-is-fixed-points-{depth}", fixed),
        CheckResult(name=f"chain-attachments-{depth}", passed=pattern == expected_attachments(depth)),
    ]


# -------------------------------------------------
# 🔢 counting
# -------------------------------------------------
def check_counting(n: int, max_l: int = 6, max_k: int = 4, budget: Optional[int] = None) -> list[CheckResult]:
    oracle = p_table_oracle(max(n, 2), budget)
    corrected = p_recursion(max(n, 2), "corrected")
    p_failures = [
        f"p({i},{m})"
        for i in range(len(oracle.p))
        for m in range(n + 1)
        if corrected.p_at(i, m) != oracle.p_at(i, m)
    ]
    sizes = [
        str(m)
        for m in range(n + 1)
        if not (spm_size_via_p(m, oracle) == oracle.spm_size[m] == spm_size_via_tree(m))
    ]
    paths = []
    for k in range(1, max_k + 1):
        root = fixed_point(k * (k + 1) // 2)
        t = build_tree(max_l, root, budget)
        paths += [
            f"c({l},{k})"
            for l in range(1, max_l + 1)
            if c_structural(l, k) != count_paths_oracle(t, root, l, k)
        ]
    return [
        _result(f"corrected-p-recursion-{n}", p_failures),
        _result(f"cardinality-methods-agree-{n}", sizes),
        _result(f"structural-c-equals-paths-{max_l}x{max_k}", paths),
    ]


# -------------------------------------------------
# 🧪 Suites
# -------------------------------------------------
def run_suites(n: int, budget: Optional[int] = None) -> list[CheckResult]:
    """Everything `spm verify --n N` reports, in a fixed order."""
    results: list[CheckResult] = []
    results.extend(check_lattice(build_bfs(n, budget)).checks)
    results.append(check_characterization(n, budget))
    results.append(check_successor_laws(n, budget))
    if n >= 1:
        results.extend(check_incremental(n - 1, budget))
    if n >= 3:
        results.append(check_generating(n, budget))
    results.extend(check_infinite(n, budget))
    filter_report = check_filter_sublattice(max(n - 2, 0), n, budget)
    results.extend(filter_report.checks)
    results.extend(check_tree(max(n, 1), budget))
    results.extend(check_counting(n, budget=budget))
    for r in results:
        logger.debug("%s: %s", r.name, "PASS" if r.passed else "FAIL")
    return results


def summary_lines(results: Iterable[CheckResult]) -> list[str]:
    return [f"{'PASS' if r.passed else 'FAIL'} {r.name}" for r in results]
