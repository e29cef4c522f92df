# spm/incremental.py
"""
Incremental construction of SPM(n+1) from SPM(n) through the P_i
stratification, the Q_{i,k} decomposition of P_i, generating partitions and
the multiset evaluation of the P_i(n+2) decomposition.
"""
import logging
from collections import Counter
from itertools import combinations_with_replacement
from math import floor, sqrt
from typing import Literal, Mapping, Optional

from spm.config import settings
from spm.core.errors import BudgetExceededError
from spm.core.partition import add_grain, fall, stair_length, triangular, triangular_root
from spm.diagram import build_bfs, infimum, leq
from spm.models import (
    Diagram,
    DiagramKind,
    GeneratingPartition,
    Partition,
    QClass,
    Stratification,
)
from spm.schemas import QClassReport, StratificationReport, Theorem3Report

logger = logging.getLogger(__name__)


# -------------------------------------------------
# 🪜 Stratification
# -------------------------------------------------
def p_set(d: Diagram, i: int) -> frozenset:
    """P_i: nodes beginning with stairs of length at least i."""
    return frozenset(s for s in d.nodes if stair_length(s) >= i)


def stratify(d: Diagram) -> Stratification:
    p_sets, i_sets, c_sets = [], [], []
    i = 1
    current = p_set(d, 1)
    while current:
        p_sets.append(current)
        i_sets.append(frozenset(add_grain(s, i) for s in current))
        c_sets.append(frozenset(add_grain(s, i + 1) for s in current))
        i += 1
        current = frozenset(s for s in current if stair_length(s) >= i)
    return Stratification(n=d.n, p_sets=tuple(p_sets), i_sets=tuple(i_sets), c_sets=tuple(c_sets))


def stratification_report(st: Stratification) -> StratificationReport:
    return StratificationReport(
        n=st.n,
        p_sizes=[len(x) for x in st.p_sets],
        i_sizes=[len(x) for x in st.i_sets],
        c_sizes=[len(x) for x in st.c_sets],
    )


def stratify_range(max_n: int, budget: Optional[int] = None) -> dict[int, Stratification]:
    return {n: stratify(build_bfs(n, budget)) for n in range(max_n + 1)}


# -------------------------------------------------
# 🏗 SPM(n) -> SPM(n+1)
# -------------------------------------------------
def build_next(d: Diagram, budget: Optional[int] = None, trace: Optional[list] = None) -> Diagram:
    """
    SPM(n+1) from SPM(n): start from the image of SPM(n) under a grain on
    column 1 and, for i = 1, 2, ... while P_i is non-empty, add the copy of P_i
    with a grain on column i+1 together with its connector and back edges.

    When `trace` is a list, one (i, gained, added) entry is appended per step:
    the elements that gained a successor and the newly created elements.
    """
    budget = settings.SPM_BUDGET if budget is None else budget
    nodes = d.nodes
    adjacency: dict[Partition, list[tuple[int, Partition]]] = {}
    for u, s in enumerate(nodes):
        adjacency[add_grain(s, 1)] = [(label, add_grain(nodes[v], 1)) for label, v in d.out_edges(u)]

    i = 1
    current = sorted(s for s in nodes if stair_length(s) >= 1)
    while current:
        members = set(current)
        gained, added = set(), set()
        for s in current:
            c = add_grain(s, i + 1)
            u = d.node_id(s)
            adjacency[c] = [
                (label, add_grain(nodes[v], i + 1)) for label, v in d.out_edges(u) if nodes[v] in members
            ]
            source = add_grain(s, i)
            adjacency[source].append((i, c))
            if s.col(i + 1) - s.col(i + 2) >= 2:
                adjacency[c].append((i + 1, fall(c, i + 1)))
            gained.add(source)
            added.add(c)
        if len(adjacency) > budget:
            raise BudgetExceededError(budget)
        logger.debug("SPM(%d) step %d: |P_%d| = %d", d.n + 1, i, i, len(current))
        if trace is not None:
            trace.append((i, frozenset(gained), frozenset(added)))
        i += 1
        current = [s for s in current if stair_length(s) >= i]

    result = Diagram.from_adjacency(DiagramKind.SINGLE, d.n + 1, Partition((d.n + 1,)), adjacency)
    logger.info("SPM(%d) built incrementally: %d nodes, %d edges", result.n, len(result), len(result.edges))
    return result


def build_chain(n: int, budget: Optional[int] = None) -> list[Diagram]:
    """[SPM(0), SPM(1), ..., SPM(n)] by iterated build_next."""
    chain = [build_bfs(0, budget)]
    for _ in range(n):
        chain.append(build_next(chain[-1], budget))
    return chain


# -------------------------------------------------
# 🧩 Q_{i,k} classes and generating partitions
# -------------------------------------------------
def _class_maximum(members: set) -> Optional[Partition]:
    tops = [m for m in members if all(leq(m, x).a_geq_b for x in members)]
    return tops[0] if len(tops) == 1 else None


def _is_lattice(members: list) -> bool:
    for a, b in combinations_with_replacement(members, 2):
        lower = [x for x in members if leq(a, x).a_geq_b and leq(b, x).a_geq_b]
        upper = [x for x in members if leq(x, a).a_geq_b and leq(x, b).a_geq_b]
        if _class_maximum(set(lower)) is None:
            return False
        bottoms = [m for m in upper if all(leq(x, m).a_geq_b for x in upper)]
        if len(bottoms) != 1:
            return False
    return True


def q_classes(d: Diagram, i: int) -> dict[int, QClass]:
    """P_i split by leading part k, each class checked against its structural claims."""
    grouped: dict[int, set] = {}
    for s in p_set(d, i):
        grouped.setdefault(s.col(1), set()).add(s)

    classes = {}
    for k in sorted(grouped):
        members = grouped[k]
        maximum = _class_maximum(members)
        reachable = set()
        if maximum is not None:
            stack = [d.node_id(maximum)]
            seen = set(stack)
            while stack:
                u = stack.pop()
                for label, v in d.out_edges(u):
                    if label > i + 1 and v not in seen:
                        seen.add(v)
                        stack.append(v)
            reachable = {d.nodes[u] for u in seen}
        internal_labels = all(
            label > i
            for s in members
            for label, v in d.out_edges(d.node_id(s))
            if d.nodes[v] in members
        )
        report = QClassReport(
            k=k,
            size=len(members),
            maximum=list(maximum.parts) if maximum is not None else None,
            lattice=_is_lattice(sorted(members)),
            reachable_from_maximum=reachable == members,
            internal_labels_above_i=internal_labels,
            meet_closed=all(infimum(a, b) in members for a, b in combinations_with_replacement(sorted(members), 2)),
        )
        classes[k] = QClass(k=k, members=frozenset(members), maximum=maximum, report=report)
    return classes


def generating_partition(n: int, k: int, i: int = 1) -> Optional[GeneratingPartition]:
    """
    Maximum of Q_{i,k} in SPM(n): the stairs k, ..., k-i, one plateau, then
    a descending run and a remainder r. None when the class is empty.
    """
    head = list(range(k, k - i - 1, -1))
    if k < 1 or head[-1] < 0:
        return None
    rem = n - sum(head)
    if rem < 0:
        return None
    body = [x for x in head if x > 0]
    nxt = k - i
    if nxt > 0 and rem >= nxt:
        body.append(nxt)
        rem -= nxt
        nxt -= 1
        while nxt > 0 and rem >= nxt:
            body.append(nxt)
            rem -= nxt
            nxt -= 1
    if rem and (nxt <= 0 or rem >= nxt):
        return None
    r = rem
    if r:
        body.append(r)
    run = body[1:-1] if r else body[1:]
    return GeneratingPartition(k=k, body=Partition(tuple(body)), l=k - min(run, default=k - 1), r=r)


def generating_partitions(n: int) -> list[GeneratingPartition]:
    """One generating partition per k with 2k-1 <= n <= k-1 + k(k+1)/2."""
    found = []
    for k in range(1, (n + 1) // 2 + 1):
        if 2 * k - 1 <= n <= k - 1 + triangular(k):
            g = generating_partition(n, k)
            if g is not None:
                found.append(g)
    return found


Reading = Literal["sum", "product"]


def printed_generating_count(n: int, reading: Reading = "sum") -> int:
    """
    The printed closed form floor(n/2 + 2 - sqrt(17/4 . 2n)). The radicand is
    read either as 17/4 + 2n ("sum") or as 17/4 * 2n ("product").
    """
    radicand = 17 / 4 + 2 * n if reading == "sum" else 17 / 4 * 2 * n
    return floor(n / 2 + 2 - sqrt(radicand))


def compare_generating_counts(max_n: int = 200, min_n: int = 4) -> list[tuple[int, str, int, int]]:
    """(n, reading, printed, enumerated) for every disagreement."""
    discrepancies = []
    for n in range(min_n, max_n + 1):
        enumerated = len(generating_partitions(n))
        for reading in ("sum", "product"):
            printed = printed_generating_count(n, reading)
            if printed != enumerated:
                discrepancies.append((n, reading, printed, enumerated))
    if discrepancies:
        logger.warning(
            "printed generating-partition count disagrees with enumeration %d times for %d <= n <= %d",
            len(discrepancies), min_n, max_n,
        )
    return discrepancies


# -------------------------------------------------
# 🔍 Decomposition of P_i(n+2)
# -------------------------------------------------
def decompose_theorem3(i: int, n: int, strata: Mapping[int, Stratification]) -> Theorem3Report:
    """
    Evaluate T(n+2) + P_i(n-i+1) with a grain on each of columns 1..i+1
    + sum over k > i of P_k(n+1) with a grain on column k+1, as a multiset,
    and compare it with the true P_i(n+2).
    """
    m = n + 2
    if triangular(i) > m:
        raise ValueError(f"i = {i} is not feasible for n+2 = {m}")

    rhs: Counter = Counter()
    k = triangular_root(m)
    if k is not None:
        rhs[Partition(tuple(range(k, 0, -1)))] += 1
    if n - i + 1 >= 0:
        for s in strata[n - i + 1].p(i):
            for col in range(1, i + 2):
                s = add_grain(s, col)
            rhs[s] += 1
    upper = strata[n + 1]
    for kk in range(i + 1, len(upper.p_sets) + 1):
        for s in upper.p(kk):
            rhs[add_grain(s, kk + 1)] += 1

    truth = set(strata[m].p(i))
    duplicates = sorted(s for s, c in rhs.items() if c > 1)
    missing = sorted(truth - set(rhs))
    extra = sorted(set(rhs) - truth)
    status = "ok" if not (duplicates or missing or extra) else "multiset-mismatch"
    return Theorem3Report(
        i=i,
        n=m,
        status=status,
        duplicates=[list(s.parts) for s in duplicates],
        missing=[list(s.parts) for s in missing],
        extra=[list(s.parts) for s in extra],
        rhs_size=sum(rhs.values()),
        true_size=len(truth),
    )
