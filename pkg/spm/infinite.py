# spm/infinite.py
"""
SPM(infinity): elements are (inf, s_2, ..., s_k) and are stored by their
finite tail. The order is read off shot vectors, and the finite filters
SPM(<=n) are materialized as up-to diagrams.
"""
import logging
from itertools import combinations_with_replacement
from typing import Literal, Optional

from spm.config import settings
from spm.core.errors import BudgetExceededError, CharacterizationError, NotAPartitionError, SpmError
from spm.core.partition import add_grain, cliffs, fall, is_spm, parse_partition
from spm.diagram import build_bfs, check_image_sublattice, closure_masks, extremum
from spm.incremental import build_chain
from spm.models import Diagram, DiagramKind, InfinitePartition, Ordering, Partition, ShotVector
from spm.schemas import CheckResult, FilterReport

logger = logging.getLogger(__name__)

UptoMode = Literal["incremental", "component"]

TOP = InfinitePartition()


def parse_infinite(text: str) -> InfinitePartition:
    """`~,2,1` -> (inf, 2, 1); `~` alone is the top element."""
    text = text.strip()
    if not text.startswith("~"):
        raise NotAPartitionError(f"infinite partition literal must start with '~': {text!r}")
    return InfinitePartition(parse_partition(text[1:].lstrip(",")))


# -------------------------------------------------
# 🎯 Shot vectors and the order
# -------------------------------------------------
def shot_vector(s: InfinitePartition) -> ShotVector:
    """counts_i = s_{i+1} + s_{i+2} + ...: firings of column i needed from (inf)."""
    tail = s.tail.parts
    return ShotVector(tuple(sum(tail[i:]) for i in range(len(tail))))


def from_shot_vector(v: ShotVector) -> Optional[InfinitePartition]:
    """Inverse of shot_vector, or None when no SPM(infinity) element has this vector."""
    counts = list(v.counts)
    while counts and counts[-1] == 0:
        counts.pop()
    parts = [a - b for a, b in zip(counts, counts[1:] + [0])]
    if any(p <= 0 for p in parts) or any(a < b for a, b in zip(parts, parts[1:])):
        return None
    tail = Partition(tuple(parts))
    return InfinitePartition(tail) if is_spm(tail) else None


def _aligned(s: InfinitePartition, t: InfinitePartition) -> tuple[tuple[int, ...], tuple[int, ...]]:
    vs, vt = shot_vector(s), shot_vector(t)
    length = max(len(vs.counts), len(vt.counts))
    return vs.padded(length), vt.padded(length)


def leq_infinite(s: InfinitePartition, t: InfinitePartition) -> Ordering:
    """s >= t iff s needs no more firings than t on every column."""
    a, b = _aligned(s, t)
    s_geq = all(x <= y for x, y in zip(a, b))
    t_geq = all(y <= x for x, y in zip(a, b))
    if s_geq and t_geq:
        return Ordering.EQUAL
    if s_geq:
        return Ordering.ABOVE
    if t_geq:
        return Ordering.BELOW
    return Ordering.INCOMPARABLE


def inf_infinite(s: InfinitePartition, t: InfinitePartition) -> InfinitePartition:
    a, b = _aligned(s, t)
    u = from_shot_vector(ShotVector(tuple(max(x, y) for x, y in zip(a, b))))
    if u is None:
        raise SpmError(f"componentwise max shot vector of {s} and {t} is not realizable")
    return u


def sup_infinite(s: InfinitePartition, t: InfinitePartition, budget: Optional[int] = None) -> InfinitePartition:
    """
    The element with the componentwise min shot vector when it exists,
    otherwise the least upper bound found by sup_by_search.
    """
    a, b = _aligned(s, t)
    u = from_shot_vector(ShotVector(tuple(min(x, y) for x, y in zip(a, b))))
    if u is not None:
        return u
    logger.warning("min shot vector of %s and %s is not realizable, searching upper bounds", s, t)
    return sup_by_search(s, t, budget)


def sup_by_search(s: InfinitePartition, t: InfinitePartition, budget: Optional[int] = None) -> InfinitePartition:
    """Least upper bound of s and t among every element with at most |shot_1| grains in its tail."""
    a, b = _aligned(s, t)
    bound = tuple(min(x, y) for x, y in zip(a, b))
    limit = bound[0] if bound else 0
    candidates = []
    for j in range(limit + 1):
        for tail in build_bfs(j, budget).nodes:
            u = InfinitePartition(tail)
            if leq_infinite(u, s).a_geq_b and leq_infinite(u, t).a_geq_b:
                candidates.append(u)
    least = [u for u in candidates if all(leq_infinite(v, u).a_geq_b for v in candidates)]
    if len(least) != 1:
        raise SpmError(f"{s} and {t} have no least upper bound")
    return least[0]


def successors_infinite(s: InfinitePartition) -> list[tuple[int, InfinitePartition]]:
    """Label 1 fires the infinite column; label j+1 fires tail column j."""
    tail = s.tail
    out = [(1, InfinitePartition(add_grain(tail, 1)))]
    out += [(j + 1, InfinitePartition(fall(tail, j))) for j in cliffs(tail)]
    return out


# -------------------------------------------------
# 🔗 Embeddings
# -------------------------------------------------
def _require_spm(s: Partition) -> None:
    if not is_spm(s):
        raise CharacterizationError(f"{s!r} is not an element of SPM({s.n})")


def embed_pi(s: Partition) -> InfinitePartition:
    """Drop the first column."""
    _require_spm(s)
    return InfinitePartition(Partition(s.parts[1:]))


def chi(s: Partition) -> InfinitePartition:
    """The whole of s becomes the tail below an infinite first column."""
    _require_spm(s)
    return InfinitePartition(s)


def chi_inverse(t: InfinitePartition) -> Partition:
    _require_spm(t.tail)
    return t.tail


# -------------------------------------------------
# 🏗 SPM(<=n)
# -------------------------------------------------
def _lifts(u: Partition, i: int) -> Optional[Partition]:
    """(i - |u|, u) when that is an element of SPM(i), else None."""
    head = i - u.n
    if head < max(u.col(1), 1):
        return None
    s = Partition((head,) + u.parts)
    return s if is_spm(s) else None


def _upto_incremental(n: int, budget: int) -> dict:
    adjacency: dict[Partition, list[tuple[int, Partition]]] = {}
    for level, d in enumerate(build_chain(n, budget)):
        for u, s in enumerate(d.nodes):
            out = [(label + 1, d.nodes[v]) for label, v in d.out_edges(u)]
            if level < n:
                out.append((1, add_grain(s, 1)))
            adjacency[s] = out
        if len(adjacency) > budget:
            raise BudgetExceededError(budget)
    return adjacency


def _upto_component(n: int, budget: int) -> dict:
    """
    Each SPM(i) is read off the result built so far: the tails of its
    elements are found by a depth-first search from the top, then lifted back
    and linked to the previous level.
    """
    root = Partition()
    adjacency: dict[Partition, list[tuple[int, Partition]]] = {root: []}
    previous = [root]
    for i in range(1, n + 1):
        lifted = {root: Partition((i,))}
        stack = [root]
        while stack:
            u = stack.pop()
            for _, v in adjacency[u]:
                if v not in lifted:
                    s = _lifts(v, i)
                    if s is not None:
                        lifted[v] = s
                        stack.append(v)
        level = {
            lifted[u]: [(label + 1, lifted[v]) for label, v in adjacency[u] if v in lifted]
            for u in lifted
        }
        for s in previous:
            adjacency[s].append((1, add_grain(s, 1)))
        adjacency.update(level)
        previous = list(level)
        logger.debug("SPM(<=%d): level %d has %d elements", n, i, len(level))
        if len(adjacency) > budget:
            raise BudgetExceededError(budget)
    return adjacency


def build_upto(n: int, mode: UptoMode = "incremental", budget: Optional[int] = None) -> Diagram:
    """SPM(<=n) in infinite coordinates: every node is a tail, ordered by BFS from the top."""
    if n < 0:
        raise ValueError("grain bound must be non-negative")
    budget = settings.SPM_BUDGET if budget is None else budget
    if mode == "incremental":
        adjacency = _upto_incremental(n, budget)
    elif mode == "component":
        adjacency = _upto_component(n, budget)
    else:
        raise ValueError(f"unknown build_upto mode: {mode}")
    d = Diagram.from_adjacency(DiagramKind.UPTO, n, Partition(), adjacency)
    logger.info("SPM(<=%d) built (%s): %d nodes, %d edges", n, mode, len(d), len(d.edges))
    return d


# -------------------------------------------------
# ✅ Filter and sublattice checks
# -------------------------------------------------
def check_filter_sublattice(n: int, big_n: int, budget: Optional[int] = None) -> FilterReport:
    """
    SPM(<=n) is an up-set of SPM(<=big_n), closed under the meets and joins
    read off the big diagram, which agree with inf_infinite / sup_infinite,
    and every SPM(i) is a sublattice of it.
    """
    if big_n < n:
        raise ValueError("the enclosing filter must be at least as large")
    report = FilterReport(n=n, big_n=big_n)
    big = build_upto(big_n, budget=budget)
    members = [u for u, s in enumerate(big.nodes) if s.n <= n]
    small_mask = sum(1 << u for u in members)

    desc, anc = closure_masks(big)
    escaped = [str(big.nodes[u]) for u in members if anc[u] & ~small_mask]
    report.checks.append(CheckResult(name="upward-closed", passed=not escaped, failures=escaped))

    closure_failures = []
    for u, v in combinations_with_replacement(members, 2):
        s, t = InfinitePartition(big.nodes[u]), InfinitePartition(big.nodes[v])
        bound = [min(x, y) for x, y in zip(*_aligned(s, t))]
        if from_shot_vector(ShotVector(tuple(bound))) is None:
            report.fallback_activations += 1
        meet = extremum(desc[u] & desc[v], desc)
        join = extremum(anc[u] & anc[v], anc)
        if meet is None or join is None or not (small_mask >> meet & 1 and small_mask >> join & 1):
            closure_failures.append(f"{s};{t}: outside SPM(<={n})")
        elif big.nodes[meet] != inf_infinite(s, t).tail or big.nodes[join] != sup_infinite(s, t, budget).tail:
            closure_failures.append(f"{s};{t}: shot-vector meet/join disagree with the diagram")
    report.checks.append(CheckResult(
        name="meet-join-closed", passed=not closure_failures, failures=closure_failures,
    ))
    if report.fallback_activations:
        logger.info("SPM(<=%d) in SPM(<=%d): %d sup fallbacks", n, big_n, report.fallback_activations)

    small = build_upto(n, budget=budget)
    for i in range(n + 1):
        result = check_image_sublattice(build_bfs(i, budget), small, lambda s: s)
        report.checks.append(result.model_copy(update={"name": f"spm-{i}-sublattice"}))
    return report


def check_union_cover(n: int, budget: Optional[int] = None) -> CheckResult:
    """Every tail t in SPM(<=n) is the image of (t_1 + 1, t) in SPM(|t| + t_1 + 1)."""
    failures = []
    for i in range(n + 1):
        for t in build_bfs(i, budget).nodes:
            s = Partition((t.col(1) + 1,) + t.parts)
            if not is_spm(s) or embed_pi(s).tail != t:
                failures.append(str(t))
    return CheckResult(name="union-cover", passed=not failures, failures=failures)
