# spm/diagram.py
"""
SPM(n) as a labelled DAG: the brute-force BFS construction (the oracle every
other construction is compared with), the order, meets and joins, lattice
verification and DOT/JSON serialization.
"""
import logging
from collections import deque
from itertools import accumulate, combinations_with_replacement
from typing import Callable, Literal, Optional

import networkx as nx
from pydantic import ValidationError

from spm.config import settings
from spm.core.errors import BudgetExceededError, GrainCountMismatchError, MalformedDocumentError, SpmError
from spm.core.partition import fixed_point, is_spm, rank, successors
from spm.models import Diagram, DiagramKind, Ordering, Partition
from spm.schemas import CheckResult, DiagramDocument, LatticeReport

logger = logging.getLogger(__name__)

Coords = Literal["finite", "infinite"]


# -------------------------------------------------
# 🏗 Construction
# -------------------------------------------------
def build_bfs(n: int, budget: Optional[int] = None) -> Diagram:
    """Every partition reachable from (n) under the fall rule, with all transitions."""
    if n < 0:
        raise ValueError("grain count must be non-negative")
    budget = settings.SPM_BUDGET if budget is None else budget
    top = Partition((n,))
    adjacency: dict[Partition, list[tuple[int, Partition]]] = {}
    queue = deque([top])
    seen = {top}
    while queue:
        s = queue.popleft()
        succ = successors(s)
        adjacency[s] = succ
        for _, t in succ:
            if t not in seen:
                if len(seen) >= budget:
                    raise BudgetExceededError(budget)
                seen.add(t)
                queue.append(t)
    d = Diagram.from_adjacency(DiagramKind.SINGLE, n, top, adjacency)
    logger.info("SPM(%d) built by BFS: %d nodes, %d edges", n, len(d.nodes), len(d.edges))
    return d


def spm_elements(n: int, budget: Optional[int] = None) -> tuple[Partition, ...]:
    return build_bfs(n, budget).nodes


# -------------------------------------------------
# ⚖️ Order, meet and join
# -------------------------------------------------
def _prefix_sums(s: Partition, length: int) -> list[int]:
    padded = list(s.parts) + [0] * (length - len(s))
    return list(accumulate(padded))


def _check_same_n(a: Partition, b: Partition) -> None:
    if a.n != b.n:
        raise GrainCountMismatchError(f"{a!r} has {a.n} grains but {b!r} has {b.n}")


def leq(a: Partition, b: Partition) -> Ordering:
    """Dominance comparison: a >= b iff every prefix sum of a dominates b's."""
    _check_same_n(a, b)
    length = max(len(a), len(b))
    pa, pb = _prefix_sums(a, length), _prefix_sums(b, length)
    a_geq = all(x >= y for x, y in zip(pa, pb))
    b_geq = all(y >= x for x, y in zip(pa, pb))
    if a_geq and b_geq:
        return Ordering.EQUAL
    if a_geq:
        return Ordering.ABOVE
    if b_geq:
        return Ordering.BELOW
    return Ordering.INCOMPARABLE


def infimum(a: Partition, b: Partition) -> Partition:
    """The partition whose prefix sums are the pointwise minimum of a's and b's."""
    _check_same_n(a, b)
    length = max(len(a), len(b))
    mins = [min(x, y) for x, y in zip(_prefix_sums(a, length), _prefix_sums(b, length))]
    return Partition(tuple(hi - lo for hi, lo in zip(mins, [0] + mins[:-1])))


def closure_masks(d: Diagram) -> tuple[list[int], list[int]]:
    """Per node, bitmasks of its descendants and ancestors (reflexive)."""
    g = d.to_networkx()
    desc, anc = [0] * len(d), [0] * len(d)
    for u in reversed(list(nx.topological_sort(g))):
        mask = 1 << u
        for _, v in d.out_edges(u):
            mask |= desc[v]
        desc[u] = mask
    for u in nx.topological_sort(g):
        mask = 1 << u
        for _, v in d.in_edges(u):
            mask |= anc[v]
        anc[u] = mask
    return desc, anc


def extremum(common: int, cone: list[int]) -> Optional[int]:
    """The c in `common` whose cone equals `common` (the unique least/greatest)."""
    rest = common
    while rest:
        c = (rest & -rest).bit_length() - 1
        if cone[c] == common:
            return c
        rest &= rest - 1
    return None


def supremum(a: Partition, b: Partition, d: Diagram) -> Partition:
    """Least common ancestor of a and b in d."""
    ua, ub = d.node_id(a), d.node_id(b)
    _, anc = closure_masks(d)
    c = extremum(anc[ua] & anc[ub], anc)
    if c is None:
        raise SpmError(f"{a!r} and {b!r} have no least common ancestor")
    return d.nodes[c]


def diagram_infimum(a: Partition, b: Partition, d: Diagram) -> Partition:
    """Greatest common descendant of a and b in d."""
    ua, ub = d.node_id(a), d.node_id(b)
    desc, _ = closure_masks(d)
    c = extremum(desc[ua] & desc[ub], desc)
    if c is None:
        raise SpmError(f"{a!r} and {b!r} have no greatest common descendant")
    return d.nodes[c]


# -------------------------------------------------
# ✅ Verification
# -------------------------------------------------
def check_covering(d: Diagram) -> list[CheckResult]:
    """Acyclicity, rank gradedness and edges == transitive reduction."""
    g = d.to_networkx()
    acyclic = nx.is_directed_acyclic_graph(g)
    graded = all(rank(d.nodes[v]) == rank(d.nodes[u]) + 1 for u, _, v in d.edges)
    reduced = acyclic and set(nx.transitive_reduction(g).edges()) == set(g.edges())
    return [
        CheckResult(name="acyclic", passed=acyclic),
        CheckResult(name="rank-graded", passed=graded),
        CheckResult(name="edges-are-covering-relation", passed=reduced),
    ]


def check_lattice(d: Diagram) -> LatticeReport:
    """Exhaustive pairwise check that the single-n diagram is a lattice."""
    report = LatticeReport(n=d.n, nodes=len(d), edges=len(d.edges))
    sources, sinks = d.sources(), d.sinks()
    report.checks.append(CheckResult(
        name="unique-source", passed=sources == [0] and d.nodes[0] == Partition((d.n,)),
    ))
    report.checks.append(CheckResult(
        name="unique-sink", passed=len(sinks) == 1 and d.nodes[sinks[0]] == fixed_point(d.n),
    ))
    report.checks.append(CheckResult(
        name="all-nodes-spm", passed=all(is_spm(s) for s in d.nodes),
    ))
    report.checks.extend(check_covering(d))

    desc, anc = closure_masks(d)
    missing_join, missing_meet, formula_disagrees = [], [], []
    for u, v in combinations_with_replacement(range(len(d)), 2):
        a, b = d.nodes[u], d.nodes[v]
        if extremum(anc[u] & anc[v], anc) is None:
            missing_join.append(f"{a};{b}")
        meet = extremum(desc[u] & desc[v], desc)
        if meet is None:
            missing_meet.append(f"{a};{b}")
        elif infimum(a, b) != d.nodes[meet]:
            formula_disagrees.append(f"{a};{b}")
    report.checks.append(CheckResult(name="joins-exist", passed=not missing_join, failures=missing_join))
    report.checks.append(CheckResult(name="meets-exist", passed=not missing_meet, failures=missing_meet))
    report.checks.append(CheckResult(
        name="prefix-meet-equals-diagram-meet", passed=not formula_disagrees, failures=formula_disagrees,
    ))
    return report


def check_image_sublattice(
    small: Diagram, large: Diagram, lift: Callable[[Partition], Partition]
) -> CheckResult:
    """The image of `small` under `lift` is closed under meet and join inside `large`."""
    image = {large.node_id(lift(s)) for s in small.nodes}
    desc, anc = closure_masks(large)
    failures = []
    ids = sorted(image)
    for x, u in enumerate(ids):
        for v in ids[x:]:
            meet = extremum(desc[u] & desc[v], desc)
            join = extremum(anc[u] & anc[v], anc)
            if meet not in image or join not in image:
                failures.append(f"{large.nodes[u]};{large.nodes[v]}")
    return CheckResult(name="image-is-sublattice", passed=not failures, failures=failures)


# -------------------------------------------------
# 📤 Export / import
# -------------------------------------------------
def _node_text(s: Partition, d: Diagram, coords: Coords) -> str:
    if d.kind is DiagramKind.UPTO and coords == "infinite":
        return "~" if not s.parts else f"~,{s}"
    return str(s)


def _label_shift(d: Diagram, coords: Coords) -> int:
    return -1 if d.kind is DiagramKind.UPTO and coords == "finite" else 0


def to_document(d: Diagram, coords: Coords = "infinite") -> DiagramDocument:
    shift = _label_shift(d, coords)
    return DiagramDocument(
        kind=d.kind.value,
        n=d.n,
        coords=coords if d.kind is DiagramKind.UPTO else None,
        nodes=[list(s.parts) for s in d.nodes],
        edges=[[u, label + shift, v] for u, label, v in d.edges],
    )


def export(d: Diagram, format: Literal["dot", "json"], coords: Coords = "infinite") -> bytes:
    """Deterministic serialization of a diagram."""
    if format == "json":
        return to_document(d, coords).model_dump_json(exclude_none=True).encode()
    if format != "dot":
        raise ValueError(f"unknown export format: {format}")
    shift = _label_shift(d, coords)
    name = f"spm_{d.n}" if d.kind is DiagramKind.SINGLE else f"spm_upto_{d.n}"
    lines = [f"digraph {name} {{"]
    lines += [f'  p_{i} [label="{_node_text(s, d, coords)}"];' for i, s in enumerate(d.nodes)]
    lines += [f'  p_{u} -> p_{v} [label="{label + shift}"];' for u, label, v in d.edges]
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()


def import_json(data: bytes | str) -> Diagram:
    """Inverse of export(d, "json")."""
    try:
        doc = DiagramDocument.model_validate_json(data)
    except ValidationError as e:
        raise MalformedDocumentError(f"not a diagram document: {e.error_count()} validation errors") from e
    ids = range(len(doc.nodes))
    for edge in doc.edges:
        if len(edge) != 3 or edge[0] not in ids or edge[2] not in ids:
            raise MalformedDocumentError(f"edge {edge} does not join two of the {len(ids)} nodes")
    shift = -1 if doc.kind == "upto" and doc.coords == "finite" else 0
    return Diagram(
        kind=DiagramKind(doc.kind),
        n=doc.n,
        nodes=tuple(Partition(tuple(p)) for p in doc.nodes),
        edges=tuple((u, label - shift, v) for u, label, v in doc.edges),
    )
