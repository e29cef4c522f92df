# spm/sptree.py
"""
SPT(infinity): the tree whose level n holds SPM(n). The sons of s are
s with one more grain on column i for i = 1, ..., e(s)+1.
"""
import logging
from typing import Optional

from spm.config import settings
from spm.core.errors import (
    BudgetExceededError,
    CharacterizationError,
    InsufficientDepthError,
    NodeNotInDiagramError,
)
from spm.core.partition import add_grain, fixed_point, is_spm, stair_length, triangular
from spm.models import ChainDecomposition, Partition, TreeLevels
from spm.schemas import CheckResult, ChainRow

logger = logging.getLogger(__name__)


def _d(s: Partition, i: int) -> int:
    return s.col(i) - s.col(i + 1)


def sons(s: Partition) -> list[tuple[int, Partition]]:
    """(label, son) pairs, the i-th son carrying label i."""
    return [(i, add_grain(s, i)) for i in range(1, stair_length(s) + 2)]


def father(s: Partition) -> Optional[Partition]:
    """The unique node having s as a son; None for the root ()."""
    if not s.parts:
        return None
    found = []
    for i in range(1, len(s) + 1):
        if s.col(i) - 1 < s.col(i + 1):
            continue
        parts = list(s.parts)
        parts[i - 1] -= 1
        f = Partition(tuple(parts))
        if i <= stair_length(f) + 1 and is_spm(f):
            found.append(f)
    if len(found) != 1:
        raise CharacterizationError(f"{s!r} has {len(found)} candidate fathers in SPT(infinity)")
    return found[0]


# -------------------------------------------------
# 🏷 Subtree roots
# -------------------------------------------------
def is_nk_root(s: Partition, k: int) -> bool:
    """Steps on columns 1..k-2, a plateau at k-1 and a cliff at k."""
    if k < 1 or len(s) < k:
        return False
    if any(_d(s, j) != 1 for j in range(1, k - 1)):
        return False
    if k >= 2 and _d(s, k - 1) != 0:
        return False
    return _d(s, k) >= 2


def xk_order(s: Partition) -> int:
    """Largest k such that s roots an X_k subtree, 0 when none."""
    e = stair_length(s)
    return e + 1 if _d(s, e + 1) >= 2 else e


def is_xk_root(s: Partition, k: int) -> bool:
    """At least k sons, the i-th rooting an N_i subtree for 1 <= i <= k."""
    return 1 <= k <= xk_order(s)


# -------------------------------------------------
# 🌳 Materialization
# -------------------------------------------------
def _memberships_above(s: Partition) -> frozenset:
    ks: set[int] = set()
    node = father(s)
    while node is not None:
        ks.update(k for k in range(1, len(node) + 1) if is_nk_root(node, k))
        node = father(node)
    return frozenset(ks)


def build_tree(depth: int, root: Optional[Partition] = None, budget: Optional[int] = None) -> TreeLevels:
    """The subtree below `root` (default the empty pile) down to `depth` levels, sons by label."""
    if depth < 0:
        raise ValueError("depth must be non-negative")
    root = Partition() if root is None else root
    budget = settings.SPM_BUDGET if budget is None else budget
    inherited = _memberships_above(root)

    levels = [(root,)]
    children: dict = {}
    fathers: dict = {}
    level_of = {root: 0}
    nk_roots: dict = {}
    xk_root: dict = {}
    memberships: dict = {}
    total = 1

    def annotate(s: Partition, above: frozenset) -> None:
        own = frozenset(k for k in range(1, len(s) + 1) if is_nk_root(s, k))
        nk_roots[s] = own
        xk_root[s] = xk_order(s)
        memberships[s] = above | own

    annotate(root, inherited)
    for level in range(1, depth + 1):
        current = []
        for s in levels[-1]:
            kids = tuple(sons(s))
            children[s] = kids
            for label, t in kids:
                fathers[t] = (s, label)
                level_of[t] = level
                annotate(t, memberships[s])
                current.append(t)
        total += len(current)
        if total > budget:
            raise BudgetExceededError(budget)
        levels.append(tuple(current))
        logger.debug("tree level %d: %d nodes", level, len(current))
    logger.info("tree below %s materialized to depth %d: %d nodes", root, depth, total)
    return TreeLevels(
        root=root,
        depth=depth,
        levels=tuple(levels),
        children=children,
        father=fathers,
        level_of=level_of,
        nk_roots=nk_roots,
        xk_root=xk_root,
        memberships=memberships,
    )


def successors_via_tree(s: Partition, t: TreeLevels) -> set[int]:
    """SPM(infinity) successor labels of (inf, s), read from the N_i subtrees containing s."""
    if s not in t:
        raise NodeNotInDiagramError(f"{s!r} is not materialized in this tree")
    return {1} | {i + 1 for i in t.memberships[s]}


def count_paths_oracle(t: TreeLevels, root: Partition, l: int, k: int) -> int:
    """Paths of length l from root inside the X_k subtree it roots (first k sons, then everything)."""
    if root not in t:
        raise NodeNotInDiagramError(f"{root!r} is not materialized in this tree")
    if t.level_of[root] + l > t.depth:
        raise InsufficientDepthError(
            f"need depth {t.level_of[root] + l}, tree is materialized to {t.depth}"
        )
    if k < 1:
        return 0
    if l == 0:
        return 1
    frontier = [son for label, son in t.children[root] if label <= k]
    for _ in range(l - 1):
        frontier = [son for s in frontier for _, son in t.children[s]]
    return len(frontier)


# -------------------------------------------------
# ⛓ Rightmost chain
# -------------------------------------------------
def chain_decomposition(depth: int) -> ChainDecomposition:
    """
    Follow the last son from () for `depth` steps. Every chain node strictly
    above `depth` with an X_m subtree hanging off it records an attachment.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    node = Partition()
    chain = [(0, node)]
    labels = []
    attachments = []
    for level in range(depth):
        m = xk_order(node)
        if m:
            attachments.append((level, m, node))
        label = stair_length(node) + 1
        node = add_grain(node, label)
        labels.append(label)
        chain.append((level + 1, node))
    return ChainDecomposition(chain=tuple(chain), labels=tuple(labels), attachments=tuple(attachments))


def chain_rows(c: ChainDecomposition) -> list[ChainRow]:
    hanging = {level: f"X_{m}" for level, m, _ in c.attachments}
    return [ChainRow(level=level, node=str(s), attachment=hanging.get(level, "")) for level, s in c.chain]


def subchain(k: int) -> list[tuple[int, Partition]]:
    """(label, node) steps from the staircase of height k to the one of height k+1."""
    node = fixed_point(triangular(k))
    steps = []
    for _ in range(k + 1):
        label = stair_length(node) + 1
        node = add_grain(node, label)
        steps.append((label, node))
    return steps


def expected_attachments(depth: int) -> list[tuple[int, int]]:
    """(level, m): X_k at k(k+1)/2, then X_m at k(k+1)/2 + (k-m) for m = k-1, ..., 1."""
    expected = []
    k = 1
    while triangular(k) < depth:
        base = triangular(k)
        expected.append((base, k))
        expected += [(base + k - m, m) for m in range(k - 1, 0, -1)]
        k += 1
    return [(level, m) for level, m in expected if level < depth]


# -------------------------------------------------
# ✅ Structural checks
# -------------------------------------------------
def check_nk_structure(t: TreeLevels) -> CheckResult:
    """Below each N_k root (k >= 2): the chain labelled k-1, ..., 1 and its X attachments."""
    failures = []
    for s, ks in t.nk_roots.items():
        for k in ks:
            if k < 2 or t.level_of[s] + k - 1 > t.depth:
                continue
            chain = [s]
            for label in range(k - 1, 0, -1):
                step = dict(t.children[chain[-1]]).get(label)
                if step is None:
                    break
                chain.append(step)
            if len(chain) != k:
                failures.append(f"N_{k}@{s}: chain broken after {len(chain)} nodes")
                continue
            for i in range(1, k - 1):
                if not is_xk_root(chain[i - 1], k - 1 - i):
                    failures.append(f"N_{k}@{s}: node {i} ({chain[i - 1]}) is not an X_{k - 1 - i} root")
            if not is_xk_root(chain[-1], k):
                failures.append(f"N_{k}@{s}: node {k} ({chain[-1]}) is not an X_{k} root")
    return CheckResult(name="nk-structure", passed=not failures, failures=failures)


def check_n1_chains(t: TreeLevels) -> CheckResult:
    """An N_1 root has a single son, through label 1, which is again an N_1 root."""
    failures = []
    for s, ks in t.nk_roots.items():
        if 1 not in ks or t.level_of[s] >= t.depth:
            continue
        kids = t.children[s]
        if len(kids) != 1 or kids[0][0] != 1 or 1 not in t.nk_roots[kids[0][1]]:
            failures.append(str(s))
    return CheckResult(name="n1-chains", passed=not failures, failures=failures)


def check_labels_bounded(t: TreeLevels) -> CheckResult:
    """Inside an N_k subtree no edge label exceeds k."""
    failures = [
        f"{s}->{son}"
        for s, kids in t.children.items()
        if t.memberships[s]
        for label, son in kids
        if label > min(t.memberships[s])
    ]
    return CheckResult(name="labels-bounded", passed=not failures, failures=failures)


def check_fathers(t: TreeLevels) -> CheckResult:
    failures = [str(s) for s, (f, _) in t.father.items() if father(s) != f]
    return CheckResult(name="father-rule", passed=not failures, failures=failures)


# -------------------------------------------------
# 📤 Export
# -------------------------------------------------
def export_tree_dot(t: TreeLevels) -> bytes:
    lines = [f"digraph spt_{t.depth} {{"]
    lines += [f'  p_{i} [label="{s}"];' for i, s in enumerate(t.nodes())]
    lines += [f'  p_{u} -> p_{v} [label="{label}"];' for u, label, v in t.father_edges()]
    lines.append("}")
    return ("\n".join(lines) + "\n").encode()
