# spm/models.py

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Optional

import networkx as nx

from spm.core.errors import NodeNotInDiagramError, NotAPartitionError
from spm.schemas import QClassReport


# 🧱 Partition
@dataclass(frozen=True, order=True, slots=True)
class Partition:
    """
    A sand pile: weakly decreasing positive column heights, first column first.
    Trailing zeros are dropped, so the 0-grain pile is the empty sequence.
    """
    parts: tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        while parts and parts[-1] == 0:
            parts = parts[:-1]
        if any(p <= 0 for p in parts):
            raise NotAPartitionError(f"column heights must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise NotAPartitionError(f"column heights must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        return cls(parts)

    @property
    def n(self) -> int:
        """Total grain count."""
        return sum(self.parts)

    def col(self, i: int) -> int:
        """Height of column i (1-based), 0 past the end."""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, idx):
        return self.parts[idx]

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"Partition({str(self)})"


class HeightClass(str, Enum):
    STEP = "step"          # d_i = 1
    PLATEAU = "plateau"    # d_i = 0
    CLIFF = "cliff"        # d_i >= 2


class Ordering(str, Enum):
    """Comparison of a against b; ABOVE means a >= b (b is reachable from a)."""
    ABOVE = "above"
    BELOW = "below"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"

    @property
    def a_geq_b(self) -> bool:
        return self in (Ordering.ABOVE, Ordering.EQUAL)

    @property
    def b_geq_a(self) -> bool:
        return self in (Ordering.BELOW, Ordering.EQUAL)


# 🕸 Diagram
class DiagramKind(str, Enum):
    SINGLE = "single"
    UPTO = "upto"


Edge = tuple[int, int, int]  # (source id, label, target id)


@dataclass(frozen=True)
class Diagram:
    """
    Labelled DAG of interned partitions.

    Single-n diagrams hold SPM(n) with fall labels. Up-to diagrams hold SPM(<=n)
    in infinite coordinates: every node is the tail of an SPM(infinity) element,
    inter-level edges carry label 1 and intra-level falls carry column + 1.
    """
    kind: DiagramKind
    n: int
    nodes: tuple[Partition, ...]
    edges: tuple[Edge, ...]
    index: dict = field(default=None, compare=False, repr=False)
    _out: tuple = field(default=None, compare=False, repr=False)
    _in: tuple = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {s: i for i, s in enumerate(self.nodes)})
        out: list[list[tuple[int, int]]] = [[] for _ in self.nodes]
        inc: list[list[tuple[int, int]]] = [[] for _ in self.nodes]
        for u, label, v in self.edges:
            out[u].append((label, v))
            inc[v].append((label, u))
        object.__setattr__(self, "_out", tuple(tuple(x) for x in out))
        object.__setattr__(self, "_in", tuple(tuple(x) for x in inc))

    @classmethod
    def from_adjacency(
        cls,
        kind: DiagramKind,
        n: int,
        root: Partition,
        adjacency: Mapping[Partition, Iterable[tuple[int, Partition]]],
    ) -> "Diagram":
        """Intern nodes in BFS discovery order from root, exploring labels ascending."""
        ids: dict[Partition, int] = {root: 0}
        nodes = [root]
        edges: list[Edge] = []
        queue = deque([root])
        while queue:
            s = queue.popleft()
            for label, t in sorted(adjacency.get(s, ())):
                if t not in ids:
                    ids[t] = len(nodes)
                    nodes.append(t)
                    queue.append(t)
                edges.append((ids[s], label, ids[t]))
        if len(nodes) != len(adjacency):
            unreached = len(adjacency) - len(nodes)
            raise ValueError(f"{unreached} nodes are not reachable from {root!r}")
        edges.sort()
        return cls(kind=kind, n=n, nodes=tuple(nodes), edges=tuple(edges))

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, s: Partition) -> bool:
        return s in self.index

    def node_id(self, s: Partition) -> int:
        try:
            return self.index[s]
        except KeyError:
            raise NodeNotInDiagramError(f"{s!r} is not a node of this diagram") from None

    def out_edges(self, u: int) -> tuple[tuple[int, int], ...]:
        """(label, target id) pairs leaving node u, labels ascending."""
        return self._out[u]

    def in_edges(self, v: int) -> tuple[tuple[int, int], ...]:
        return self._in[v]

    def sources(self) -> list[int]:
        return [u for u in range(len(self.nodes)) if not self._in[u]]

    def sinks(self) -> list[int]:
        return [u for u in range(len(self.nodes)) if not self._out[u]]

    def edge_triples(self) -> set[tuple[Partition, int, Partition]]:
        return {(self.nodes[u], label, self.nodes[v]) for u, label, v in self.edges}

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.nodes)))
        for u, label, v in self.edges:
            g.add_edge(u, v, label=label)
        return g


# ♾ SPM(infinity)
@dataclass(frozen=True, order=True, slots=True)
class InfinitePartition:
    """(inf, s_2, ..., s_k); only the finite tail is stored."""
    tail: Partition = field(default_factory=Partition)

    def __str__(self) -> str:
        return "~" if not self.tail.parts else f"~,{self.tail}"


@dataclass(frozen=True, slots=True)
class ShotVector:
    """counts[i-1] = number of firings of column i needed from (inf)."""
    counts: tuple[int, ...] = ()

    def padded(self, length: int) -> tuple[int, ...]:
        return self.counts + (0,) * (length - len(self.counts))


# 🪜 Stratification (module incremental)
@dataclass(frozen=True)
class Stratification:
    n: int
    p_sets: tuple[frozenset, ...]   # p_sets[i-1] = P_i
    i_sets: tuple[frozenset, ...]   # P_i with a grain on column i
    c_sets: tuple[frozenset, ...]   # P_i with a grain on column i+1

    def p(self, i: int) -> frozenset:
        return self.p_sets[i - 1] if 1 <= i <= len(self.p_sets) else frozenset()


@dataclass(frozen=True)
class GeneratingPartition:
    k: int
    body: Partition
    l: int
    r: int


@dataclass(frozen=True)
class QClass:
    k: int
    members: frozenset
    maximum: Optional[Partition]
    report: Optional[QClassReport] = None


# 🌳 SPT(infinity)
@dataclass(frozen=True)
class TreeLevels:
    """
    SPT(infinity) materialized below `root` down to `depth` levels.
    levels[j] holds the nodes j grain additions below the root.
    """
    root: Partition
    depth: int
    levels: tuple[tuple[Partition, ...], ...]
    children: dict = field(compare=False, repr=False)   # node -> ((label, son), ...)
    father: dict = field(compare=False, repr=False)     # node -> (father, label)
    level_of: dict = field(compare=False, repr=False)
    nk_roots: dict = field(compare=False, repr=False)   # node -> frozenset of k it roots N_k for
    xk_root: dict = field(compare=False, repr=False)    # node -> largest k it roots X_k for (0 = none)
    memberships: dict = field(compare=False, repr=False)  # node -> frozenset of i with node in some N_i

    def __contains__(self, s: Partition) -> bool:
        return s in self.level_of

    def nodes(self) -> Iterator[Partition]:
        for level in self.levels:
            yield from level

    def ids(self) -> dict[Partition, int]:
        return {s: i for i, s in enumerate(self.nodes())}

    def father_edges(self) -> list[tuple[int, int, int]]:
        """(father id, label, son id), sons in creation order."""
        ids = self.ids()
        return [
            (ids[s], label, ids[t])
            for s in self.nodes()
            for label, t in self.children.get(s, ())
        ]


@dataclass(frozen=True)
class ChainDecomposition:
    chain: tuple[tuple[int, Partition], ...]
    labels: tuple[int, ...]                            # labels[j] leads from chain[j] to chain[j+1]
    attachments: tuple[tuple[int, int, Partition], ...]  # (level, m, root) for an X_m hanging there


# 🔢 Counting
@dataclass
class CountTables:
    """p[i][n] = |P_i(n)|; spm_size[n] = |SPM(n)|."""
    variant: str
    p: list[list[int]] = field(default_factory=list)
    spm_size: list[int] = field(default_factory=list)
    c: dict = field(default_factory=dict)  # (l, k) -> paths of length l from an X_k root
    d: dict = field(default_factory=dict)  # (m, k) -> paths of length m from an N_k root

    @property
    def max_n(self) -> int:
        return len(self.spm_size) - 1

    def p_at(self, i: int, n: int) -> int:
        if n < 0 or i < 0 or i >= len(self.p) or n >= len(self.p[i]):
            return 0
        return self.p[i][n]
