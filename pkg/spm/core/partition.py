# spm/core/partition.py
"""
The SPM evolution rule on partitions and its closed-form characterizations.

Columns are 1-based throughout, and the height past the last column is 0.
"""
from math import isqrt
from typing import Iterator, Optional

from spm.core.errors import (
    ColumnOutOfRangeError,
    NotAPartitionError,
    RuleNotApplicableError,
)
from spm.models import HeightClass, Partition


def triangular(k: int) -> int:
    return k * (k + 1) // 2


def triangular_root(n: int) -> Optional[int]:
    """k with triangular(k) == n, or None."""
    k = (isqrt(8 * n + 1) - 1) // 2
    return k if triangular(k) == n else None


def _check_column(s: Partition, i: int) -> None:
    if not 1 <= i <= len(s):
        raise ColumnOutOfRangeError(f"column {i} out of range for {s!r} (1..{len(s)})")


def height_diff(s: Partition, i: int) -> int:
    """d_i(s) = s_i - s_{i+1}."""
    _check_column(s, i)
    return s.col(i) - s.col(i + 1)


def classify(s: Partition, i: int) -> HeightClass:
    d = height_diff(s, i)
    if d == 0:
        return HeightClass.PLATEAU
    if d == 1:
        return HeightClass.STEP
    return HeightClass.CLIFF


def stair_length(s: Partition) -> int:
    """e(s): length of the run of steps starting at column 1."""
    e = 0
    for i in range(1, len(s) + 1):
        if s.col(i) - s.col(i + 1) != 1:
            break
        e = i
    return e


def rank(s: Partition) -> int:
    """Sum of j * s_j; every fall raises it by exactly one."""
    return sum(j * p for j, p in enumerate(s.parts, start=1))


def fall(s: Partition, i: int) -> Partition:
    """One grain falls from column i onto column i+1."""
    if not 1 <= i <= len(s) or s.col(i) - s.col(i + 1) < 2:
        raise RuleNotApplicableError(f"no cliff at column {i} of {s!r}")
    parts = list(s.parts) + [0]
    parts[i - 1] -= 1
    parts[i] += 1
    return Partition(tuple(parts))


def cliffs(s: Partition) -> list[int]:
    return [i for i in range(1, len(s) + 1) if s.col(i) - s.col(i + 1) >= 2]


def successors(s: Partition) -> list[tuple[int, Partition]]:
    """(label, successor) pairs, labels ascending."""
    return [(i, fall(s, i)) for i in cliffs(s)]


def add_grain(s: Partition, i: int) -> Partition:
    """s with one more grain on column i (a new column when i = len(s) + 1)."""
    if not 1 <= i <= len(s) + 1:
        raise NotAPartitionError(f"cannot add a grain on column {i} of {s!r}")
    if i > 1 and s.col(i) + 1 > s.col(i - 1):
        raise NotAPartitionError(f"adding a grain on column {i} of {s!r} breaks monotonicity")
    parts = list(s.parts) + [0]
    parts[i - 1] += 1
    return Partition(tuple(parts))


def can_add_grain(s: Partition, i: int) -> bool:
    return 1 <= i <= len(s) + 1 and (i == 1 or s.col(i) < s.col(i - 1))


def lift_successors(s: Partition, i: int) -> set[tuple[int, Partition]]:
    """{(j, t with a grain on column i) : (j, t) in successors(s)}."""
    return {(j, add_grain(t, i)) for j, t in successors(s)}


def cliff_back_path(s: Partition, i: int) -> list[tuple[int, Partition]]:
    """
    From s with a grain on column 1, fire columns i, i-1, ..., 1 in turn.
    Returns the (label, partition) steps; the last partition is s with a
    grain on column i+1.
    """
    current = add_grain(s, 1)
    path = []
    for label in range(i, 0, -1):
        current = fall(current, label)
        path.append((label, current))
    return path


def is_spm(s: Partition) -> bool:
    """
    Membership in SPM(s.n): no factor p,p,p, no factor p,p,p-1,p-1, and a
    cliff between any two consecutive plateaus.
    """
    parts = s.parts
    k = len(parts)
    for j in range(k - 2):
        if parts[j] == parts[j + 1] == parts[j + 2]:
            return False
    for j in range(k - 3):
        p = parts[j]
        if parts[j + 1] == p and parts[j + 2] == p - 1 and parts[j + 3] == p - 1:
            return False
    plateaus = [j for j in range(1, k) if parts[j - 1] == parts[j]]
    for a, b in zip(plateaus, plateaus[1:]):
        if not any(s.col(c) - s.col(c + 1) >= 2 for c in range(a + 1, b)):
            return False
    return True


def fixed_point(n: int) -> Partition:
    """(k, k-1, ..., p+1, p, p, p-1, ..., 1) with triangular(k) <= n < triangular(k+1)."""
    if n < 0:
        raise ValueError("grain count must be non-negative")
    k = (isqrt(8 * n + 1) - 1) // 2
    p = n - triangular(k)
    parts = list(range(k, 0, -1))
    if p:
        parts.insert(k - p + 1, p)
    return Partition(tuple(parts))


def partitions_of(n: int, largest: Optional[int] = None) -> Iterator[Partition]:
    """All partitions of n, reverse lexicographic order."""
    largest = n if largest is None else min(largest, n)
    if n == 0:
        yield Partition()
        return
    for head in range(largest, 0, -1):
        for rest in partitions_of(n - head, head):
            yield Partition((head,) + rest.parts)


# -------------------------------------------------
# Textual syntax
# -------------------------------------------------
def parse_partition(text: str) -> Partition:
    """`4,2,1` -> Partition; the empty string is the 0-grain pile."""
    text = text.strip()
    if not text:
        return Partition()
    try:
        parts = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise NotAPartitionError(f"not a partition literal: {text!r}") from None
    if any(p <= 0 for p in parts):
        raise NotAPartitionError(f"partition literal needs positive parts: {text!r}")
    return Partition(parts)


def format_partition(s: Partition) -> str:
    return str(s)
