# tests/test_partition.py
import pytest

from spm.core.errors import (
    ColumnOutOfRangeError,
    NotAPartitionError,
    RuleNotApplicableError,
    SpmError,
)
from spm.core.partition import (
    add_grain,
    can_add_grain,
    classify,
    cliff_back_path,
    cliffs,
    fall,
    fixed_point,
    format_partition,
    height_diff,
    is_spm,
    lift_successors,
    parse_partition,
    partitions_of,
    rank,
    stair_length,
    successors,
    triangular,
    triangular_root,
)
from spm.models import HeightClass, Partition
from tests.conftest import P


def test_partition_drops_trailing_zeros_and_validates():
    assert P(3, 1, 0, 0) == P(3, 1)
    assert P().n == 0
    with pytest.raises(NotAPartitionError):
        P(1, 2)
    with pytest.raises(NotAPartitionError):
        P(2, -1)


def test_col_is_zero_past_the_end():
    s = P(4, 2, 1)
    assert [s.col(i) for i in range(1, 6)] == [4, 2, 1, 0, 0]
    assert len(s) == 3 and s.n == 7


def test_height_diff_and_classify():
    s = P(3, 2, 2)
    assert height_diff(s, 1) == 1
    assert classify(s, 1) is HeightClass.STEP
    assert classify(s, 2) is HeightClass.PLATEAU
    assert classify(s, 3) is HeightClass.CLIFF
    with pytest.raises(ColumnOutOfRangeError):
        height_diff(s, 4)
    with pytest.raises(ValueError):
        height_diff(s, 0)


@pytest.mark.parametrize("parts, e", [((3, 2, 1), 3), ((2, 2), 0), ((4, 3, 1), 1), ((4, 3, 2, 1), 4), ((), 0), ((1,), 1)])
def test_stair_length(parts, e):
    assert stair_length(Partition(parts)) == e


def test_fall_moves_one_grain_right():
    assert fall(P(4, 2), 1) == P(3, 3)
    assert fall(P(4, 2), 2) == P(4, 1, 1)
    with pytest.raises(RuleNotApplicableError):
        fall(P(3, 3), 1)
    with pytest.raises(SpmError):
        fall(P(3, 2), 1)


def test_successors_are_label_ordered():
    assert successors(P(4, 2)) == [(1, P(3, 3)), (2, P(4, 1, 1))]
    assert cliffs(P(3, 2, 1)) == []
    assert successors(P()) == []


def test_fall_raises_rank_by_one():
    for s in partitions_of(9):
        for _, t in successors(s):
            assert rank(t) == rank(s) + 1


def test_add_grain():
    assert add_grain(P(2, 1), 3) == P(2, 1, 1)
    assert add_grain(P(), 1) == P(1)
    assert not can_add_grain(P(2, 2), 2)
    with pytest.raises(NotAPartitionError):
        add_grain(P(2, 2), 2)
    with pytest.raises(NotAPartitionError):
        add_grain(P(2, 1), 5)


def test_lift_successors_and_back_path():
    assert lift_successors(P(2, 2), 1) == {(2, P(3, 1, 1))}
    path = cliff_back_path(P(4, 3, 1), 2)
    assert path == [(2, P(5, 2, 2)), (1, P(4, 3, 2))]
    assert path[-1][1] == add_grain(P(4, 3, 1), 3)


@pytest.mark.parametrize("n, expected", [
    (0, ()), (1, (1,)), (3, (2, 1)), (4, (2, 1, 1)), (5, (2, 2, 1)), (7, (3, 2, 1, 1)), (10, (4, 3, 2, 1)),
])
def test_fixed_point(n, expected):
    assert fixed_point(n) == Partition(expected)


def test_triangular_helpers():
    assert [triangular(k) for k in range(5)] == [0, 1, 3, 6, 10]
    assert triangular_root(10) == 4
    assert triangular_root(11) is None


def test_is_spm_forbidden_factors():
    assert is_spm(P(3, 2, 1))
    assert is_spm(P(3, 3, 1))
    assert not is_spm(P(2, 2, 2))
    assert not is_spm(P(2, 2, 1, 1))
    assert not is_spm(P(3, 3, 2, 1, 1))
    assert is_spm(P(4, 4, 2, 2))


def test_partitions_of_counts():
    assert [sum(1 for _ in partitions_of(n)) for n in range(8)] == [1, 1, 2, 3, 5, 7, 11, 15]
    assert list(partitions_of(3)) == [P(3), P(2, 1), P(1, 1, 1)]


def test_parse_and_format():
    assert parse_partition("4,2,1") == P(4, 2, 1)
    assert parse_partition(" ") == P()
    assert format_partition(P(4, 2, 1)) == "4,2,1"
    with pytest.raises(NotAPartitionError):
        parse_partition("4,x")
    with pytest.raises(NotAPartitionError):
        parse_partition("1,2")


def test_worked_examples():
    assert height_diff(P(3, 1), 1) == 2
    assert height_diff(P(2, 2), 2) == 2
    assert classify(P(3, 1), 1) is HeightClass.CLIFF
    assert stair_length(P(2, 1)) == 2
    assert fall(P(3, 1), 1) == P(2, 2)
    assert successors(P(4, 2, 1)) == [(1, P(3, 3, 1))]
    assert not is_spm(P(3, 3, 2, 2))
    assert fixed_point(11) == P(4, 3, 2, 1, 1)
