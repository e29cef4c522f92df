# tests/test_sptree.py
import pytest

from spm.core.errors import CharacterizationError, InsufficientDepthError, NodeNotInDiagramError
from spm.core.partition import fixed_point
from spm.counting import c_structural
from spm.sptree import (
    build_tree,
    chain_decomposition,
    chain_rows,
    check_fathers,
    check_labels_bounded,
    check_n1_chains,
    check_nk_structure,
    count_paths_oracle,
    expected_attachments,
    export_tree_dot,
    father,
    is_nk_root,
    is_xk_root,
    sons,
    subchain,
    successors_via_tree,
    xk_order,
)
from tests.conftest import P


def test_sons_follow_the_stairs():
    assert sons(P(2, 1)) == [(1, P(3, 1)), (2, P(2, 2)), (3, P(2, 1, 1))]
    assert sons(P()) == [(1, P(1))]
    assert sons(P(2)) == [(1, P(3))]


def test_father_rule():
    assert father(P()) is None
    assert father(P(2, 2)) == P(2, 1)
    assert father(P(3, 1)) == P(2, 1)
    assert father(P(2, 1)) == P(1, 1)
    with pytest.raises(CharacterizationError):
        father(P(2, 2, 2))


def test_subtree_roots():
    assert is_nk_root(P(2), 1)
    assert is_nk_root(P(2, 2), 2)
    assert is_nk_root(P(3, 3, 1), 2)
    assert not is_nk_root(P(2, 2, 1), 2)
    assert not is_nk_root(P(2, 1), 1)
    assert [xk_order(s) for s in (P(), P(1), P(1, 1), P(2), P(2, 1), P(3, 2, 1))] == [0, 1, 0, 1, 2, 3]
    assert is_xk_root(P(2, 1), 1) and is_xk_root(P(2, 1), 2)
    assert not is_xk_root(P(2, 1), 3)


def test_levels_are_spm(spm):
    t = build_tree(9)
    assert [len(level) for level in t.levels] == [len(spm[n]) for n in range(10)]
    for n in range(10):
        assert set(t.levels[n]) == set(spm[n].nodes)


def test_structural_checks_hold():
    t = build_tree(9)
    for check in (check_fathers, check_nk_structure, check_n1_chains, check_labels_bounded):
        result = check(t)
        assert result.passed, (result.name, result.failures[:5])


def test_memberships_and_successor_labels():
    t = build_tree(4)
    assert t.nk_roots[P(2, 2)] == {2}
    assert t.xk_root[P(2, 2)] == 0
    assert t.memberships[P(2, 2)] == {2}
    assert successors_via_tree(P(2, 2), t) == {1, 3}
    assert successors_via_tree(P(2, 1), t) == {1}
    with pytest.raises(NodeNotInDiagramError):
        successors_via_tree(P(5), t)


def test_subtree_below_a_root_inherits_memberships():
    t = build_tree(0, root=P(2, 2))
    assert t.memberships[P(2, 2)] == {2}
    assert t.levels == ((P(2, 2),),)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_path_counts_match_structural_c(k):
    root = fixed_point(k * (k + 1) // 2)
    t = build_tree(6, root)
    assert [count_paths_oracle(t, root, l, k) for l in range(7)] == [c_structural(l, k) for l in range(7)]


def test_path_count_edge_cases():
    root = P(2, 1)
    t = build_tree(2, root)
    assert count_paths_oracle(t, root, 0, 2) == 1
    assert count_paths_oracle(t, root, 1, 2) == 2
    assert count_paths_oracle(t, root, 2, 0) == 0
    with pytest.raises(InsufficientDepthError):
        count_paths_oracle(t, root, 3, 1)
    with pytest.raises(NodeNotInDiagramError):
        count_paths_oracle(t, P(4), 1, 1)


def test_chain_decomposition_depth7():
    c = chain_decomposition(7)
    assert [s for _, s in c.chain] == [fixed_point(n) for n in range(8)]
    assert c.labels == (1, 2, 1, 3, 2, 1, 4)
    assert [(level, m) for level, m, _ in c.attachments] == [(1, 1), (3, 2), (4, 1), (6, 3)]
    assert expected_attachments(7) == [(1, 1), (3, 2), (4, 1), (6, 3)]


@pytest.mark.parametrize("depth", [1, 5, 12, 20])
def test_chain_attachments_follow_staircases(depth):
    c = chain_decomposition(depth)
    assert [(level, m) for level, m, _ in c.attachments] == expected_attachments(depth)


def test_chain_rows():
    rows = chain_rows(chain_decomposition(4))
    assert [(r.level, r.node, r.attachment) for r in rows] == [
        (0, "", ""), (1, "1", "X_1"), (2, "1,1", ""), (3, "2,1", "X_2"), (4, "2,1,1", ""),
    ]


def test_subchain():
    assert subchain(2) == [(3, P(2, 1, 1)), (2, P(2, 2, 1)), (1, P(3, 2, 1))]


def test_export_tree_dot():
    assert export_tree_dot(build_tree(1)) == (
        b'digraph spt_1 {\n  p_0 [label=""];\n  p_1 [label="1"];\n  p_0 -> p_1 [label="1"];\n}\n'
    )


def test_negative_depth():
    with pytest.raises(ValueError):
        build_tree(-1)
    with pytest.raises(ValueError):
        chain_decomposition(0)


def test_worked_tree_examples():
    assert sons(P(2, 2)) == [(1, P(3, 2))]
    assert is_nk_root(P(4, 2, 1), 1)
    assert xk_order(P(3, 2, 1)) == 3
    t = build_tree(6)
    assert successors_via_tree(P(4, 2), t) == {1, 2, 3}
    assert successors_via_tree(P(3, 2, 1), t) == {1}
    root = P(3, 2, 1)
    assert count_paths_oracle(build_tree(2, root), root, 2, 3) == 4
