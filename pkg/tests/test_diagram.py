# tests/test_diagram.py
import networkx as nx
import pytest

from spm.core.errors import (
    BudgetExceededError,
    GrainCountMismatchError,
    MalformedDocumentError,
    NodeNotInDiagramError,
)
from spm.core.partition import add_grain
from spm.diagram import (
    build_bfs,
    check_covering,
    check_image_sublattice,
    check_lattice,
    closure_masks,
    diagram_infimum,
    export,
    import_json,
    infimum,
    leq,
    spm_elements,
    supremum,
)
from spm.infinite import build_upto
from spm.models import DiagramKind, Ordering
from tests.conftest import P

SPM_SIZES = [1, 1, 2, 2, 4, 5, 6, 9]


def test_sizes_for_small_n(spm):
    assert [len(spm[n]) for n in range(len(SPM_SIZES))] == SPM_SIZES


def test_spm6_nodes_in_discovery_order(spm):
    d = spm[6]
    assert d.kind is DiagramKind.SINGLE
    assert d.nodes == (P(6), P(5, 1), P(4, 2), P(3, 3), P(4, 1, 1), P(3, 2, 1))
    assert d.edges == ((0, 1, 1), (1, 1, 2), (2, 1, 3), (2, 2, 4), (3, 2, 5), (4, 1, 5))


def test_spm7_contains_the_expected_elements(spm):
    assert set(spm_elements(7)) == {
        P(7), P(6, 1), P(5, 2), P(4, 3), P(5, 1, 1), P(4, 2, 1), P(3, 3, 1), P(3, 2, 2), P(3, 2, 1, 1),
    }
    assert spm[7].sinks() == [spm[7].node_id(P(3, 2, 1, 1))]
    assert spm[7].sources() == [0]


def test_budget_is_enforced():
    with pytest.raises(BudgetExceededError) as exc:
        build_bfs(7, budget=3)
    assert exc.value.exit_code == 3


def test_negative_n_is_rejected():
    with pytest.raises(ValueError):
        build_bfs(-1)


def test_leq_dominance():
    assert leq(P(4, 2), P(3, 3)) is Ordering.ABOVE
    assert leq(P(3, 3), P(4, 2)) is Ordering.BELOW
    assert leq(P(3, 3), P(3, 3)) is Ordering.EQUAL
    assert leq(P(3, 3), P(4, 1, 1)) is Ordering.INCOMPARABLE
    with pytest.raises(GrainCountMismatchError):
        leq(P(3), P(2, 1, 1))


def test_meet_and_join_of_incomparable_pairs(spm):
    assert infimum(P(3, 3), P(4, 1, 1)) == P(3, 2, 1)
    assert supremum(P(3, 3), P(4, 1, 1), spm[6]) == P(4, 2)
    assert infimum(P(4, 3), P(5, 1, 1)) == P(4, 2, 1)
    assert diagram_infimum(P(4, 3), P(5, 1, 1), spm[7]) == P(4, 2, 1)
    assert supremum(P(4, 3), P(5, 1, 1), spm[7]) == P(5, 2)


def test_supremum_needs_nodes_of_the_diagram(spm):
    with pytest.raises(NodeNotInDiagramError):
        supremum(P(2, 2, 2), P(3, 2, 1), spm[6])


@pytest.mark.parametrize("n", range(13))
def test_every_spm_is_a_lattice(spm, n):
    report = check_lattice(spm[n])
    assert report.passed, [c for c in report.checks if not c.passed]


def test_covering_checks_on_spm7(spm):
    assert all(c.passed for c in check_covering(spm[7]))


def test_image_of_smaller_diagram_is_a_sublattice(spm):
    result = check_image_sublattice(spm[5], spm[6], lambda s: add_grain(s, 1))
    assert result.passed


def test_json_import_restores_the_diagram(spm):
    d = spm[7]
    assert import_json(export(d, "json")) == d


@pytest.mark.parametrize("doc", [
    b'{"kind":"single","n":2,"nodes":[[2],[1,1]],"edges":[[0,1,5]]}',
    b'{"kind":"single","n":2,"nodes":[[2],[1,1]],"edges":[[-3,1,1]]}',
    b'{"kind":"single","n":2,"nodes":[[2],[1,1]],"edges":[[0,1]]}',
    b'{"kind":"sideways","n":2,"nodes":[],"edges":[]}',
    b"not json",
])
def test_json_import_rejects_malformed_documents(doc):
    with pytest.raises(MalformedDocumentError) as e:
        import_json(doc)
    assert e.value.exit_code == 2


def test_upto_finite_coordinates_shift_labels():
    d = build_upto(3)
    dot = export(d, "dot", coords="finite").decode()
    assert dot.startswith("digraph spm_upto_3 {\n")
    assert '  p_0 -> p_1 [label="0"];' in dot
    assert '  p_2 -> p_4 [label="1"];' in dot
    assert import_json(export(d, "json", coords="finite")) == d


def test_unknown_export_format(spm):
    with pytest.raises(ValueError):
        export(spm[3], "svg")


def test_small_diagrams(spm):
    assert set(spm[4].nodes) == {P(4), P(3, 1), P(2, 2), P(2, 1, 1)}
    assert len(spm[4].edges) == 3
    assert export(spm[0], "json") == b'{"kind":"single","n":0,"nodes":[[]],"edges":[]}'
    assert infimum(P(5, 2), P(4, 3)) == P(4, 3)
    assert supremum(P(7), P(3, 2, 2), spm[7]) == P(7)


def test_closure_masks_agree_with_networkx(spm):
    d = spm[9]
    desc, anc = closure_masks(d)
    g = d.to_networkx()
    for u in range(len(d)):
        assert desc[u] == sum(1 << v for v in nx.descendants(g, u) | {u})
        assert anc[u] == sum(1 << v for v in nx.ancestors(g, u) | {u})


def test_edge_triples(spm):
    assert (P(4, 2), 2, P(4, 1, 1)) in spm[6].edge_triples()
    assert len(spm[6].edge_triples()) == 6


@pytest.mark.parametrize("n", range(13))
def test_dominance_equals_reachability(spm, n):
    d = spm[n]
    desc, _ = closure_masks(d)
    for u, a in enumerate(d.nodes):
        for v, b in enumerate(d.nodes):
            assert leq(a, b).a_geq_b == bool(desc[u] >> v & 1), (a, b)
