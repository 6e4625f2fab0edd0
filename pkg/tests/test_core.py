import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sandwich_csp.core import (
    NO,
    ColouredGraph,
    CompletionYes,
    FiniteStructure,
    Graph,
    HomYes,
    StructureInstance,
    all_pairs,
    complete_graph,
    completion_respects,
    cycle_graph,
    disjoint_union,
    empty_graph,
    graph_instance,
    hom_respects,
    induced_subgraph,
    is_isomorphic_small,
    is_yes,
    make_instance,
    path_graph,
    set_vertex_cap,
    star_graph,
    undetermined_pairs,
    vertex_cap,
)
from sandwich_csp.errors import OverlapError, RangeError, SignatureError, SizeError


@st.composite
def graphs(draw, max_n=7):
    n = draw(st.integers(0, max_n))
    pairs = all_pairs(n)
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, frozenset(p for p, c in zip(pairs, chosen) if c))


def test_instance_validation():
    inst = make_instance(3, [(0, 1), (2, 1)], [(0, 2)])
    assert inst.forced == {(0, 1), (1, 2)} and inst.forbidden == {(0, 2)}
    with pytest.raises(OverlapError):
        make_instance(2, [(0, 1)], [(1, 0)])
    with pytest.raises(RangeError):
        make_instance(3, [(0, 0)])
    with pytest.raises(RangeError):
        make_instance(3, [(0, 3)])
    with pytest.raises(RangeError):
        make_instance(-1)


def test_vertex_cap():
    old = vertex_cap()
    try:
        set_vertex_cap(5)
        with pytest.raises(SizeError):
            empty_graph(6)
        with pytest.raises(RangeError):
            set_vertex_cap(0)
    finally:
        set_vertex_cap(old)
    assert empty_graph(6).n == 6


def test_undetermined_pairs():
    assert undetermined_pairs(make_instance(3, [(0, 1)], [(0, 2)])) == [(1, 2)]
    assert undetermined_pairs(make_instance(2)) == [(0, 1)]
    assert undetermined_pairs(make_instance(4, all_pairs(4))) == []


def test_coloured_round_trip():
    inst = make_instance(4, [(0, 1), (2, 3)], [(1, 2)])
    cg = inst.to_coloured()
    assert isinstance(cg, ColouredGraph) and cg.blue == inst.forced and cg.red == inst.forbidden
    assert cg.to_instance() == inst
    with pytest.raises(OverlapError):
        ColouredGraph(2, {(0, 1)}, {(0, 1)})


def test_induced_subgraph():
    assert is_isomorphic_small(induced_subgraph(cycle_graph(4), [0, 1, 2]), path_graph(3))
    assert induced_subgraph(complete_graph(4), [0, 1]) == complete_graph(2)
    assert induced_subgraph(path_graph(4), [0, 3]) == empty_graph(2)
    with pytest.raises(RangeError):
        induced_subgraph(path_graph(3), [5])


def test_named_graphs_and_union():
    assert len(star_graph(3).edges) == 3 and star_graph(3).degree(0) == 3
    u = disjoint_union(complete_graph(3), empty_graph(1))
    assert u.n == 4 and u.degrees() == [2, 2, 2, 0]
    with pytest.raises(RangeError):
        cycle_graph(2)
    assert cycle_graph(5).complement().n == 5
    assert is_isomorphic_small(cycle_graph(5).complement(), cycle_graph(5))


def test_isomorphism_examples():
    c5 = cycle_graph(5)
    relabel = Graph(5, frozenset({(0, 2), (2, 4), (1, 4), (1, 3), (0, 3)}))
    assert is_isomorphic_small(c5, relabel)
    assert not is_isomorphic_small(disjoint_union(complete_graph(3), empty_graph(1)), path_graph(4))
    with pytest.raises(SizeError):
        is_isomorphic_small(empty_graph(11), empty_graph(11))


@settings(max_examples=200, deadline=None)
@given(graphs(), graphs())
def test_isomorphism_matches_networkx(g1, g2):
    def nxg(g):
        h = nx.Graph()
        h.add_nodes_from(range(g.n))
        h.add_edges_from(g.edges)
        return h
    assert is_isomorphic_small(g1, g2) == nx.is_isomorphic(nxg(g1), nxg(g2))


@given(graphs())
def test_complement_and_masks(g):
    co = g.complement()
    assert co.complement() == g
    assert g.edges | co.edges == frozenset(all_pairs(g.n)) and not g.edges & co.edges
    assert Graph.from_masks(g.adj) == g
    inst = graph_instance(g)
    assert undetermined_pairs(inst) == []


def test_structure_validation():
    s = FiniteStructure(2, (("E", 2),), {"E": {(0, 1)}})
    assert s.arity("E") == 2 and s == FiniteStructure(2, (("E", 2),), {"E": [(0, 1)]})
    assert hash(s) == hash(FiniteStructure(2, (("E", 2),), {"E": {(0, 1)}}))
    with pytest.raises(SignatureError):
        FiniteStructure(2, (("E", 2),), {"E": {(0, 1, 1)}})
    with pytest.raises(RangeError):
        FiniteStructure(2, (("E", 2),), {"E": {(0, 2)}})
    with pytest.raises(SignatureError):
        FiniteStructure(2, (("E", 2), ("E", 1)))
    with pytest.raises(SignatureError):
        FiniteStructure(2, (("E", 2),), {"F": set()})
    with pytest.raises(RangeError):
        FiniteStructure(0, ())
    with pytest.raises(RangeError):
        StructureInstance(2, (("E", (0, 2)),))
    with pytest.raises(SignatureError):
        StructureInstance(2, (("F", (0, 1)),)).check_signature(s)


def test_certificates():
    inst = make_instance(3, [(0, 1)], [(1, 2)])
    assert completion_respects(inst, [(1, 0), (0, 2)])
    assert not completion_respects(inst, [(0, 2)])
    assert not completion_respects(inst, [(0, 1), (1, 2)])
    assert is_yes(CompletionYes(frozenset())) and not is_yes(NO)
    s = FiniteStructure(2, (("E", 2),), {"E": {(0, 1), (1, 0)}})
    si = StructureInstance(2, (("E", (0, 1)),))
    assert hom_respects(si, s, (0, 1)) and not hom_respects(si, s, (0, 0))
    assert not hom_respects(si, s, (0,)) and is_yes(HomYes((0, 1)))
