"""Enumerators and brute-force references shared by the test modules."""

from __future__ import annotations

from itertools import permutations, product

import networkx as nx

from sandwich_csp.core import Graph, StructureInstance


def graph_from_nx(h) -> Graph:
    index = {v: i for i, v in enumerate(h.nodes())}
    return Graph(len(index), frozenset(tuple(sorted((index[a], index[b]))) for a, b in h.edges()))


def atlas_graphs(max_n: int) -> list[Graph]:
    """Every graph on at most ``max_n`` <= 7 vertices, one per isomorphism class."""
    return [graph_from_nx(h) for h in nx.graph_atlas_g() if h.number_of_nodes() <= max_n]


def csp_instances(max_constraints: int, max_vars: int, symbols):
    """Every CSP instance with 1..max_constraints constraints over at most
    max_vars variables, up to renaming variables by first appearance.

    ``symbols`` is a list of (name, arity).  Constraint lists are sorted so
    reorderings count once.
    """
    seen = set()
    for k in range(1, max_constraints + 1):
        for syms in product(symbols, repeat=k):
            width = sum(a for _, a in syms)
            for vs in product(range(max_vars), repeat=width):
                label: dict[int, int] = {}
                flat = [label.setdefault(v, len(label)) for v in vs]
                cons, i = [], 0
                for s, a in syms:
                    cons.append((s, tuple(flat[i:i + a])))
                    i += a
                key = tuple(sorted(cons))
                if key in seen:
                    continue
                seen.add(key)
                yield StructureInstance(len(label), key)


def betweenness_brute(inst: StructureInstance) -> bool:
    """Is there a linear order with y strictly between x and z for every Betw(x,y,z)?"""
    for pos in permutations(range(inst.variable_count)):
        if all(pos[x] < pos[y] < pos[z] or pos[z] < pos[y] < pos[x]
               for _, (x, y, z) in inst.constraints):
            return True
    return False


def _connected_atlas(max_edges: int):
    return [h for h in nx.graph_atlas_g()
            if 0 < h.number_of_edges() <= max_edges and nx.is_connected(h)]


def graphs_with_few_edges(max_edges: int) -> list[Graph]:
    """Every graph with at most ``max_edges`` <= 5 edges and at most one
    isolated vertex, one per isomorphism class, built as multisets of
    connected components."""
    comps = _connected_atlas(max_edges)
    out = []

    def extend(start: int, budget: int, chosen: list):
        for iso in (0, 1):
            g = nx.disjoint_union_all(chosen + [nx.empty_graph(iso)]) if chosen or iso \
                else nx.empty_graph(0)
            out.append(graph_from_nx(g))
        for i in range(start, len(comps)):
            m = comps[i].number_of_edges()
            if m <= budget:
                extend(i, budget - m, chosen + [comps[i]])

    extend(0, max_edges, [])
    return out


def _multigraph_line_graph(h: nx.MultiGraph):
    edges = list(h.edges(keys=True))
    lg = nx.Graph()
    lg.add_nodes_from(range(len(edges)))
    for i, (a, b, _) in enumerate(edges):
        for j in range(i):
            c, d, _ = edges[j]
            if {a, b} & {c, d}:
                lg.add_edge(i, j)
    return lg


def _line_graphs(max_edges: int, multi: bool) -> list:
    """Line graphs of connected bipartite (multi)graphs with at most max_edges edges."""
    out = []
    for h in _connected_atlas(max_edges):
        if not nx.is_bipartite(h):
            continue
        edges = list(h.edges())
        spare = max_edges - len(edges) if multi else 0
        for extra in product(range(spare + 1), repeat=len(edges)):
            if sum(extra) > spare:
                continue
            mg = nx.MultiGraph()
            mg.add_nodes_from(h.nodes())
            for (a, b), k in zip(edges, extra):
                for _ in range(k + 1):
                    mg.add_edge(a, b)
            out.append(_multigraph_line_graph(mg))
    return out


_LINE_CACHE: dict[bool, list] = {}


def line_of_bipartite_oracle(g: Graph, multi: bool = False) -> bool:
    """Is g isomorphic to the line graph of a bipartite (multi)graph?

    A line graph of a disjoint union is the disjoint union of the line
    graphs, so each component of g is matched against the line graphs of
    connected bipartite (multi)graphs with as many edges as it has vertices.
    Components may have at most 6 vertices.
    """
    if multi not in _LINE_CACHE:
        _LINE_CACHE[multi] = _line_graphs(6, multi)
    lines = _LINE_CACHE[multi]
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    for comp in nx.connected_components(h):
        c = h.subgraph(comp)
        if c.number_of_nodes() > 6:
            raise ValueError("component too large for the enumeration oracle")
        if not any(lg.number_of_nodes() == c.number_of_nodes()
                   and lg.number_of_edges() == c.number_of_edges()
                   and nx.is_isomorphic(lg, c) for lg in lines):
            return False
    return True
