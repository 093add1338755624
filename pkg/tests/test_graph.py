import itertools

import networkx as nx
from conftest import terms
from hypothesis import given, settings

from aisr.families import path_term, u_n
from aisr.graph import bipartition, build, component, components, has_odd_cycle, odd_closure, odd_cycle
from aisr.terms import parse_term

NAMES = ["x1", "x2", "x3", "x4", "x5", "y"]


def edges(G):
    return {tuple(sorted(e)) for e in G.sorted_edges()}


def test_build():
    assert edges(build(u_n(1))) == {("x1", "x2"), ("x2", "x3"), ("x1", "x3")}
    G = build(parse_term("x^2 + y"))
    assert G.vertices == {"x"} and G.loops == {"x"}
    assert edges(build(parse_term("x1*x2 + x2*x3 + x3*x4"))) == {("x1", "x2"), ("x2", "x3"), ("x3", "x4")}
    assert build(parse_term("x + x*y*z")).vertices == frozenset()


def test_odd_cycles():
    assert has_odd_cycle(build(u_n(1)))
    assert not has_odd_cycle(build(path_term(1)))
    assert has_odd_cycle(build(parse_term("x^2")))
    assert odd_cycle(build(parse_term("x^2"))) == ["x"]
    assert sorted(odd_cycle(build(u_n(2)))) == ["x1", "x2", "x3", "x4", "x5"]


def test_bipartition():
    c = bipartition(build(parse_term("x1*y1 + x2*y2")))
    assert c["x1"] != c["y1"] and c["x2"] != c["y2"]
    assert bipartition(build(u_n(1))) is None
    assert bipartition(build(parse_term("x + y"))) == {}


def test_odd_closure():
    oc = odd_closure(build(path_term(1)))
    assert frozenset({"x1", "x4"}) in oc and frozenset({"x1", "x2"}) in oc
    assert frozenset({"x1", "x3"}) not in oc
    assert odd_closure(build(parse_term("x*y"))) == {frozenset({"x", "y"})}
    tri = odd_closure(build(u_n(1)))
    assert all(frozenset(p) in tri for p in itertools.combinations_with_replacement(["x1", "x2", "x3"], 2))


def test_components():
    G = build(parse_term("x1*x2 + x3*x4 + x4*x5"))
    assert component(G, "x4") == {"x3", "x4", "x5"}
    assert len(components(G)) == 2


def nx_graph(G):
    H = nx.Graph()
    H.add_nodes_from(G.vertices)
    H.add_edges_from(tuple(e) if len(e) == 2 else (next(iter(e)),) * 2 for e in G.edges)
    return H


@settings(max_examples=200, deadline=None)
@given(terms(NAMES, max_words=6, max_len=2))
def test_against_networkx(t):
    G = build(t)
    H = nx_graph(G)
    loops = nx.number_of_selfloops(H) > 0
    assert has_odd_cycle(G) == (loops or not nx.is_bipartite(H))
    if not has_odd_cycle(G):
        col = bipartition(G)
        assert all(col[a] != col[b] for a, b in H.edges)
        # no odd cycle: odd walks are odd paths, i.e. opposite colours in one component
        expected = {
            frozenset((a, b))
            for comp in nx.connected_components(H)
            for a in comp
            for b in comp
            if col[a] != col[b]
        }
        assert odd_closure(G) == expected
    assert {frozenset(c) for c in components(G)} == {frozenset(c) for c in nx.connected_components(H)}


@settings(max_examples=150, deadline=None)
@given(terms(NAMES, max_words=6, max_len=2))
def test_odd_closure_against_double_cover(t):
    G = build(t)
    H = nx_graph(G)
    K2 = nx.Graph([(0, 1)])
    D = nx.tensor_product(H, K2)
    expected = set()
    for a in H.nodes:
        for b, side in nx.node_connected_component(D, (a, 0)) if D.has_node((a, 0)) else ():
            if side == 1:
                expected.add(frozenset((a, b)))
    assert odd_closure(G) == expected
