from __future__ import annotations

from math import comb

import networkx as nx
import pytest
from hypothesis import given

from graph_ideals.errors import DuplicateEdge, LoopEdge, MalformedLine, ResourceLimit, VertexOutOfRange
from graph_ideals.graph import (
    Graph,
    claws,
    component_profile,
    counts,
    cut_sets,
    detect_induced,
    format_graph,
    has_induced,
    induced_claws,
    parse_graph,
    recognize_shape,
    satisfies_cut_condition,
    verify_shape,
)
from graphs import KITE, NET, TWO_TRIANGLES, cycle, graph, path, random_graphs, star


# --- parsing -------------------------------------------------------------------

def test_parse_path_and_triangle():
    assert parse_graph("3 2\n1 2\n2 3") == path(3)
    assert parse_graph("3 3\n1 2\n2 3\n1 3") == cycle(3)


def test_parse_comments_and_orientation():
    text = "# header comment\n4 3  # n m\n2 1\n\n3 2\n4 3 # last\n"
    assert parse_graph(text) == path(4)


def test_duplicate_edge_reports_line():
    with pytest.raises(DuplicateEdge) as exc:
        parse_graph("3 2\n1 2\n1 2")
    assert exc.value.line == 3


def test_duplicate_edge_reversed():
    with pytest.raises(DuplicateEdge):
        parse_graph("3 2\n1 2\n2 1")


@pytest.mark.parametrize(
    "text, err",
    [
        ("3 1\n1 1", LoopEdge),
        ("3 1\n1 4", VertexOutOfRange),
        ("3 1\n0 2", VertexOutOfRange),
        ("3 2\n1 2", MalformedLine),
        ("3 1\n1 2 3", MalformedLine),
        ("three 1\n1 2", MalformedLine),
        ("", MalformedLine),
    ],
)
def test_parse_errors(text, err):
    with pytest.raises(err):
        parse_graph(text)


@given(random_graphs(max_n=8))
def test_format_parse_round_trip(g):
    assert parse_graph(format_graph(g)) == g


def test_graph_rejects_unsorted_or_bad_edges():
    with pytest.raises(ValueError):
        Graph(3, ((2, 3), (1, 2)))
    with pytest.raises(VertexOutOfRange):
        Graph(2, ((1, 3),))
    assert Graph.from_edges(3, [(3, 2), (2, 1)]) == path(3)


# --- component profiles -----------------------------------------------------------

def test_profile_examples():
    assert counts(path(3), ()) == (1, 1)
    assert counts(star(3), (1,)) == (3, 3)
    prof = component_profile(cycle(5), (1, 3))
    assert (prof.c, prof.b) == (2, 2)
    assert sorted(c.vertices for c in prof.components) == [(2,), (4, 5)]


def test_isolated_vertex_is_bipartite():
    prof = component_profile(Graph(1), ())
    assert (prof.c, prof.b) == (1, 1)
    assert prof.components[0].parts == ((1,), ())


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


@given(random_graphs(max_n=8))
def test_profile_matches_networkx(g):
    for T in [(), (1,), tuple(range(1, g.n + 1, 2))]:
        h = _nx(g)
        h.remove_nodes_from(T)
        comps = list(nx.connected_components(h))
        bip = sum(1 for c in comps if nx.is_bipartite(h.subgraph(c)))
        assert counts(g, T) == (len(comps), bip)
        prof = component_profile(g, T)
        assert (prof.c, prof.b) == (len(comps), bip)
        covered = sorted(v for c in prof.components for v in c.vertices)
        assert covered == [v for v in g.vertices if v not in T]


@given(random_graphs(max_n=7))
def test_single_removal_changes_c_by_at_most_deg_minus_one(g):
    c0, b0 = counts(g, ())
    for v in g.vertices:
        c1, b1 = counts(g, (v,))
        assert b1 <= c1
        assert c1 - c0 <= max(g.degree(v) - 1, 0)


# --- cut sets --------------------------------------------------------------------

def test_cut_set_examples():
    assert cut_sets(path(3)) == [(), (2,)]
    assert cut_sets(cycle(3)) == [(), (1,), (2,), (3,)]
    assert cut_sets(star(3)) == [(), (1,)]


@given(random_graphs(max_n=7))
def test_cut_sets_recheck(g):
    cs = cut_sets(g)
    assert () in cs
    assert all(satisfies_cut_condition(g, T) for T in cs)


@given(random_graphs(max_n=6))
def test_cut_sets_complete(g):
    import itertools

    got = set(cut_sets(g))
    for k in range(g.n + 1):
        for T in itertools.combinations(g.vertices, k):
            assert (T in got) == satisfies_cut_condition(g, T)


def test_cut_sets_guard(monkeypatch):
    monkeypatch.setenv("GRAPH_IDEAL_MAX_N", "5")
    with pytest.raises(ResourceLimit):
        cut_sets(path(6))


# --- claws and patterns ------------------------------------------------------------

def test_claw_examples():
    assert claws(path(4)) == []
    (c,) = claws(star(3))
    assert (c.center, c.leaves) == (1, (2, 3, 4))
    net_claws = claws(NET)
    assert sorted(c.center for c in net_claws) == [1, 2, 3]
    assert induced_claws(NET) == []


@given(random_graphs(max_n=8))
def test_claw_count_is_sum_of_binomials(g):
    assert len(claws(g)) == sum(comb(g.degree(v), 3) for v in g.vertices)
    assert set(induced_claws(g)) <= set(claws(g))


def test_induced_pattern_examples():
    c5_chord = cycle(5).add_edge((1, 3))
    hit = detect_induced(c5_chord, "C4")
    assert hit is not None and sorted(hit.values()) == [1, 3, 4, 5]
    assert not has_induced(cycle(7).add_edge((1, 3)), "C4")
    assert has_induced(KITE, "Kite")
    assert has_induced(graph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]), "K4")
    assert has_induced(graph(5, [(1, 3), (1, 4), (1, 5), (2, 3), (2, 4), (2, 5)]), "K23")
    assert not has_induced(cycle(4), "K4")


@given(random_graphs(max_n=7))
def test_induced_pattern_matches_networkx(g):
    from networkx.algorithms import isomorphism

    from graph_ideals.graph import PATTERNS

    for name, pat in PATTERNS.items():
        gm = isomorphism.GraphMatcher(_nx(g), _nx(pat))
        assert has_induced(g, name) == gm.subgraph_is_isomorphic()


# --- shapes ---------------------------------------------------------------------

@pytest.mark.parametrize(
    "g, tag",
    [
        (path(5), "Path"),
        (star(3), "Tree"),
        (cycle(7), "OddCycle"),
        (cycle(6), "EvenCycle"),
        (graph(4, [(1, 2), (2, 3), (1, 3), (1, 4)]), "OddUnicyclic"),
        (graph(5, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 5)]), "EvenUnicyclic"),
        (TWO_TRIANGLES, "BicyclicCactus"),
        (graph(5, [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (3, 5)]), "BicyclicCactus"),
        (KITE, "ChordedCycle"),
        (graph(5, [(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)]), "Other"),
        (graph(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]), "Other"),
    ],
)
def test_shape_tags(g, tag):
    shape = recognize_shape(g)
    assert shape.tag == tag
    assert verify_shape(g, shape)


def test_chord_witness_on_c4_with_pendant_at_chord_end():
    g = graph(5, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3), (3, 5)])
    shape = recognize_shape(g)
    assert shape.tag == "ChordedCycle"
    assert sorted(shape.witness["chord"]) == [1, 3]
    # a pendant at a chord end is not the Kite: the Kite hangs it off a non-chord vertex
    assert not has_induced(g, "Kite")


def test_two_triangles_bridge_witness():
    w = recognize_shape(TWO_TRIANGLES).witness
    assert w["cycles"] == [[1, 2, 3], [4, 5, 6]]
    assert w["bridge_path"] == [3, 4]


@given(random_graphs(max_n=8, connected=True))
def test_shape_witness_reverifies(g):
    shape = recognize_shape(g)
    assert verify_shape(g, shape)
    if g.m == g.n - 1:
        assert shape.tag in ("Path", "Tree")
    elif g.m == g.n:
        assert shape.tag in ("OddCycle", "EvenCycle", "OddUnicyclic", "EvenUnicyclic")
