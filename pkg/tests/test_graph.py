from __future__ import annotations

import itertools

import networkx as nx
import pytest
from corpus import random_cubic, small_cubic_corpus
from hypothesis import given
from hypothesis import strategies as st

from xyzgraph.errors import (
    Disconnected,
    MalformedDocument,
    NotBiconnected,
    NotCubic,
    ParallelEdge,
    SelfLoop,
)
from xyzgraph.families import builtin, k4, prism
from xyzgraph.graph import (
    CubicGraph,
    OpenCubicGraph,
    components,
    double_cover,
    graph_from_edges,
    is_bipartite,
    is_connected,
    is_planar,
    is_three_connected,
    is_triangle_free,
    parse_graph,
    rotation_faces,
    serialize_graph,
    st_numbering,
)

cubic_graphs = st.builds(random_cubic, st.sampled_from([4, 6, 8, 10, 12, 14, 16]), st.integers(0, 10_000))


# ---------------------------------------------------------------------------
# Construction and validation
# ---------------------------------------------------------------------------


def test_edges_normalised_and_adjacency_sorted():
    g = CubicGraph(4, ((1, 0), (2, 0), (3, 0), (2, 1), (3, 1), (3, 2)))
    assert g.edges[0] == (0, 1)
    assert g.adjacency[0] == (1, 2, 3)
    assert g.edge_id(3, 2) == 5
    assert g.other(5, 3) == 2


@pytest.mark.parametrize(
    "n, edges, exc",
    [
        (4, ((0, 0), (1, 2)), SelfLoop),
        (4, ((0, 1), (1, 0)), ParallelEdge),
        (4, ((0, 1), (1, 2), (2, 3)), NotCubic),
        (3, ((0, 1),), NotCubic),
        (4, ((0, 9),), MalformedDocument),
        (0, (), MalformedDocument),
    ],
)
def test_invalid_graphs_raise(n, edges, exc):
    with pytest.raises(exc):
        CubicGraph(n, edges)


def test_json_round_trip_and_format_field():
    g = builtin("petersen")
    text = serialize_graph(g)
    assert '"format": "xyz-graph/1"' in text
    assert parse_graph(text) == g


@pytest.mark.parametrize("text", ["[]", "{\"n\": 4}", "{\"n\": 4, \"edges\": [[0, 1, 2]]}", "nope"])
def test_malformed_documents(text):
    with pytest.raises(MalformedDocument):
        parse_graph(text)


def test_open_graph_counts_ports():
    og = OpenCubicGraph(2, ((0, 1),), (("a", 0), ("b", 0), ("c", 1), ("d", 1)))
    assert og.port("c") == 1
    assert og.port_index("d") == 3
    assert og.port_names == ("a", "b", "c", "d")
    with pytest.raises(NotCubic):
        OpenCubicGraph(2, ((0, 1),), (("a", 0),))


# ---------------------------------------------------------------------------
# Predicates
# ---------------------------------------------------------------------------


def test_bipartite_witness_is_odd_cycle():
    g = builtin("petersen")
    chk = is_bipartite(g)
    assert not chk
    cyc = chk.witness
    assert len(cyc) % 2 == 1
    assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))
    assert is_bipartite(builtin("cube"))


def test_triangle_witness():
    chk = is_triangle_free(k4())
    assert not chk
    a, b, c = chk.witness
    assert k4().has_edge(a, b) and k4().has_edge(b, c) and k4().has_edge(a, c)
    assert is_triangle_free(builtin("petersen"))


def test_three_connectivity_witness_separates():
    # two K4-minus-edge blocks joined by two edges: a 2-cut
    edges = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 6), (5, 7), (6, 7), (0, 4), (3, 7)]
    g = graph_from_edges(edges, 8)
    chk = is_three_connected(g)
    assert not chk
    assert len(components(g, chk.witness)) > 1
    with pytest.raises(Disconnected):
        is_three_connected(graph_from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3),
                                             (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)], 8))


@given(cubic_graphs)
def test_three_connectivity_matches_networkx(g):
    if not is_connected(g):
        return
    assert bool(is_three_connected(g)) == (nx.node_connectivity(g.to_networkx()) >= 3)


@given(cubic_graphs)
def test_predicates_match_networkx(g):
    h = g.to_networkx()
    assert is_connected(g) == nx.is_connected(h)
    assert bool(is_bipartite(g)) == nx.is_bipartite(h)
    assert bool(is_triangle_free(g)) == (sum(nx.triangles(h).values()) == 0)


# ---------------------------------------------------------------------------
# st-numbering
# ---------------------------------------------------------------------------


def _check_st(g, s, t, order):
    pos = {v: i for i, v in enumerate(order)}
    assert sorted(order) == list(range(g.n))
    assert order[0] == s and order[-1] == t
    for v in order[1:-1]:
        ps = [pos[w] for w in g.adjacency[v]]
        assert min(ps) < pos[v] < max(ps)


@pytest.mark.parametrize("name", ["petersen", "pappus", "cube", "heawood", "desargues"])
def test_st_numbering_named(name):
    g = builtin(name)
    for s in range(g.n):
        t = g.adjacency[s][0]
        num = st_numbering(g, s, t)
        _check_st(g, s, t, num.order)


@given(cubic_graphs)
def test_st_numbering_property(g):
    if not is_connected(g) or nx.node_connectivity(g.to_networkx()) < 2:
        return
    s = 0
    t = g.adjacency[0][1]
    num = st_numbering(g, s, t)
    _check_st(g, s, t, num.order)
    # split vertices have one earlier and two later neighbours
    pos = num.position
    for v in num.split_vertices:
        assert sum(pos[w] > pos[v] for w in g.adjacency[v]) == 2


def test_st_numbering_rejects_bridge():
    # K4 with one edge subdivided, twice, the subdivision vertices joined by a bridge
    block = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4)]
    edges = block + [(u + 5, v + 5) for u, v in block] + [(4, 9)]
    with pytest.raises(NotBiconnected):
        st_numbering(graph_from_edges(edges), 0, 2)


# ---------------------------------------------------------------------------
# Planarity and double cover
# ---------------------------------------------------------------------------


def test_planar_faces_satisfy_euler():
    for m in range(3, 8):
        g = prism(m)
        rot = is_planar(g)
        faces = rotation_faces(g, rot)
        assert g.n - g.m + len(faces) == 2
    assert is_planar(builtin("k33")) is None


@pytest.mark.parametrize("name", ["petersen", "cube", "k4"])
def test_double_cover(name):
    g = builtin(name)
    d = double_cover(g)
    assert d.n == 2 * g.n
    assert is_bipartite(d)
    assert is_connected(d) == (not is_bipartite(g))
    for u, v in d.edges:
        assert g.has_edge(u % g.n, v % g.n)


def test_double_cover_of_cube_is_two_cubes():
    d = double_cover(builtin("cube"))
    comps = components(d)
    assert len(comps) == 2
    cube = builtin("cube").to_networkx()
    for comp in comps:
        assert nx.is_isomorphic(d.to_networkx().subgraph(comp), cube)


def test_corpus_is_connected_cubic():
    for name, g in small_cubic_corpus():
        assert g.n <= 12, name
        assert is_connected(g), name
        assert all(len(a) == 3 for a in g.adjacency)
        assert len(set(itertools.chain.from_iterable(g.edges))) == g.n
