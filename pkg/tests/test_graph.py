import pytest
from hypothesis import given, settings, strategies as st

from idcodes import families
from idcodes.graph import Graph, GraphError, GraphFormatError, format_graph, parse_code, parse_graph, format_code

import oracles


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return n, sorted(chosen)


@given(graphs(), st.integers(1, 3))
def test_balls_match_bfs_oracle(g, r):
    n, edges = g
    want = [oracles.mask(b) for b in oracles.balls(n, edges, r)]
    assert list(Graph(n, edges).balls(r)) == want


@given(graphs())
def test_text_format_round_trip(g):
    n, edges = g
    graph = Graph(n, edges)
    assert parse_graph(format_graph(graph, comment="x")) == graph


def test_parse_one_based_ids_and_comments():
    g = parse_graph("c tiny\np graph 3 2\ne 1 2\ne 2 3\n")
    assert g.edges() == [(0, 1), (1, 2)]


@pytest.mark.parametrize("text", [
    "p graph 3 1\ne 1 1\n",
    "p graph 3 2\ne 1 2\ne 2 1\n",
    "p graph 3 2\ne 1 2\n",
    "e 1 2\n",
    "p graph 2 1\ne 1 3\n",
    "p graph 2 1\nx 1 2\n",
    "",
])
def test_parse_rejects_malformed(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_code_format_round_trip():
    assert parse_code(format_code(0b1011)) == 0b1011
    with pytest.raises(GraphFormatError):
        parse_code("5", 4)


def test_twins():
    assert families.path(3).twin_pair(1) is None
    assert families.path(4).twin_pair(2) == (1, 2)
    assert families.complete(3).twin_pair(1) == (0, 1)
    ok, pair = families.cycle(7).is_twin_free(2)
    assert ok and pair is None


def test_remove_vertex_returns_id_map():
    h, idmap = families.path(5).remove_vertex(2)
    assert idmap == {0: 0, 1: 1, 3: 2, 4: 3}
    assert h.edges() == [(0, 1), (2, 3)]


def test_edge_edits():
    g = families.path(3)
    assert g.remove_edge(0, 1).edges() == [(1, 2)]
    assert g.add_edge(0, 2).num_edges == 3
    with pytest.raises(GraphError):
        g.remove_edge(0, 2)
    with pytest.raises(GraphError):
        g.add_edge(0, 1)


def test_parameters_path7():
    p = families.path(7).parameters()
    assert (p.radius, p.diameter, p.min_degree, p.num_edges, p.independence_number) == (3, 6, 1, 6, 4)


def test_parameters_k6_minus_matching():
    p = families.complete_minus_matching(6).parameters()
    assert (p.num_edges, p.min_degree) == (12, 4)


def test_independence_cycle7():
    assert families.cycle(7).parameters().independence_number == 3


def test_disconnected_parameters():
    p = families.path(2).disjoint_union(families.path(2)).parameters()
    assert not p.connected and p.radius is None and p.diameter is None


@settings(max_examples=60)
@given(graphs(max_n=10))
def test_independence_number_matches_brute_force(g):
    n, edges = g
    adj = oracles.adjacency(n, edges)
    from itertools import combinations
    best = 0
    for k in range(n + 1):
        if any(all(v not in adj[u] for u, v in combinations(c, 2)) for c in combinations(range(n), k)):
            best = k
    assert Graph(n, edges).independence_number() == best


def test_induced_paths():
    assert families.cycle(7).has_induced_path(6)
    assert not families.cycle(7).has_induced_path(7)
    assert not families.complete(5).has_induced_path(3)
    assert families.path(5).has_induced_path(5)
