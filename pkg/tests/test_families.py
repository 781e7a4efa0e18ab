import pytest

from idcodes import families, verify
from idcodes.graph import GraphError, format_graph


@pytest.mark.parametrize("name,params,n", [
    ("path", [6], 6),
    ("cycle", [7], 7),
    ("star", [4], 5),
    ("complete", [5], 5),
    ("hypercube", [4], 16),
    ("terminal", [3], 11),
    ("gap", [3], 12),
    ("comb-split-nonadjacent", [3, 5], 17),
    ("g-series", [1], 25),
])
def test_orders(name, params, n):
    assert families.generate(name, params).n == n


def test_generators_are_deterministic():
    for name, (_, names) in families.FAMILIES.items():
        params = [3] * len(names)
        assert format_graph(families.generate(name, params)) == format_graph(families.generate(name, params))
    assert families.random_graph(9, 0.4, 7).edges() == families.random_graph(9, 0.4, 7).edges()


def test_hypercube_edges_are_single_bit_flips():
    g = families.hypercube(3)
    assert all(bin(u ^ v).count("1") == 1 for u, v in g.edges())
    assert g.num_edges == 12


@pytest.mark.parametrize("k", [2, 3, 4])
def test_gap_graph(k):
    g, v, code = families.gap_graph(k)
    assert g.n == 2 ** (k + 1) - k - 1
    assert code.bit_count() == k + 1
    assert verify.is_identifying(g, code, 1)
    assert v == 0 and g.is_connected()


def test_gap_graph_k2_single_pair():
    g, _, _ = families.gap_graph(2)
    assert g.n == 5
    assert g.neighbours(3) == [0, 1, 2] and g.neighbours(4) == [1, 2]


def test_comb_graph_small():
    g, v = families.comb_graph(2, 1, "split-nonadjacent")
    assert g.n == 4 and v == 2
    assert g.edges() == [(0, 1), (0, 2), (1, 3)]


def test_comb_variants_differ_by_extra_edge():
    a, _ = families.comb_graph(3, 5, "split-adjacent")
    b, _ = families.comb_graph(3, 5, "split-nonadjacent")
    assert a.num_edges == b.num_edges + 1 and a.has_edge(15, 16)


def test_terminal_example_layout():
    g = families.terminal_example(3)
    assert g.degree(0) == 2
    assert all(g.degree(v) == 1 for v in range(6, 11))
    assert g.parameters().min_degree == 1


def test_g_series():
    g1 = families.g_series(1)
    assert g1.n == 25 and g1.is_connected() and g1.degree(24) == 24
    assert families.g_series(2).n == 76


@pytest.mark.parametrize("call", [
    lambda: families.path(0),
    lambda: families.cycle(2),
    lambda: families.terminal_example(2),
    lambda: families.gap_graph(1),
    lambda: families.comb_graph(3, 2, "zigzag"),
    lambda: families.g_series(0),
    lambda: families.generate("nope", []),
    lambda: families.generate("path", [1, 2]),
])
def test_bad_parameters(call):
    with pytest.raises(GraphError):
        call()
