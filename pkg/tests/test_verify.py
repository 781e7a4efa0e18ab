import pytest
from hypothesis import given, settings, strategies as st

from idcodes import families, verify
from idcodes.graph import Graph, SizeGuardError

import oracles


@st.composite
def graph_and_code(draw, max_n=8):
    n = draw(st.integers(2, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = sorted(draw(st.lists(st.sampled_from(pairs), unique=True)))
    code = draw(st.integers(0, (1 << n) - 1))
    return n, edges, code


@given(graph_and_code(), st.integers(1, 2))
def test_identifying_matches_oracle(gc, r):
    n, edges, code = gc
    assert verify.is_identifying(Graph(n, edges), code, r) == oracles.is_idc(n, edges, oracles.to_set(code), r)


@given(graph_and_code(), st.integers(1, 2))
def test_locating_dominating_matches_oracle(gc, r):
    n, edges, code = gc
    assert verify.is_locating_dominating(Graph(n, edges), code, r) == oracles.is_ld(n, edges, oracles.to_set(code), r)


@given(graph_and_code())
def test_soc_matches_oracle(gc):
    n, edges, code = gc
    assert verify.is_soc(Graph(n, edges), code) == oracles.is_soc(n, edges, oracles.to_set(code))


@settings(max_examples=60)
@given(graph_and_code(max_n=7), st.integers(1, 2), st.integers(1, 3))
def test_l_identifying_matches_oracle(gc, r, ell):
    n, edges, code = gc
    want = oracles.is_l_idc(n, edges, oracles.to_set(code), r, ell)
    assert verify.is_l_identifying(Graph(n, edges), code, r, ell) == want


@settings(max_examples=60)
@given(graph_and_code(max_n=6), st.integers(1, 2))
def test_strong_matches_oracle(gc, ell):
    n, edges, code = gc
    want = oracles.is_strong(n, edges, oracles.to_set(code), 1, ell)
    assert verify.is_strongly_identifying(Graph(n, edges), code, 1, ell) == want


@settings(max_examples=150)
@given(graph_and_code(max_n=7), st.integers(1, 2))
def test_strong_reformulation_agrees_at_ell_1(gc, r):
    n, edges, code = gc
    g = Graph(n, edges)
    assert (verify.strong_pairs_violation(g, code, r) is None) == verify.is_strongly_identifying(g, code, r, 1)


def test_strong_implies_identifying_on_hypercube():
    g = families.hypercube(3)
    assert verify.is_strongly_identifying(g, g.vertex_mask, 1, 1)
    assert verify.is_identifying(g, g.vertex_mask, 1)


def test_violations_name_smallest_witness():
    g = families.path(4)
    bad = verify.identifying_violation(g, 0, 1)
    assert bad.kind == verify.UNDOMINATED and bad.items == (0,)
    assert bad.describe() == "undominated: 1"
    bad = verify.identifying_violation(g, 0b0110, 1)
    assert bad.kind == verify.UNSEPARATED and bad.items == (1, 2)


def test_l_identifying_violation_lists_sets():
    g = families.path(5)
    bad = verify.l_identifying_violation(g, g.vertex_mask, 1, 2)
    assert bad.kind == verify.UNSEPARATED
    assert all(isinstance(x, tuple) for x in bad.items)


def test_soc_violation_when_everything_covered():
    g = families.hypercube(3)
    assert verify.soc_violation(g, g.vertex_mask).kind == verify.SOC_ZERO_MISSING
    assert verify.soc_empty_vertex(g, 0b00010110) == 7


def test_mu_covering():
    g = families.hypercube(3)
    assert verify.is_perfect_mu_fold_covering(g, g.vertex_mask, 1, 4)
    assert verify.is_mu_fold_covering(g, g.vertex_mask, 1, 3)
    bad = verify.mu_covering_violation(g, 0b1, 1, 1)
    assert bad.kind == verify.COVERING_DEFICIT and bad.items == (3,)
    assert not verify.is_perfect_mu_fold_covering(g, g.vertex_mask, 1, 3)


def test_edge_robustness():
    g = families.cycle(7)
    code = g.vertex_mask
    assert verify.is_t_edge_robust(g, code, 1, 0) == verify.is_identifying(g, code, 1)
    bad = verify.edge_robust_violation(families.path(4), families.path(4).vertex_mask, 1, 1)
    assert bad is not None and bad.kind == verify.ROBUSTNESS_BREAK and bad.inner is not None


def test_enumeration_guard():
    g = families.path(60)
    with pytest.raises(SizeGuardError):
        verify.is_l_identifying(g, g.vertex_mask, 1, 5)


def test_check_dispatch():
    g = families.cycle(7)
    assert verify.check("idc", g, g.vertex_mask, r=1) is None
    with pytest.raises(ValueError):
        verify.check("nope", g, 0)
