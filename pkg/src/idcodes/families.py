"""Deterministic generators for the graph families used in examples and proofs."""

from __future__ import annotations

import random
from itertools import combinations

from .bits import mask_of
from .graph import Graph, GraphError

COMB_VARIANTS = ("shared-adjacent", "shared-nonadjacent", "split-adjacent", "split-nonadjacent")


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise GraphError(msg)


def path(n: int) -> Graph:
    _need(n >= 1, "path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    _need(n >= 3, "cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star(leaves: int) -> Graph:
    """K_{1,leaves}; the centre is vertex 0."""
    _need(leaves >= 1, "star needs at least one leaf")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n: int) -> Graph:
    _need(n >= 1, "complete graph needs n >= 1")
    return Graph(n, combinations(range(n), 2))


def complete_minus_matching(n: int) -> Graph:
    """K_n without the maximum matching {0,1}, {2,3}, ..."""
    _need(n >= 1, "complete graph needs n >= 1")
    return Graph(n, [(u, v) for u, v in combinations(range(n), 2) if not (u % 2 == 0 and v == u + 1)])


def hypercube(dim: int) -> Graph:
    """The binary Hamming space of length ``dim`` as a graph; vertex = word value."""
    _need(dim >= 0, "hypercube needs dim >= 0")
    size = 1 << dim
    return Graph(size, [(x, x ^ (1 << b)) for x in range(size) for b in range(dim) if not x >> b & 1])


def terminal_example(r: int) -> Graph:
    """Cycle c_0..c_{2r-1} with a pendant on every c_i except c_0.

    Cycle vertices are ``0..2r-1``; the pendant of ``c_i`` is ``2r + i - 1``.
    """
    _need(r >= 3, "terminal_example needs r >= 3")
    length = 2 * r
    edges = [(i, (i + 1) % length) for i in range(length)]
    edges += [(i, length + i - 1) for i in range(1, length)]
    return Graph(2 * length - 1, edges)


def gap_graph(k: int) -> tuple[Graph, int, int]:
    """Bipartite graph whose identification number jumps when ``v`` is deleted.

    Vertex 0 is ``v``, vertices ``1..k`` are ``c_1..c_k``; then for every
    ``I`` with ``|I| >= 2`` (by size, then lexicographically) come ``y_I``
    (adjacent to ``v`` and the ``c_i``, ``i`` in ``I``) and ``z_I`` (adjacent
    to the ``c_i`` only).  Returns ``(graph, v, code)`` with
    ``code = {v, c_1, ..., c_k}``.
    """
    _need(k >= 2, "gap_graph needs k >= 2")
    edges = []
    nxt = k + 1
    for size in range(2, k + 1):
        for subset in combinations(range(1, k + 1), size):
            y, z = nxt, nxt + 1
            nxt += 2
            edges.append((0, y))
            for i in subset:
                edges.append((i, y))
                edges.append((i, z))
    return Graph(nxt, edges), 0, mask_of(range(k + 1))


def comb_graph(r: int, copies: int, variant: str) -> tuple[Graph, int]:
    """``copies`` disjoint paths on ``r`` vertices plus two extra vertices.

    In the ``shared`` variants both extras are joined to both ends of every
    path; in the ``split`` variants the first extra is joined to the first
    end and the second extra to the last end, making a theta graph.  The
    ``adjacent`` variants add an edge between the extras.  Path vertices
    come first; the extras are ``n-2`` (returned as the distinguished
    vertex) and ``n-1``.
    """
    _need(r >= 2 and copies >= 1, "comb_graph needs r >= 2 and copies >= 1")
    _need(variant in COMB_VARIANTS, f"variant must be one of {COMB_VARIANTS}")
    n = copies * r + 2
    v, w = n - 2, n - 1
    edges = []
    for p in range(copies):
        first, last = p * r, p * r + r - 1
        edges += [(first + i, first + i + 1) for i in range(r - 1)]
        if variant.startswith("shared"):
            edges += [(v, first), (v, last), (w, first), (w, last)]
        else:
            edges += [(v, first), (w, last)]
    if variant.split("-")[1] == "adjacent":
        edges.append((v, w))
    return Graph(n, edges), v


def g_series(q: int) -> Graph:
    """G_1 = three 3-cubes plus an apex joined to all of them; G_q = three G_{q-1} plus an apex."""
    _need(q >= 1, "g_series needs q >= 1")
    base = hypercube(3)
    for _ in range(q):
        block = base.disjoint_union(base).disjoint_union(base)
        apex = block.n
        base = Graph(apex + 1, block.edges() + [(apex, u) for u in range(apex)])
    return base


def random_graph(n: int, p: float, seed: int, connected: bool = False) -> Graph:
    """Erdos-Renyi G(n, p); with ``connected`` a random spanning tree is added first."""
    rng = random.Random(seed)
    edges = set()
    if connected and n > 1:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            u, v = order[i], order[rng.randrange(i)]
            edges.add((min(u, v), max(u, v)))
    for u, v in combinations(range(n), 2):
        if rng.random() < p:
            edges.add((u, v))
    return Graph(n, sorted(edges))


FAMILIES = {
    "path": (path, ("n",)),
    "cycle": (cycle, ("n",)),
    "star": (star, ("leaves",)),
    "complete": (complete, ("n",)),
    "complete-minus-matching": (complete_minus_matching, ("n",)),
    "hypercube": (hypercube, ("dim",)),
    "terminal": (terminal_example, ("r",)),
    "gap": (lambda k: gap_graph(k)[0], ("k",)),
    "comb-shared-adjacent": (lambda r, p: comb_graph(r, p, "shared-adjacent")[0], ("r", "copies")),
    "comb-shared-nonadjacent": (lambda r, p: comb_graph(r, p, "shared-nonadjacent")[0], ("r", "copies")),
    "comb-split-adjacent": (lambda r, p: comb_graph(r, p, "split-adjacent")[0], ("r", "copies")),
    "comb-split-nonadjacent": (lambda r, p: comb_graph(r, p, "split-nonadjacent")[0], ("r", "copies")),
    "g-series": (g_series, ("q",)),
}


def generate(name: str, params: list[int]) -> Graph:
    if name not in FAMILIES:
        raise GraphError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    fn, names = FAMILIES[name]
    if len(params) != len(names):
        raise GraphError(f"{name} takes parameters {names}")
    return fn(*params)
