"""Finite undirected graphs with dense bit-row adjacency.

Vertices are the integers ``0..n-1``.  Vertex sets (codes, balls, identifying
sets) are plain Python integers used as bitsets; see :mod:`idcodes.bits`.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, TextIO

from .bits import full_mask, iter_bits, lowest_bit, mask_of

INF = math.inf

# exhaustive searches refuse larger inputs instead of running for hours
MAX_INDUCED_PATH_ORDER = 64
MAX_INDEPENDENCE_ORDER = 40


class GraphError(ValueError):
    """Invalid graph construction, edit or query."""


class GraphFormatError(GraphError):
    """Malformed graph text."""


class SizeGuardError(GraphError):
    """An exhaustive routine was asked to run on an input beyond its guard."""


@dataclass(frozen=True)
class GraphParameters:
    num_edges: int
    min_degree: int
    radius: Optional[int]
    diameter: Optional[int]
    independence_number: Optional[int]
    connected: bool


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    ``adj[v]`` is the bitset of neighbours of ``v``.  Ball tables are computed
    lazily per radius and cached.
    """

    __slots__ = ("n", "adj", "_balls", "_dist")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphError(f"negative order {n}")
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        self.n = n
        self.adj: tuple[int, ...] = tuple(rows)
        self._balls: dict[int, tuple[int, ...]] = {}
        self._dist: Optional[list[list[float]]] = None

    @classmethod
    def from_rows(cls, rows: Sequence[int]) -> "Graph":
        n = len(rows)
        for v, row in enumerate(rows):
            if row >> v & 1:
                raise GraphError(f"self-loop at {v}")
            if row >> n:
                raise GraphError(f"row {v} references vertices >= {n}")
        for v, row in enumerate(rows):
            for u in iter_bits(row):
                if not rows[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric at ({v}, {u})")
        g = cls(0)
        g.n = n
        g.adj = tuple(rows)
        return g

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.adj == other.adj

    def __hash__(self) -> int:
        return hash(self.adj)

    # basic queries

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def neighbours(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    @property
    def vertex_mask(self) -> int:
        return full_mask(self.n)

    # distances and balls

    def balls(self, r: int) -> tuple[int, ...]:
        """Closed r-balls of all vertices, as bitsets."""
        if r < 0:
            raise GraphError(f"negative radius {r}")
        cached = self._balls.get(r)
        if cached is not None:
            return cached
        if r == 0:
            table = tuple(1 << v for v in range(self.n))
        else:
            prev = self.balls(r - 1)
            adj = self.adj
            table = []
            for v in range(self.n):
                b = prev[v]
                grown = b
                for u in iter_bits(b):
                    grown |= adj[u]
                table.append(grown)
            table = tuple(table)
        self._balls[r] = table
        return table

    def ball(self, v: int, r: int) -> int:
        if not 0 <= v < self.n:
            raise GraphError(f"vertex {v} out of range")
        return self.balls(r)[v]

    def open_ball(self, v: int, r: int) -> int:
        return self.ball(v, r) & ~(1 << v)

    def bfs(self, source: int) -> list[float]:
        dist: list[float] = [INF] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in iter_bits(self.adj[u]):
                if dist[w] == INF:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def distances(self) -> list[list[float]]:
        """All-pairs hop distances; ``INF`` for disconnected pairs."""
        if self._dist is None:
            self._dist = [self.bfs(v) for v in range(self.n)]
        return [row[:] for row in self._dist]

    def distance(self, u: int, v: int) -> float:
        if self._dist is None:
            self.distances()
        return self._dist[u][v]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            for u in iter_bits(frontier):
                nxt |= self.adj[u]
            frontier = nxt & ~seen
            seen |= nxt
        return seen == self.vertex_mask

    def components(self) -> list[int]:
        left = self.vertex_mask
        comps = []
        while left:
            comp = frontier = 1 << lowest_bit(left)
            while frontier:
                nxt = 0
                for u in iter_bits(frontier):
                    nxt |= self.adj[u]
                frontier = nxt & ~comp
                comp |= nxt
            comps.append(comp)
            left &= ~comp
        return comps

    # twins

    def twin_pair(self, r: int) -> Optional[tuple[int, int]]:
        """Lexicographically smallest pair ``u < v`` with equal r-balls, if any."""
        first: dict[int, int] = {}
        best = None
        for v, b in enumerate(self.balls(r)):
            u = first.get(b)
            if u is None:
                first[b] = v
            elif best is None or (u, v) < best:
                best = (u, v)
        return best

    def is_twin_free(self, r: int) -> tuple[bool, Optional[tuple[int, int]]]:
        if r < 1:
            raise GraphError("twin-freeness needs r >= 1")
        pair = self.twin_pair(r)
        return pair is None, pair

    # edits

    def remove_vertices(self, removed: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Delete vertices; survivors are renumbered in order.  Returns the old->new map."""
        gone = set(removed)
        for v in gone:
            if not 0 <= v < self.n:
                raise GraphError(f"vertex {v} out of range")
        keep = [v for v in range(self.n) if v not in gone]
        idmap = {old: new for new, old in enumerate(keep)}
        edges = [(idmap[u], idmap[v]) for u, v in self.edges() if u in idmap and v in idmap]
        return Graph(len(keep), edges), idmap

    def remove_vertex(self, v: int) -> tuple["Graph", dict[int, int]]:
        return self.remove_vertices([v])

    def remove_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) absent")
        rows = list(self.adj)
        rows[u] &= ~(1 << v)
        rows[v] &= ~(1 << u)
        return Graph.from_rows(rows)

    def add_edge(self, u: int, v: int) -> "Graph":
        if u == v:
            raise GraphError(f"self-loop at {u}")
        if self.has_edge(u, v):
            raise GraphError(f"edge ({u}, {v}) already present")
        rows = list(self.adj)
        rows[u] |= 1 << v
        rows[v] |= 1 << u
        return Graph.from_rows(rows)

    def toggle_edges(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self.adj)
        for u, v in pairs:
            rows[u] ^= 1 << v
            rows[v] ^= 1 << u
        return Graph.from_rows(rows)

    def disjoint_union(self, other: "Graph") -> "Graph":
        shift = self.n
        edges = self.edges() + [(u + shift, v + shift) for u, v in other.edges()]
        return Graph(self.n + other.n, edges)

    def induced(self, vertices: Sequence[int]) -> "Graph":
        pos = {v: i for i, v in enumerate(vertices)}
        edges = [(pos[u], pos[v]) for u, v in self.edges() if u in pos and v in pos]
        return Graph(len(vertices), edges)

    # structure

    def has_induced_path(self, length: int) -> bool:
        """True iff the graph contains an induced path on ``length`` vertices."""
        if self.n > MAX_INDUCED_PATH_ORDER:
            raise SizeGuardError(f"induced path search limited to n <= {MAX_INDUCED_PATH_ORDER}")
        if length <= 0:
            return True
        if length > self.n:
            return False
        adj = self.adj

        # forbidden = path vertices plus their neighbours, except the last
        # vertex's neighbours which are the extension candidates
        def extend(last: int, size: int, closed: int) -> bool:
            if size == length:
                return True
            for w in iter_bits(adj[last] & ~closed):
                if extend(w, size + 1, closed | adj[last] | (1 << w)):
                    return True
            return False

        for v in range(self.n):
            if extend(v, 1, 1 << v):
                return True
        return False

    def independence_number(self) -> int:
        """Exact maximum independent set size (branch and bound, coloring bound)."""
        if self.n > MAX_INDEPENDENCE_ORDER:
            raise SizeGuardError(f"independence number limited to n <= {MAX_INDEPENDENCE_ORDER}")
        # complement adjacency: an independent set is a clique of the complement
        comp = [~(self.adj[v] | (1 << v)) & self.vertex_mask for v in range(self.n)]
        best = 0

        def colour_bound(cand: int) -> int:
            # greedy clique cover of the candidate set in the complement
            classes = 0
            while cand:
                classes += 1
                avail = cand
                while avail:
                    v = lowest_bit(avail)
                    cand &= ~(1 << v)
                    avail &= ~(1 << v) & ~comp[v]
            return classes

        def expand(size: int, cand: int) -> None:
            nonlocal best
            if not cand:
                best = max(best, size)
                return
            if size + colour_bound(cand) <= best:
                return
            while cand:
                if size + cand.bit_count() <= best:
                    return
                v = lowest_bit(cand)
                expand(size + 1, cand & comp[v])
                cand &= ~(1 << v)

        expand(0, self.vertex_mask)
        return best

    def parameters(self) -> GraphParameters:
        """Edges, minimum degree, radius, diameter, independence number.

        Radius and diameter are ``None`` for disconnected graphs; the
        independence number is ``None`` beyond the exhaustive-search guard.
        """
        connected = self.is_connected()
        radius = diameter = None
        if connected and self.n:
            ecc = [int(max(row)) for row in self.distances()]
            radius, diameter = min(ecc), max(ecc)
        alpha = self.independence_number() if self.n <= MAX_INDEPENDENCE_ORDER else None
        return GraphParameters(
            num_edges=self.num_edges,
            min_degree=min((self.degree(v) for v in range(self.n)), default=0),
            radius=radius,
            diameter=diameter,
            independence_number=alpha,
            connected=connected,
        )


# text format: "c" comments, "p graph n m", "e u v" with 1-based ids


def parse_graph(text: str) -> Graph:
    n = m = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "graph" or n is not None:
                raise GraphFormatError(f"line {lineno}: bad problem line {line!r}")
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if n is None:
                raise GraphFormatError(f"line {lineno}: edge before problem line")
            if len(parts) != 3:
                raise GraphFormatError(f"line {lineno}: bad edge line {line!r}")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"line {lineno}: vertex out of range")
            if u == v:
                raise GraphFormatError(f"line {lineno}: self-loop at {u + 1}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"line {lineno}: duplicate edge {u + 1} {v + 1}")
            seen.add(key)
            edges.append(key)
        else:
            raise GraphFormatError(f"line {lineno}: unknown record {parts[0]!r}")
    if n is None:
        raise GraphFormatError("missing problem line")
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, found {len(edges)}")
    return Graph(n, edges)


def format_graph(g: Graph, comment: Optional[str] = None) -> str:
    lines = []
    if comment:
        lines.extend(f"c {c}" for c in comment.splitlines())
    edges = g.edges()
    lines.append(f"p graph {g.n} {len(edges)}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_graph(fh: TextIO) -> Graph:
    return parse_graph(fh.read())


# code files list 1-based vertex ids, whitespace separated, "c" comments allowed


def parse_code(text: str, n: Optional[int] = None) -> int:
    ids = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        ids.extend(int(tok) - 1 for tok in line.split())
    if n is not None and any(not 0 <= v < n for v in ids):
        raise GraphFormatError("code vertex out of range")
    return mask_of(ids)


def format_code(code: int) -> str:
    return " ".join(str(v + 1) for v in iter_bits(code)) + "\n"
