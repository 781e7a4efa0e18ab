"""Exact minimum codes, optimum counting, terminal tests and removal deltas.

Every code class handled here is a minimum *hitting set* problem over the
vertices: a vertex ``w`` hits

* the domination constraint of ``v`` when ``w`` is in ``B_r(v)``;
* the separation constraint of a pair ``(u, v)`` when ``w`` is in
  ``B_r(u) ^ B_r(v)`` (for locating-domination ``u`` and ``v`` themselves
  also hit it).

A separating-only code is handled by fixing the uncovered vertex ``v0`` and
forbidding ``B_1(v0)``.  :class:`HittingSet` does the search.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Callable, Optional, Sequence, Union

from .bits import full_mask, iter_bits, members
from .graph import Graph
from . import fixedsize, verify

# superset elimination is quadratic; skip it for very large constraint lists
REDUCE_LIMIT = 3000


class SolveError(Exception):
    pass


class TwinsPresent(SolveError):
    def __init__(self, pair: tuple[int, int], r: int):
        super().__init__(f"vertices {pair[0]} and {pair[1]} are {r}-twins; no identifying code exists")
        self.pair = pair
        self.r = r


class NoSocExists(SolveError):
    pass


class BudgetExceeded(SolveError):
    """Search stopped by a node or time limit; carries the bounds known so far."""

    def __init__(self, lower: int, upper: Optional[int], certificate: Optional[int], nodes: int):
        super().__init__(f"budget exceeded after {nodes} nodes (bounds {lower}..{upper})")
        self.lower = lower
        self.upper = upper
        self.certificate = certificate
        self.nodes = nodes


@dataclass
class Budget:
    nodes: Optional[int] = None
    seconds: Optional[float] = None


@dataclass
class SolveReport:
    kind: str
    optimum: int
    certificate: int
    count: Optional[int] = None
    lower_bound: int = 0
    lower_bound_used: str = "search"
    nodes_explored: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def code(self) -> list[int]:
        return members(self.certificate)


class _Stop(Exception):
    pass


class HittingSet:
    """Minimum / counting / lexicographic hitting-set search over ``n`` candidates.

    ``constraints`` are bitsets; a candidate set hits a constraint when they
    intersect.  Candidates in ``excluded`` may never be chosen.
    """

    def __init__(self, n: int, constraints: Sequence[int], excluded: int = 0, budget: Optional[Budget] = None):
        self.n = n
        self.allowed = full_mask(n) & ~excluded
        self.budget = budget or Budget()
        self.nodes = 0
        self._deadline = None
        self.feasible = True
        cons = set()
        for c in constraints:
            c &= self.allowed
            if not c:
                self.feasible = False
            cons.add(c)
        ordered = sorted(cons, key=lambda c: (c.bit_count(), c))
        if len(ordered) <= REDUCE_LIMIT:
            kept: list[int] = []
            for c in ordered:
                if not any(k & c == k for k in kept):
                    kept.append(c)
            ordered = kept
        self.constraints = ordered

    # bookkeeping

    def _start(self) -> None:
        if self.budget.seconds is not None:
            self._deadline = time.monotonic() + self.budget.seconds

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget.nodes is not None and self.nodes > self.budget.nodes:
            raise _Stop
        if self._deadline is not None and not self.nodes & 1023 and time.monotonic() > self._deadline:
            raise _Stop

    def packing_bound(self, excluded: int = 0, unhit: Optional[Sequence[int]] = None) -> int:
        """Size of a greedy family of constraints with pairwise disjoint candidates."""
        used = 0
        lb = 0
        for c in self.constraints if unhit is None else unhit:
            a = c & ~excluded
            if not a & used:
                used |= a
                lb += 1
        return lb

    def greedy(self) -> int:
        """Repeatedly take the candidate hitting most unhit constraints (lowest id on ties)."""
        chosen = 0
        unhit = list(self.constraints)
        while unhit:
            freq: dict[int, int] = {}
            for c in unhit:
                for w in iter_bits(c):
                    freq[w] = freq.get(w, 0) + 1
            w = min(freq, key=lambda x: (-freq[x], x))
            chosen |= 1 << w
            unhit = [c for c in unhit if not c >> w & 1]
        return chosen

    # searches

    def minimum(self) -> tuple[int, int]:
        """Return ``(size, mask)`` of a minimum hitting set.

        Raises :class:`BudgetExceeded`; raises ``ValueError`` when infeasible.
        """
        if not self.feasible:
            raise ValueError("infeasible: some constraint has no allowed candidate")
        best_mask = self.greedy()
        best = [best_mask.bit_count(), best_mask]
        self._start()

        def rec(size: int, chosen: int, excluded: int, unhit: list[int]) -> None:
            self._tick()
            if not unhit:
                if size < best[0]:
                    best[0], best[1] = size, chosen
                return
            lb = 0
            used = 0
            branch = 0
            bsize = self.n + 1
            for c in unhit:
                a = c & ~excluded
                if not a:
                    return
                k = a.bit_count()
                if k < bsize:
                    bsize, branch = k, a
                if not a & used:
                    used |= a
                    lb += 1
            if size + lb >= best[0]:
                return
            # most useful candidates first: finds good incumbents early
            cands = sorted(iter_bits(branch), key=lambda w: (-sum(1 for c in unhit if c >> w & 1), w))
            for w in cands:
                if size + 1 >= best[0]:
                    return
                bit = 1 << w
                rec(size + 1, chosen | bit, excluded, [c for c in unhit if not c & bit])
                excluded |= bit

        try:
            rec(0, 0, ~self.allowed, list(self.constraints))
        except _Stop:
            lower = self.packing_bound(~self.allowed)
            raise BudgetExceeded(lower, best[0], best[1], self.nodes) from None
        return best[0], best[1]

    def count(self, k: int) -> int:
        """Number of hitting sets with exactly ``k`` elements."""
        if not self.feasible:
            return 0
        self._start()
        allowed = self.allowed
        total = 0

        def rec(size: int, chosen: int, excluded: int, unhit: list[int]) -> None:
            nonlocal total
            self._tick()
            if not unhit:
                free = (allowed & ~chosen & ~excluded).bit_count()
                total += comb(free, k - size)
                return
            lb = 0
            used = 0
            branch = 0
            bsize = self.n + 1
            for c in unhit:
                a = c & ~excluded
                if not a:
                    return
                s = a.bit_count()
                if s < bsize:
                    bsize, branch = s, a
                if not a & used:
                    used |= a
                    lb += 1
            if size + lb > k:
                return
            for w in iter_bits(branch):
                bit = 1 << w
                rec(size + 1, chosen | bit, excluded, [c for c in unhit if not c & bit])
                excluded |= bit

        try:
            rec(0, 0, ~allowed & full_mask(self.n), list(self.constraints))
        except _Stop:
            raise BudgetExceeded(k, k, None, self.nodes) from None
        return total

    def lex_least(self, k: int) -> Optional[int]:
        """Lexicographically least (as a sorted vertex list) hitting set of size <= k."""
        if not self.feasible:
            return None
        self._start()
        n = self.n
        allowed = self.allowed

        def rec(i: int, size: int, chosen: int, unhit: list[int]) -> Optional[int]:
            self._tick()
            if not unhit:
                return chosen
            if i == n or size == k:
                return None
            avail = allowed >> i << i
            used = 0
            lb = 0
            for c in unhit:
                a = c & avail
                if not a:
                    return None
                if not a & used:
                    used |= a
                    lb += 1
            if size + lb > k:
                return None
            if allowed >> i & 1:
                bit = 1 << i
                found = rec(i + 1, size + 1, chosen | bit, [c for c in unhit if not c & bit])
                if found is not None:
                    return found
            return rec(i + 1, size, chosen, unhit)

        try:
            return rec(0, 0, 0, list(self.constraints))
        except _Stop:
            raise BudgetExceeded(k, k, None, self.nodes) from None


# constraint builders


def idc_constraints(g: Graph, r: int) -> list[int]:
    balls = g.balls(r)
    pair = g.twin_pair(r)
    if pair is not None:
        raise TwinsPresent(pair, r)
    return list(balls) + [balls[u] ^ balls[v] for u, v in combinations(range(g.n), 2)]


def ld_constraints(g: Graph, r: int) -> list[int]:
    balls = g.balls(r)
    return list(balls) + [balls[u] ^ balls[v] | 1 << u | 1 << v for u, v in combinations(range(g.n), 2)]


def soc_constraints(g: Graph, v0: int) -> tuple[list[int], int]:
    """Constraints and forbidden set for separating-only codes leaving ``v0`` uncovered."""
    balls = g.balls(1)
    cons = [b for v, b in enumerate(balls) if v != v0]
    cons += [balls[u] ^ balls[v] for u, v in combinations(range(g.n), 2)]
    return cons, balls[v0]


def log_bound(n: int) -> int:
    """Identifying sets are distinct nonempty subsets of the code: 2^|C| - 1 >= n."""
    return math.ceil(math.log2(n + 1)) if n else 0


def theorem_bounds(g: Graph, r: int) -> Optional[tuple[int, int]]:
    """``(ceil(log2(n+1)), n-1)`` when the graph is connected, r-twin-free and of order >= 2r+1."""
    if g.n < 2 * r + 1 or not g.is_connected() or g.twin_pair(r) is not None:
        return None
    return log_bound(g.n), g.n - 1


def _provenance(opt: int, log_lb: int, packing: int) -> tuple[int, str]:
    lower = max(log_lb, packing)
    if opt == log_lb and log_lb >= packing:
        return lower, "log2"
    if opt == packing:
        return lower, "packing"
    return lower, "search"


def _solve(kind: str, n: int, constraints: list[int], budget: Optional[Budget], count: bool,
           log_lb: int = 0, excluded: int = 0, method: str = "auto") -> SolveReport:
    hs = HittingSet(n, constraints, excluded, budget)
    packing = hs.packing_bound(~hs.allowed)
    try:
        opt, _ = hs.minimum()
        cert = hs.lex_least(opt)
    except BudgetExceeded as exc:
        exc.lower = max(exc.lower, log_lb)
        raise
    lower, used = _provenance(opt, log_lb, packing)
    report = SolveReport(kind, opt, cert, lower_bound=lower, lower_bound_used=used)
    if count:
        report.count = count_at(hs, opt, method)
    report.nodes_explored = hs.nodes
    return report


def count_at(hs: HittingSet, k: int, method: str = "auto") -> int:
    """Count size-k hitting sets, by search or by word-parallel enumeration."""
    if method == "auto":
        method = "enumerate" if fixedsize.feasible(hs.allowed.bit_count(), k) else "search"
    if method == "enumerate":
        return fixedsize.count_hitting_sets(hs.n, hs.constraints, k, hs.allowed)
    if method == "search":
        return hs.count(k)
    raise ValueError(f"unknown counting method {method!r}")


def min_id_code(g: Graph, r: int, budget: Optional[Budget] = None) -> SolveReport:
    report = _solve("idc", g.n, idc_constraints(g, r), budget, False, log_bound(g.n))
    assert verify.is_identifying(g, report.certificate, r)
    return report


def count_min_id_codes(g: Graph, r: int, budget: Optional[Budget] = None, method: str = "auto") -> SolveReport:
    report = _solve("idc", g.n, idc_constraints(g, r), budget, True, log_bound(g.n), method=method)
    assert verify.is_identifying(g, report.certificate, r)
    return report


def min_ld_code(g: Graph, r: int, budget: Optional[Budget] = None, count: bool = False) -> SolveReport:
    report = _solve("ld", g.n, ld_constraints(g, r), budget, count)
    assert verify.is_locating_dominating(g, report.certificate, r)
    return report


def _soc(g: Graph, budget: Optional[Budget], count: bool, method: str = "auto") -> SolveReport:
    best: Optional[SolveReport] = None
    per_vertex = {}
    nodes = 0
    for v0 in range(g.n):
        cons, forbidden = soc_constraints(g, v0)
        hs = HittingSet(g.n, cons, forbidden, budget)
        if not hs.feasible:
            continue
        try:
            opt, _ = hs.minimum()
        except ValueError:
            continue
        per_vertex[v0] = (opt, hs)
        nodes += hs.nodes
        if best is None or opt < best.optimum:
            best = SolveReport("soc", opt, 0)
    if best is None:
        raise NoSocExists("graph admits no separating-only code")
    sigma = best.optimum
    certs = []
    total = 0
    for v0, (opt, hs) in per_vertex.items():
        if opt != sigma:
            continue
        certs.append(hs.lex_least(sigma))
        if count:
            # each SOC has a unique uncovered vertex, so these counts partition
            total += count_at(hs, sigma, method)
        nodes += hs.nodes
    best.certificate = min(certs, key=members)
    best.count = total if count else None
    best.nodes_explored = nodes
    best.extra["uncovered_vertex"] = verify.soc_empty_vertex(g, best.certificate)
    assert verify.is_soc(g, best.certificate)
    return best


def min_soc(g: Graph, budget: Optional[Budget] = None) -> SolveReport:
    return _soc(g, budget, False)


def count_min_socs(g: Graph, budget: Optional[Budget] = None, method: str = "auto") -> SolveReport:
    return _soc(g, budget, True, method)


SOLVERS: dict[str, Callable[..., SolveReport]] = {
    "idc": min_id_code,
    "ld": lambda g, r, budget=None: min_ld_code(g, r, budget),
    "soc": lambda g, r, budget=None: min_soc(g, budget),
}


def is_r_terminal(g: Graph, r: int) -> tuple[bool, dict[int, Optional[tuple[int, int]]]]:
    """Whether every single-vertex deletion creates r-twins.

    The witness map sends each vertex to a twin pair of ``G - v`` (in the
    original vertex ids), or ``None`` when ``G - v`` stays twin-free.
    """
    pair = g.twin_pair(r)
    if pair is not None:
        raise TwinsPresent(pair, r)
    witnesses: dict[int, Optional[tuple[int, int]]] = {}
    for v in range(g.n):
        h, idmap = g.remove_vertex(v)
        back = {new: old for old, new in idmap.items()}
        twin = h.twin_pair(r)
        witnesses[v] = None if twin is None else (back[twin[0]], back[twin[1]])
    return all(w is not None for w in witnesses.values()), witnesses


@dataclass
class RemovalDelta:
    before: SolveReport
    after: SolveReport

    @property
    def delta(self) -> int:
        return self.before.optimum - self.after.optimum


def removal_delta(g: Graph, target: Union[int, tuple[int, int]], r: int,
                  budget: Optional[Budget] = None) -> RemovalDelta:
    """Id_r(G) and Id_r of G minus a vertex (int) or an edge (pair)."""
    if isinstance(target, tuple):
        h = g.remove_edge(*target)
    else:
        h, _ = g.remove_vertex(target)
    return RemovalDelta(min_id_code(g, r, budget), min_id_code(h, r, budget))


def brute_force_minimum(g: Graph, predicate: Callable[[Graph, int], bool]) -> tuple[Optional[int], int]:
    """Smallest size and number of optimal sets over all 2^n subsets (test oracle)."""
    if g.n > 20:
        raise SolveError("brute force limited to n <= 20")
    for k in range(g.n + 1):
        found = 0
        for subset in combinations(range(g.n), k):
            mask = sum(1 << v for v in subset)
            if predicate(g, mask):
                found += 1
        if found:
            return k, found
    return None, 0
