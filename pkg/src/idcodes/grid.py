"""Periodic identifying codes in the square, triangular, king and hexagonal grids.

Points are integer pairs ``(i, j)``.  A periodic code is a lattice ``L``
(two integer basis vectors) plus offsets; the code is the union of
``offset + L``.  Lattices are kept in Hermite normal form ``(a, 0), (c, d)``
with ``a * d = det`` and ``0 <= c < a``; the fundamental domain is
``{(x, y) : 0 <= x < a, 0 <= y < d}`` and class ``y * a + x`` indexes it.

Locality: if every vertex is r-dominated and ``d(u, v) > 2r`` then the
r-balls of ``u`` and ``v`` are disjoint, so ``I(u)`` and ``I(v)`` are
nonempty subsets of disjoint sets and differ.  Only pairs at distance at
most ``2r`` therefore need a separation check, and by periodicity ``u``
may be taken in the fundamental domain.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterator, Optional

from .bits import iter_bits, mask_of
from . import fixedsize
from .solve import Budget, HittingSet

KINDS = ("square", "triangular", "king", "hexagonal")
MODES = ("exhaustive", "exact", "anneal")
EXHAUSTIVE_GUARD = 10**8
HEX_MARGIN = 4

Point = tuple[int, int]


class GridError(ValueError):
    pass


def _check_kind(kind: str) -> None:
    if kind not in KINDS:
        raise GridError(f"unknown grid kind {kind!r}; choose from {KINDS}")


def neighbours(kind: str, p: Point) -> list[Point]:
    i, j = p
    if kind == "square":
        steps = ((1, 0), (-1, 0), (0, 1), (0, -1))
    elif kind == "triangular":
        steps = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1))
    elif kind == "king":
        steps = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, -1), (-1, 1), (1, 1), (-1, -1))
    elif kind == "hexagonal":
        # u - v in {(1,0), (0, (-1)^(i+j+1))} and symmetric closure
        steps = ((1, 0), (-1, 0), (0, 1 if (i + j) % 2 == 0 else -1))
    else:
        raise GridError(f"unknown grid kind {kind!r}; choose from {KINDS}")
    return [(i + a, j + b) for a, b in steps]


def bfs_distance(kind: str, p: Point, q: Point, window: Optional[tuple[int, int, int, int]] = None) -> int:
    """Plain BFS; with ``window = (xmin, xmax, ymin, ymax)`` the search stays inside it."""
    if p == q:
        return 0
    seen = {p}
    frontier = deque([(p, 0)])
    while frontier:
        u, du = frontier.popleft()
        for w in neighbours(kind, u):
            if w in seen:
                continue
            if window and not (window[0] <= w[0] <= window[1] and window[2] <= w[1] <= window[3]):
                continue
            if w == q:
                return du + 1
            seen.add(w)
            frontier.append((w, du + 1))
    raise GridError(f"{q} unreachable from {p} inside the window")


def grid_distance(kind: str, p: Point, q: Point) -> int:
    _check_kind(kind)
    dx, dy = q[0] - p[0], q[1] - p[1]
    if kind == "square":
        return abs(dx) + abs(dy)
    if kind == "king":
        return max(abs(dx), abs(dy))
    if kind == "triangular":
        # the (1,-1) diagonal shortens moves whose coordinates change in opposite directions
        return max(abs(dx), abs(dy)) if dx * dy < 0 else abs(dx) + abs(dy)
    m = HEX_MARGIN
    window = (min(p[0], q[0]) - m, max(p[0], q[0]) + m, min(p[1], q[1]) - m, max(p[1], q[1]) + m)
    return bfs_distance(kind, p, q, window)


@lru_cache(maxsize=None)
def _ball_offsets(kind: str, r: int, parity: int) -> tuple[Point, ...]:
    """Offsets of the r-ball around a point of the given coordinate-sum parity."""
    start = (parity, 0)
    dist = {start: 0}
    frontier = deque([start])
    while frontier:
        u = frontier.popleft()
        if dist[u] == r:
            continue
        for w in neighbours(kind, u):
            if w not in dist:
                dist[w] = dist[u] + 1
                frontier.append(w)
    return tuple(sorted((x - parity, y) for x, y in dist))


def ball(kind: str, p: Point, r: int) -> list[Point]:
    _check_kind(kind)
    parity = (p[0] + p[1]) % 2 if kind == "hexagonal" else 0
    return [(p[0] + a, p[1] + b) for a, b in _ball_offsets(kind, r, parity)]


# lattices


def hermite_normal_form(basis: tuple[Point, Point]) -> tuple[int, int, int]:
    """``(a, c, d)`` with the lattice spanned by ``(a, 0), (c, d)``."""
    (a, b), (c, d) = basis
    det = abs(a * d - b * c)
    if det == 0:
        raise GridError("basis vectors are linearly dependent")
    g, s, t = _ext_gcd(b, d)
    if g == 0:
        raise GridError("basis vectors are linearly dependent")
    a2 = det // g
    return a2, (s * a + t * c) % a2, g


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    if y == 0:
        return (abs(x), (1 if x >= 0 else -1), 0)
    g, s, t = _ext_gcd(y, x % y)
    return g, t, s - (x // y) * t


def sublattices(det: int, kind: str = "square") -> Iterator[tuple[int, int, int]]:
    """All index-``det`` sublattices of Z^2 in Hermite normal form.

    For the hexagonal grid only parity-preserving lattices (both basis
    vectors of even coordinate sum) are produced.
    """
    if det < 1:
        raise GridError("det must be >= 1")
    for a in range(1, det + 1):
        if det % a:
            continue
        d = det // a
        for c in range(a):
            if kind == "hexagonal" and (a % 2 or (c + d) % 2):
                continue
            yield a, c, d


@dataclass(frozen=True)
class Lattice:
    a: int
    c: int
    d: int

    @property
    def det(self) -> int:
        return self.a * self.d

    def cls(self, p: Point) -> int:
        k, y = divmod(p[1], self.d)
        x = (p[0] - k * self.c) % self.a
        return y * self.a + x

    def point(self, cls: int) -> Point:
        y, x = divmod(cls, self.a)
        return x, y

    def domain(self) -> list[Point]:
        return [self.point(k) for k in range(self.det)]

    def basis(self) -> tuple[Point, Point]:
        return (self.a, 0), (self.c, self.d)


class PeriodicGridCode:
    """Codewords ``offset + L`` for every offset; offsets are stored reduced."""

    def __init__(self, kind: str, basis: tuple[Point, Point], offsets):
        _check_kind(kind)
        basis = (tuple(basis[0]), tuple(basis[1]))
        if kind == "hexagonal" and any((x + y) % 2 for x, y in basis):
            raise GridError("hexagonal lattices need basis vectors of even coordinate sum")
        self.kind = kind
        self.basis = basis
        self.lattice = Lattice(*hermite_normal_form(basis))
        offsets = [tuple(p) for p in offsets]
        classes = [self.lattice.cls(p) for p in offsets]
        if len(set(classes)) != len(classes):
            raise GridError("offsets are not distinct modulo the lattice")
        self.classes = mask_of(classes)

    @classmethod
    def from_classes(cls, kind: str, lat: Lattice, classes: int) -> "PeriodicGridCode":
        return cls(kind, lat.basis(), [lat.point(k) for k in iter_bits(classes)])

    @property
    def det(self) -> int:
        return self.lattice.det

    @property
    def offsets(self) -> list[Point]:
        return [self.lattice.point(k) for k in iter_bits(self.classes)]

    def density(self) -> Fraction:
        return Fraction(self.classes.bit_count(), self.det)

    def contains(self, p: Point) -> bool:
        return bool(self.classes >> self.lattice.cls(p) & 1)

    def translated(self, vector: Point) -> "PeriodicGridCode":
        return PeriodicGridCode(self.kind, self.basis,
                                [(x + vector[0], y + vector[1]) for x, y in self.offsets])

    def __eq__(self, other):
        return (isinstance(other, PeriodicGridCode) and self.kind == other.kind
                and self.lattice == other.lattice and self.classes == other.classes)

    def __repr__(self):
        return f"PeriodicGridCode({self.kind!r}, {self.basis}, {self.offsets})"


def density(pc: PeriodicGridCode) -> Fraction:
    return pc.density()


# verification


@dataclass(frozen=True)
class GridViolation:
    kind: str
    points: tuple[Point, ...]

    def describe(self) -> str:
        return f"{self.kind}: " + " ".join(f"({x},{y})" for x, y in self.points)


def identifying_set(pc: PeriodicGridCode, p: Point, r: int) -> frozenset:
    return frozenset(q for q in ball(pc.kind, p, r) if pc.contains(q))


def verify_periodic(pc: PeriodicGridCode, r: int) -> Optional[GridViolation]:
    """``None`` if the periodic code is r-identifying, else the first failure found."""
    if r < 1:
        raise GridError("radius must be >= 1")
    domain = pc.lattice.domain()
    for u in domain:
        if not identifying_set(pc, u, r):
            return GridViolation("undominated", (u,))
    for u in domain:
        iu = identifying_set(pc, u, r)
        for v in ball(pc.kind, u, 2 * r):
            if v != u and identifying_set(pc, v, r) == iu:
                return GridViolation("unseparated", (u, v))
    return None


def is_periodic_idc(pc: PeriodicGridCode, r: int) -> bool:
    return verify_periodic(pc, r) is None


def window_oracle(pc: PeriodicGridCode, r: int, margin: Optional[int] = None) -> bool:
    """Brute force on a finite window: every window point dominated and all
    window points pairwise separated, with no distance cut-off."""
    lat = pc.lattice
    m = 2 * r + 1 if margin is None else margin
    xs = range(-m, lat.a + lat.c + m)
    ys = range(-m, lat.d + m)
    seen = set()
    for x in xs:
        for y in ys:
            key = identifying_set(pc, (x, y), r)
            if not key or key in seen:
                return False
            seen.add(key)
    return True


# constructions and search


def king_construction(r: int) -> PeriodicGridCode:
    """Two rows by 2r columns with one codeword in the corner, strips shifted by two columns."""
    if r < 2:
        raise GridError("king construction needs r >= 2")
    return PeriodicGridCode("king", ((2 * r, 0), (2, 2)), [(0, 0)])


def class_constraints(kind: str, lat: Lattice, r: int) -> list[int]:
    """Hitting-set constraints over offset classes equivalent to r-identification."""
    cons = set()
    for u in lat.domain():
        bu = set(ball(kind, u, r))
        cons.add(mask_of({lat.cls(p) for p in bu}))
        for v in ball(kind, u, 2 * r):
            if v == u:
                continue
            diff = bu.symmetric_difference(ball(kind, v, r))
            cons.add(mask_of({lat.cls(p) for p in diff}))
    return sorted(cons, key=lambda c: (c.bit_count(), c))


def _anneal(cons: list[int], det: int, count: int, rng: random.Random, steps: int) -> Optional[int]:
    if count > det:
        return None
    chosen = rng.sample(range(det), count)
    code = mask_of(chosen)

    def cost(m: int) -> int:
        return sum(1 for c in cons if not c & m)

    cur = cost(code)
    temp = 2.0
    for _ in range(steps):
        if cur == 0:
            return code
        inside = list(iter_bits(code))
        outside = [k for k in range(det) if not code >> k & 1]
        if not outside:
            return None
        cand = code & ~(1 << rng.choice(inside)) | 1 << rng.choice(outside)
        new = cost(cand)
        if new <= cur or rng.random() < pow(2.718281828, (cur - new) / temp):
            code, cur = cand, new
        temp = max(0.05, temp * 0.999)
    return code if cur == 0 else None


def search_tiles(kind: str, r: int, det: int, count: int, mode: str = "exhaustive",
                 seed: int = 0, steps: int = 20000, budget: Optional[Budget] = None) -> Optional[PeriodicGridCode]:
    """Look for a periodic r-IdC with ``count`` offsets on an index-``det`` lattice.

    ``exhaustive`` tests every offset subset of every sublattice and returns
    the first hit (numerically smallest class mask on the first lattice);
    ``exact`` minimises offsets per lattice with the hitting-set solver and
    returns the sparsest code of at most ``count`` offsets; ``anneal`` is a
    seeded swap local search.  ``None`` means nothing was found.
    """
    _check_kind(kind)
    if mode not in MODES:
        raise GridError(f"mode must be one of {MODES}")
    if not 1 <= count <= det:
        raise GridError("need 1 <= count <= det")
    lats = [Lattice(*t) for t in sublattices(det, kind)]
    if mode == "exhaustive":
        total = len(lats) * comb(det, count)
        if total > EXHAUSTIVE_GUARD or not fixedsize.feasible(det, count):
            raise GridError(f"{total} candidate tiles exceeds guard {EXHAUSTIVE_GUARD}; try --mode exact")
        for lat in lats:
            cons = class_constraints(kind, lat, r)
            best = min(fixedsize.hitting_sets(det, cons, count), default=None)
            if best is not None:
                return PeriodicGridCode.from_classes(kind, lat, best)
        return None
    if mode == "exact":
        best = None
        for lat in lats:
            hs = HittingSet(det, class_constraints(kind, lat, r), budget=budget)
            if not hs.feasible:
                continue
            size, mask = hs.minimum()
            if size <= count and (best is None or size < best[0]):
                best = (size, lat, mask)
        return None if best is None else PeriodicGridCode.from_classes(kind, best[1], best[2])
    rng = random.Random(seed)
    for lat in lats:
        cons = class_constraints(kind, lat, r)
        if 0 in cons:
            continue
        found = _anneal(cons, det, count, rng, steps)
        if found is not None:
            return PeriodicGridCode.from_classes(kind, lat, found)
    return None


def min_density(kind: str, r: int, det: int) -> Optional[Fraction]:
    """Least density of a periodic r-IdC over all index-``det`` lattices (exact)."""
    pc = search_tiles(kind, r, det, det, mode="exact")
    return None if pc is None else pc.density()


# tile text format


def format_tile(pc: PeriodicGridCode) -> str:
    (a, b), (c, d) = pc.basis
    lines = [f"grid {pc.kind}", f"basis {a} {b} {c} {d}"]
    lines += [f"point {x} {y}" for x, y in pc.offsets]
    return "\n".join(lines) + "\n"


def parse_tile(text: str) -> PeriodicGridCode:
    kind = basis = None
    points = []
    for lineno, line in enumerate(text.splitlines(), 1):
        parts = line.split("#", 1)[0].split()
        if not parts:
            continue
        try:
            if parts[0] == "grid" and len(parts) == 2:
                kind = parts[1]
            elif parts[0] == "basis" and len(parts) == 5:
                a, b, c, d = map(int, parts[1:])
                basis = ((a, b), (c, d))
            elif parts[0] == "point" and len(parts) == 3:
                points.append((int(parts[1]), int(parts[2])))
            else:
                raise GridError(f"line {lineno}: unrecognised {line.strip()!r}")
        except ValueError as exc:
            if isinstance(exc, GridError):
                raise
            raise GridError(f"line {lineno}: bad integer in {line.strip()!r}") from None
    if kind is None or basis is None:
        raise GridError("tile needs a 'grid' and a 'basis' line")
    return PeriodicGridCode(kind, basis, points)

