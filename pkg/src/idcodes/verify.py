"""Membership tests for identifying codes and their variants.

Every ``*_violation`` function returns ``None`` when the code belongs to the
class and otherwise a :class:`Violation` naming the smallest offending
vertices (or vertex sets).  The ``is_*`` wrappers return booleans.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Optional, Sequence, Union

from .graph import Graph, SizeGuardError

ENUMERATION_GUARD = 10**6

UNDOMINATED = "undominated"
UNSEPARATED = "unseparated"
COVERING_DEFICIT = "covering-deficit"
ROBUSTNESS_BREAK = "robustness-break"
SOC_ZERO_MISSING = "soc-zero-missing"

Item = Union[int, tuple[int, ...]]


@dataclass(frozen=True)
class Violation:
    """Why a code fails a class.

    ``items`` holds vertices (ints) or vertex sets (sorted tuples).  For
    ``robustness-break`` it holds the toggled vertex pairs and ``inner`` is
    the violation found in the edited graph.
    """

    kind: str
    items: tuple[Item, ...]
    detail: str = ""
    inner: Optional["Violation"] = field(default=None, compare=False)

    def describe(self, one_based: bool = True) -> str:
        off = 1 if one_based else 0

        def fmt(item: Item) -> str:
            if isinstance(item, tuple):
                return "{" + ",".join(str(v + off) for v in item) + "}"
            return str(item + off)

        text = f"{self.kind}: " + " ".join(fmt(i) for i in self.items)
        if self.detail:
            text += f" ({self.detail})"
        if self.inner is not None:
            text += f" -> {self.inner.describe(one_based)}"
        return text


def identifying_set(g: Graph, code: int, v: int, r: int) -> int:
    return g.ball(v, r) & code


def identifying_sets(g: Graph, code: int, r: int) -> list[int]:
    return [b & code for b in g.balls(r)]


def _first_collision(keys: Sequence[int], among: Optional[Sequence[int]] = None) -> Optional[tuple[int, int]]:
    """Lexicographically smallest pair u < v (from ``among``) with equal keys."""
    groups: dict[int, list[int]] = {}
    for v in range(len(keys)) if among is None else among:
        groups.setdefault(keys[v], []).append(v)
    pairs = [(g[0], g[1]) for g in groups.values() if len(g) > 1]
    return min(pairs) if pairs else None


def _undominated(isets: Sequence[int]) -> Optional[Violation]:
    for v, s in enumerate(isets):
        if not s:
            return Violation(UNDOMINATED, (v,))
    return None


def identifying_violation(g: Graph, code: int, r: int) -> Optional[Violation]:
    isets = identifying_sets(g, code, r)
    bad = _undominated(isets)
    if bad:
        return bad
    pair = _first_collision(isets)
    if pair:
        return Violation(UNSEPARATED, pair)
    return None


def is_identifying(g: Graph, code: int, r: int) -> bool:
    return identifying_violation(g, code, r) is None


def _subset_count(n: int, ell: int, include_empty: bool = False) -> int:
    return sum(comb(n, i) for i in range(0 if include_empty else 1, ell + 1))


def _check_guard(n: int, ell: int, include_empty: bool = False) -> None:
    total = _subset_count(n, ell, include_empty)
    if total > ENUMERATION_GUARD:
        raise SizeGuardError(f"{total} vertex subsets of size <= {ell} exceeds guard {ENUMERATION_GUARD}")


def l_identifying_violation(g: Graph, code: int, r: int, ell: int) -> Optional[Violation]:
    """(r, <= ell)-identification: unions of identifying sets over all
    nonempty vertex sets of size at most ``ell`` are pairwise distinct."""
    if ell < 1:
        raise ValueError("ell must be >= 1")
    _check_guard(g.n, ell)
    isets = identifying_sets(g, code, r)
    bad = _undominated(isets)
    if bad:
        return bad
    seen: dict[int, tuple[int, ...]] = {}
    for size in range(1, ell + 1):
        for xs in combinations(range(g.n), size):
            union = 0
            for v in xs:
                union |= isets[v]
            prev = seen.get(union)
            if prev is not None:
                return Violation(UNSEPARATED, (prev, xs))
            seen[union] = xs
    return None


def is_l_identifying(g: Graph, code: int, r: int, ell: int) -> bool:
    return l_identifying_violation(g, code, r, ell) is None


def strongly_identifying_violation(g: Graph, code: int, r: int, ell: int) -> Optional[Violation]:
    """Strong (r, <= ell)-identification.

    Each vertex set X with ``|X| <= ell`` (the empty set included) owns the
    interval of sets U with ``I(X) - (X & code) <= U <= I(X)``; the code is
    strongly identifying when the intervals of distinct X are pairwise
    disjoint.  An interval has at most ``2**ell`` members, so they are listed
    explicitly and a shared member is a collision.
    """
    if ell < 1:
        raise ValueError("ell must be >= 1")
    _check_guard(g.n, ell, include_empty=True)
    isets = identifying_sets(g, code, r)
    owner: dict[int, tuple[int, ...]] = {}
    for size in range(0, ell + 1):
        for xs in combinations(range(g.n), size):
            upper = 0
            xmask = 0
            for v in xs:
                upper |= isets[v]
                xmask |= 1 << v
            free = xmask & code
            # every U in the interval is upper minus a subset of ``free``
            sub = free
            while True:
                u = upper & ~sub
                prev = owner.get(u)
                if prev is not None and prev != xs:
                    return Violation(UNSEPARATED, (prev, xs), "set intervals intersect")
                owner[u] = xs
                if sub == 0:
                    break
                sub = (sub - 1) & free
    return None


def is_strongly_identifying(g: Graph, code: int, r: int, ell: int) -> bool:
    return strongly_identifying_violation(g, code, r, ell) is None


def strong_pairs_violation(g: Graph, code: int, r: int) -> Optional[Violation]:
    """Strong (r, <= 1)-identification via closed/open neighbourhood pairs.

    For distinct vertices the pairs {B_r(v) & C, N_r(v) & C} must be
    disjoint, and (the empty vertex set taking part) no pair may contain the
    empty set.
    """
    pairs = []
    for v in range(g.n):
        closed = g.ball(v, r) & code
        opened = g.open_ball(v, r) & code
        if closed == 0 or opened == 0:
            return Violation(UNDOMINATED, (v,), "empty set in its pair")
        pairs.append({closed, opened})
    for u, v in combinations(range(g.n), 2):
        if pairs[u] & pairs[v]:
            return Violation(UNSEPARATED, (u, v), "neighbourhood pairs intersect")
    return None


def locating_dominating_violation(g: Graph, code: int, r: int) -> Optional[Violation]:
    isets = identifying_sets(g, code, r)
    bad = _undominated(isets)
    if bad:
        return bad
    outside = [v for v in range(g.n) if not code >> v & 1]
    pair = _first_collision(isets, outside)
    if pair:
        return Violation(UNSEPARATED, pair, "non-codewords")
    return None


def is_locating_dominating(g: Graph, code: int, r: int) -> bool:
    return locating_dominating_violation(g, code, r) is None


def soc_violation(g: Graph, code: int) -> Optional[Violation]:
    """Separating-only code (radius 1): one vertex has an empty identifying
    set and all identifying sets are pairwise distinct."""
    isets = identifying_sets(g, code, 1)
    pair = _first_collision(isets)
    if pair:
        return Violation(UNSEPARATED, pair)
    if all(isets):
        return Violation(SOC_ZERO_MISSING, ())
    return None


def soc_empty_vertex(g: Graph, code: int) -> Optional[int]:
    """The vertex left uncovered by a separating-only code, or ``None`` if ``code`` is not one."""
    if soc_violation(g, code) is not None:
        return None
    return next(v for v, s in enumerate(identifying_sets(g, code, 1)) if not s)


def is_soc(g: Graph, code: int) -> bool:
    return soc_violation(g, code) is None


def covering_counts(g: Graph, code: int, r: int) -> list[int]:
    return [(b & code).bit_count() for b in g.balls(r)]


def mu_covering_violation(g: Graph, code: int, r: int, mu: int, perfect: bool = False) -> Optional[Violation]:
    if mu < 1:
        raise ValueError("mu must be >= 1")
    for v, c in enumerate(covering_counts(g, code, r)):
        if c < mu or (perfect and c != mu):
            return Violation(COVERING_DEFICIT, (v,), f"covered {c} times, need {'exactly ' if perfect else ''}{mu}")
    return None


def is_mu_fold_covering(g: Graph, code: int, r: int, mu: int) -> bool:
    return mu_covering_violation(g, code, r, mu) is None


def is_perfect_mu_fold_covering(g: Graph, code: int, r: int, mu: int) -> bool:
    return mu_covering_violation(g, code, r, mu, perfect=True) is None


def edge_robust_violation(g: Graph, code: int, r: int, t: int) -> Optional[Violation]:
    """C stays r-identifying after any <= t edge additions/deletions."""
    if t < 0:
        raise ValueError("t must be >= 0")
    bad = identifying_violation(g, code, r)
    if bad or t == 0:
        return bad
    pairs = list(combinations(range(g.n), 2))
    total = sum(comb(len(pairs), i) for i in range(1, t + 1))
    if total > ENUMERATION_GUARD:
        raise SizeGuardError(f"{total} edit sets exceeds guard {ENUMERATION_GUARD}")
    for size in range(1, t + 1):
        for edits in combinations(pairs, size):
            inner = identifying_violation(g.toggle_edges(edits), code, r)
            if inner is not None:
                return Violation(ROBUSTNESS_BREAK, tuple(edits), f"{size} edge edit(s)", inner)
    return None


def is_t_edge_robust(g: Graph, code: int, r: int, t: int) -> bool:
    return edge_robust_violation(g, code, r, t) is None


CLASSES = {
    "idc": lambda g, c, r, ell, t: identifying_violation(g, c, r),
    "lidc": lambda g, c, r, ell, t: l_identifying_violation(g, c, r, ell),
    "strong": lambda g, c, r, ell, t: strongly_identifying_violation(g, c, r, ell),
    "ld": lambda g, c, r, ell, t: locating_dominating_violation(g, c, r),
    "soc": lambda g, c, r, ell, t: soc_violation(g, c),
    "robust": lambda g, c, r, ell, t: edge_robust_violation(g, c, r, t),
}


def check(kind: str, g: Graph, code: int, r: int = 1, ell: int = 1, t: int = 1) -> Optional[Violation]:
    """Dispatch by class name (``idc``, ``lidc``, ``strong``, ``ld``, ``soc``, ``robust``)."""
    try:
        fn = CLASSES[kind]
    except KeyError:
        raise ValueError(f"unknown code class {kind!r}") from None
    return fn(g, code, r, ell, t)
