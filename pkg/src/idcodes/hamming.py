"""Word-level routines for binary Hamming spaces F^n.

Words are integers below ``2**n``; the leftmost character of a word's binary
string is its most significant bit, so concatenating ``x`` (length n) with
``y`` (length m) gives ``x << m | y``.  Vertex ``x`` of
:func:`idcodes.families.hypercube` is the word ``x``, so results can be
compared directly with the generic graph routines.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Optional, Sequence

from .bits import mask_of
from .graph import SizeGuardError
from .solve import HittingSet

MAX_LENGTH = 24
WORK_GUARD = 5 * 10**7
SUBSET_GUARD = 10**6


class HammingError(ValueError):
    pass


@dataclass(frozen=True)
class HammingCode:
    """A code of length ``n``: sorted, duplicate-free words."""

    n: int
    words: tuple[int, ...]

    def __post_init__(self):
        if any(not 0 <= w < 1 << self.n for w in self.words):
            raise HammingError(f"word out of range for length {self.n}")
        object.__setattr__(self, "words", tuple(sorted(set(self.words))))

    @classmethod
    def of(cls, n: int, words: Iterable[int]) -> "HammingCode":
        return cls(n, tuple(words))

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    def __contains__(self, word: int) -> bool:
        return word in set(self.words)

    @property
    def mask(self) -> int:
        """The code as a vertex set of the hypercube graph."""
        return mask_of(self.words)

    def strings(self) -> list[str]:
        return [to_string(w, self.n) for w in self.words]


def to_string(word: int, n: int) -> str:
    return format(word, f"0{n}b") if n else ""


def from_string(text: str) -> int:
    if any(ch not in "01" for ch in text):
        raise HammingError(f"not a binary word: {text!r}")
    return int(text, 2) if text else 0


def parse_code(text: str) -> HammingCode:
    """One binary string per line; blank lines and ``#`` comments ignored."""
    words = []
    n = None
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if n is None:
            n = len(line)
        elif len(line) != n:
            raise HammingError(f"word {line!r} has length {len(line)}, expected {n}")
        words.append(from_string(line))
    if n is None:
        raise HammingError("empty code file")
    return HammingCode.of(n, words)


def format_code(code: HammingCode) -> str:
    return "".join(s + "\n" for s in code.strings())


def weight(x: int) -> int:
    return x.bit_count()


def distance(x: int, y: int) -> int:
    return (x ^ y).bit_count()


def parity(u: int) -> int:
    """Parity-check bit: 0 for even weight, 1 for odd."""
    return u.bit_count() & 1


def ball_size(n: int, r: int) -> int:
    """V(n, r): number of words within distance r of a fixed word."""
    if r < 0:
        return 0
    return sum(comb(n, i) for i in range(min(r, n) + 1))


@lru_cache(maxsize=None)
def error_patterns(n: int, r: int) -> tuple[int, ...]:
    """All words of weight <= r, by weight then value."""
    out = []
    for w in range(min(r, n) + 1):
        for pos in combinations(range(n), w):
            out.append(mask_of(pos))
    return tuple(out)


def hamming_ball(x: int, n: int, r: int) -> list[int]:
    return sorted(x ^ e for e in error_patterns(n, r))


def _check_word(x: int, n: int) -> None:
    if not 0 <= x < 1 << n:
        raise HammingError(f"word {x} is not of length {n}")


def ball_intersection_size(x: int, y: int, n: int) -> int:
    """|B_1(x) & B_1(y)| by the closed form for radius-1 balls."""
    _check_word(x, n)
    _check_word(y, n)
    d = distance(x, y)
    if d == 0:
        return n + 1
    if d <= 2:
        return 2
    return 0


def _guard(n: int, r: int) -> None:
    if n > MAX_LENGTH:
        raise SizeGuardError(f"length {n} exceeds {MAX_LENGTH}")
    work = (1 << n) * len(error_patterns(n, r))
    if work > WORK_GUARD:
        raise SizeGuardError(f"{work} ball lookups exceeds guard {WORK_GUARD}")


def identifying_keys(n: int, code: HammingCode, r: int) -> list[int]:
    """For every word x, the set of codeword indices within distance r (as a bitset)."""
    if code.n != n:
        raise HammingError(f"code has length {code.n}, expected {n}")
    _guard(n, r)
    index = {w: i for i, w in enumerate(code.words)}
    patterns = error_patterns(n, r)
    keys = []
    for x in range(1 << n):
        key = 0
        for e in patterns:
            i = index.get(x ^ e)
            if i is not None:
                key |= 1 << i
        keys.append(key)
    return keys


def is_idc_fast(n: int, code: HammingCode, r: int) -> bool:
    keys = identifying_keys(n, code, r)
    return all(keys) and len(set(keys)) == len(keys)


def is_l_idc_fast(n: int, code: HammingCode, r: int, ell: int) -> bool:
    """(r, <= ell)-identification by enumerating all word sets of size <= ell."""
    if ell < 1:
        raise HammingError("ell must be >= 1")
    size = 1 << n
    total = sum(comb(size, i) for i in range(1, ell + 1))
    if total > SUBSET_GUARD:
        raise SizeGuardError(f"{total} word sets exceeds guard {SUBSET_GUARD}")
    keys = identifying_keys(n, code, r)
    if not all(keys):
        return False
    seen = set()
    for k in range(1, ell + 1):
        for xs in combinations(range(size), k):
            union = 0
            for x in xs:
                union |= keys[x]
            if union in seen:
                return False
            seen.add(union)
    return True


def covering_multiplicities(n: int, code: HammingCode, r: int) -> list[int]:
    return [k.bit_count() for k in identifying_keys(n, code, r)]


def is_mu_covering_fast(n: int, code: HammingCode, r: int, mu: int, perfect: bool = False) -> bool:
    counts = covering_multiplicities(n, code, r)
    if perfect:
        return all(c == mu for c in counts)
    return min(counts) >= mu


# constructions


def pi_u_construction(n: int, code: HammingCode) -> HammingCode:
    """{(parity(u), u, u + c) : u in F^n, c in C}, a code of length 2n + 1."""
    if code.n != n:
        raise HammingError(f"code has length {code.n}, expected {n}")
    words = []
    for u in range(1 << n):
        head = parity(u) << (2 * n) | u << n
        for c in code.words:
            words.append(head | (u ^ c))
    return HammingCode.of(2 * n + 1, words)


def direct_sum(c1: HammingCode, n: int, c2: HammingCode, m: int) -> HammingCode:
    """All concatenations (x, y) with x in c1 (length n) and y in c2 (length m)."""
    if c1.n != n or c2.n != m:
        raise HammingError("code lengths do not match the declared lengths")
    return HammingCode.of(n + m, [x << m | y for x in c1.words for y in c2.words])


def whole_space(n: int) -> HammingCode:
    return HammingCode.of(n, range(1 << n))


# lower bounds


@dataclass
class Bound:
    label: str
    value: Optional[int]
    note: str = ""


def _refined_bound(n: int, r: int) -> Optional[int]:
    """Least K satisfying the counting inequality on words covered 1, 2, ... times."""
    space = 1 << n
    if r < n / 2:
        vol = ball_size(n, r)
        start = 1
    elif r <= n - 1:
        vol = ball_size(n, n - r - 1)
        start = 0
    else:
        return None
    for k in range(1, space + 1):
        # s = largest index with the partial binomial sum (from ``start``) <= 2^n
        acc = 1 if start == 0 else 0
        weighted = 0
        s = 0
        for i in range(1, k + 1):
            term = comb(k, i)
            if acc + term > space:
                break
            acc += term
            weighted += i * term
            s = i
        if k * vol >= weighted + (s + 1) * (space - acc):
            return k
    return None


def lower_bounds(n: int, r: int, ell: int = 1) -> list[Bound]:
    """Labelled lower bounds on the size of an (r, <= ell)-identifying code in F^n."""
    if n < 1 or r < 1 or ell < 1:
        raise HammingError("need n, r, ell >= 1")
    space = 1 << n
    out = [Bound("counting", math.ceil(math.log2(space + 1)), "2^|C| - 1 >= 2^n")]
    if ell == 1:
        out.append(Bound("two-fold", -(-2 * space // (ball_size(n, r) + 1)),
                         "ceil(2^(n+1) / (V(n,r) + 1))"))
        if r <= n - 1:
            out.append(Bound("refined", _refined_bound(n, r),
                             "r < n/2: uses V(n,r)" if r < n / 2 else "n/2 <= r <= n-1: uses V(n,n-r-1)"))
        else:
            out.append(Bound("refined", None, "skipped: needs r <= n-1"))
        if r == 1:
            out.append(Bound("father-son", -(-n * space // ball_size(n, 2)), "ceil(n 2^n / V(n,2))"))
    if r == 1:
        out.append(Bound("multi-fold", -(-(2 * ell - 1) * space // (n + 1)), "ceil((2l-1) 2^n / (n+1))"))
    elif ell >= 2:
        if comb(n, r):
            out.append(Bound("sets-a", -(-(2 * ell - 2) * space // comb(n, r)), "ceil((2l-2) 2^n / C(n,r))"))
            out.append(Bound("sets-b", -(-(2 * ell - 1) * space // (comb(n, r) + comb(n, r - 1))),
                             "ceil((2l-1) 2^n / (C(n,r) + C(n,r-1)))"))
        else:
            out.append(Bound("sets-a", None, "skipped: r > n"))
    return out


def best_lower_bound(n: int, r: int, ell: int = 1) -> int:
    return max(b.value for b in lower_bounds(n, r, ell) if b.value is not None)


# covering radius


def min_covering_code_size(n: int, r: int) -> int:
    """Smallest K such that some K words r-cover F^n (exact search)."""
    if n > 6:
        raise SizeGuardError("covering search limited to n <= 6")
    balls = [mask_of(hamming_ball(x, n, r)) for x in range(1 << n)]
    return HittingSet(1 << n, balls).minimum()[0]


def min_covering_radius(n: int, k: int) -> int:
    """r(n, K): least radius admitting a K-word r-covering of F^n."""
    if n > 5:
        raise SizeGuardError("covering radius search limited to n <= 5")
    if not 1 <= k <= 1 << n:
        raise HammingError(f"K must be in 1..2^{n}")
    for r in range(n + 1):
        if min_covering_code_size(n, r) <= k:
            return r
    return n


def identifying_code_may_exist(n: int, r: int, ell: int) -> bool:
    """False when r >= r(n, ell), which rules out (r, <= ell)-identifying codes."""
    if 1 <= ell < 1 << n:
        return r < min_covering_radius(n, ell)
    return True


# covering characterisations


@dataclass
class CoveringReport:
    n: int
    ell: int
    fold_covering: bool  # (2l-1)-fold 1-covering
    l_identifying: bool  # (1, <= l)-identifying, by enumeration
    plus_covering: bool  # (2l+1)-fold 1-covering
    notes: list[str] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        if self.ell >= 3:
            return self.fold_covering == self.l_identifying
        return not self.l_identifying or self.fold_covering


def covering_characterizations(n: int, code: HammingCode, ell: int) -> CoveringReport:
    """Compare multi-fold covering with (1, <= ell)-identification.

    Identification always implies the (2l-1)-fold covering; for ``ell >= 3``
    the two are equivalent, which is asserted.  The (2l+1)-fold status is
    reported as the test for codes that also detect more than ``ell`` faults.
    """
    if ell < 1:
        raise HammingError("ell must be >= 1")
    counts = covering_multiplicities(n, code, 1)
    low = min(counts)
    rep = CoveringReport(n, ell, low >= 2 * ell - 1, is_l_idc_fast(n, code, 1, ell), low >= 2 * ell + 1)
    if ell < 3:
        rep.notes.append("ell < 3: only identification => covering is guaranteed")
    assert rep.consistent, f"characterisation violated for n={n}, ell={ell}"
    return rep


# exact values quoted from the literature; documentation only, never used by the solver
KNOWN_VALUES: list[dict] = [
    {"r": 1, "n": 2, "value": 3, "provenance": "father-son bound attained"},
    {"r": 1, "n": 3, "value": 4, "provenance": "father-son bound attained"},
    {"r": 1, "n": 4, "value": 7, "provenance": "bound 6 improved to 7, attaining code known"},
    {"r": 1, "n": 5, "value": 10, "provenance": "father-son bound attained"},
    {"r": 1, "n": 6, "value": 19, "provenance": "19-word code plus exhaustive computer search"},
    {"r": 1, "n": 7, "value": 32, "provenance": "bound 31 improved to 32, attaining code known"},
    {"r": 2, "n": 4, "value": 6, "provenance": "refined bound 5 improved to 6"},
    {"r": 2, "n": 5, "value": 6, "provenance": "refined bound attained"},
    {"r": 2, "n": 6, "value": 8, "provenance": "refined bound attained"},
    {"r": 2, "n": 7, "value": 14, "provenance": "code given, smaller excluded by computer search"},
    {"r": 3, "n": 5, "value": 10, "provenance": "refined bound 9 improved to 10 by case analysis"},
    {"r": 3, "n": 6, "value": 7, "provenance": "refined bound attained"},
    {"r": 3, "n": 7, "value": 8, "provenance": "refined bound attained"},
]


def known_value(n: int, r: int) -> Optional[int]:
    if n == r + 1:
        return (1 << (r + 1)) - 1
    for row in KNOWN_VALUES:
        if row["n"] == n and row["r"] == r:
            return row["value"]
    return None


def words_of(code: Sequence[int], n: int) -> HammingCode:
    return HammingCode.of(n, code)
