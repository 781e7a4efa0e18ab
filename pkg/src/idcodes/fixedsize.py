"""Word-parallel enumeration of all k-subsets that hit every constraint.

Subsets are 64-bit masks over the allowed candidates (renumbered densely).
The k-subsets are built as outer ORs of low-half and high-half masks of
complementary weights, then filtered constraint by constraint with numpy.
"""

from __future__ import annotations

from math import comb
from typing import Iterator, Optional, Sequence

import numpy as np

from .bits import iter_bits

MAX_CANDIDATES = 62
MAX_SUBSETS = 5 * 10**7
CHUNK = 1 << 21


def feasible(candidates: int, k: int) -> bool:
    return candidates <= MAX_CANDIDATES and comb(candidates, k) <= MAX_SUBSETS


def _masks_by_weight(bits: int, shift: int) -> list[np.ndarray]:
    values = np.arange(1 << bits, dtype=np.int64)
    weights = np.zeros(values.shape, dtype=np.int64)
    v = values.copy()
    while v.any():
        weights += v & 1
        v >>= 1
    shifted = values << shift
    return [shifted[weights == w] for w in range(bits + 1)]


def _compress(mask: int, pos: dict[int, int]) -> int:
    out = 0
    for v in iter_bits(mask):
        out |= 1 << pos[v]
    return out


def _blocks(n: int, constraints: Sequence[int], k: int, allowed: int) -> Iterator[tuple[np.ndarray, list[int]]]:
    cand = list(iter_bits(allowed))
    m = len(cand)
    if m > MAX_CANDIDATES:
        raise ValueError(f"{m} candidates exceeds the 64-bit enumeration limit")
    if comb(m, k) > MAX_SUBSETS:
        raise ValueError(f"C({m},{k}) subsets exceeds enumeration guard {MAX_SUBSETS}")
    pos = {v: i for i, v in enumerate(cand)}
    cons = sorted({_compress(c & allowed, pos) for c in constraints}, key=lambda c: (c.bit_count(), c))
    if 0 in cons:
        return
    low_bits = m // 2
    low = _masks_by_weight(low_bits, 0)
    high = _masks_by_weight(m - low_bits, low_bits)
    cons_arr = [np.int64(c) for c in cons]
    for j in range(max(0, k - (m - low_bits)), min(k, low_bits) + 1):
        lows, highs = low[j], high[k - j]
        if not len(lows) or not len(highs):
            continue
        step = max(1, CHUNK // len(lows))
        for start in range(0, len(highs), step):
            block = (highs[start:start + step, None] | lows[None, :]).ravel()
            for c in cons_arr:
                block = block[(block & c) != 0]
                if not block.size:
                    break
            if block.size:
                yield block, cand


def count_hitting_sets(n: int, constraints: Sequence[int], k: int, allowed: Optional[int] = None) -> int:
    """Number of k-subsets of ``allowed`` meeting every constraint."""
    if allowed is None:
        allowed = (1 << n) - 1
    return sum(int(block.size) for block, _ in _blocks(n, constraints, k, allowed))


def hitting_sets(n: int, constraints: Sequence[int], k: int, allowed: Optional[int] = None) -> Iterator[int]:
    """Yield the qualifying k-subsets as bitsets over the original ids."""
    if allowed is None:
        allowed = (1 << n) - 1
    for block, cand in _blocks(n, constraints, k, allowed):
        for word in block.tolist():
            out = 0
            for i in iter_bits(word):
                out |= 1 << cand[i]
            yield out
