"""Disjoint Factors: static, dynamic and the constant-time binary structure.

A word over ``{1..k}`` is a yes-instance when it contains ``k`` pairwise
disjoint factors, one per symbol, where an ``s``-factor is a contiguous
substring of length at least two that starts and ends with ``s``.

The subset table ``DF[S]`` holds the smallest prefix end ``l`` such that
``word[1..l]`` contains disjoint factors for every symbol of ``S``
(``DF[{}] = 0``; ``None`` stands for "impossible").
"""

from __future__ import annotations

from typing import Callable, Sequence

from .errors import RangeError
from .predecessor import PredecessorSet


def _check_word(word: Sequence[int], k: int) -> list[int]:
    if k < 1:
        raise RangeError(f"k must be positive, got {k}")
    out = list(word)
    for pos, s in enumerate(out, 1):
        if not 1 <= s <= k:
            raise RangeError(f"symbol {s} at position {pos} outside [1, {k}]")
    return out


def subset_table(k: int, next_factor: Callable[[int, int], int | None]) -> list[int | None]:
    """Fill ``DF`` bottom-up over all ``2**k`` subsets (bit ``s-1`` = symbol ``s``)."""
    table: list[int | None] = [None] * (1 << k)
    table[0] = 0
    for mask in range(1, 1 << k):
        best = None
        m = mask
        while m:
            low = m & -m
            m ^= low
            prev = table[mask ^ low]
            if prev is None:
                continue
            end = next_factor(low.bit_length(), prev)
            if end is not None and (best is None or end < best):
                best = end
        table[mask] = best
    return table


class DfState:
    """Dynamic Disjoint Factors over a fixed-length word.

    With ``eager=True`` (default) every update refreshes the subset table,
    so :meth:`query` is a cached lookup.  With ``eager=False`` updates only
    touch the two affected occurrence sets and the table is rebuilt on query.
    """

    def __init__(self, word: Sequence[int], k: int, eager: bool = True) -> None:
        self.word = _check_word(word, k)
        self.k = k
        self.n = len(self.word)
        self.eager = eager
        universe = max(self.n, 1)
        self.occ_sets = [PredecessorSet(universe) for _ in range(k + 1)]
        for pos, s in enumerate(self.word, 1):
            self.occ_sets[s].insert(pos)
        self.df_table: list[int | None] = []
        self.cached_answer = False
        self._dirty = True
        self._refresh()

    def next_factor(self, s: int, ell: int) -> int | None:
        """Right end of the first ``s``-factor starting strictly after ``ell``."""
        if ell + 1 > self.n:
            return None
        occ = self.occ_sets[s]
        p1 = occ.successor(ell + 1)
        if p1 is None or p1 + 1 > self.n:
            return None
        return occ.successor(p1 + 1)

    def _refresh(self) -> None:
        self.df_table = subset_table(self.k, self.next_factor)
        self.cached_answer = self.df_table[-1] is not None
        self._dirty = False

    def update(self, pos: int, a: int) -> None:
        if not 1 <= pos <= self.n:
            raise RangeError(f"position {pos} outside [1, {self.n}]")
        if not 1 <= a <= self.k:
            raise RangeError(f"symbol {a} outside [1, {self.k}]")
        old = self.word[pos - 1]
        if old == a:
            return
        self.occ_sets[old].delete(pos)
        self.occ_sets[a].insert(pos)
        self.word[pos - 1] = a
        self._dirty = True
        if self.eager:
            self._refresh()

    def query(self) -> bool:
        if self._dirty:
            self._refresh()
        return self.cached_answer


def df_init(word: Sequence[int], k: int) -> DfState:
    return DfState(word, k)


def next_table(word: Sequence[int], k: int) -> list[list[int | None]]:
    """``next[s][l]`` = least position ``>= l`` holding ``s`` (1-based, ``l`` up to ``n+1``)."""
    n = len(word)
    table: list[list[int | None]] = [[None] * (n + 2) for _ in range(k + 1)]
    for s in range(1, k + 1):
        row = table[s]
        for ell in range(n, 0, -1):
            row[ell] = ell if word[ell - 1] == s else row[ell + 1]
    return table


def df_static(word: Sequence[int], k: int) -> bool:
    """One-shot answer in ``O(k 2^k + kn)`` via the ``next`` table."""
    word = _check_word(word, k)
    n = len(word)
    nxt = next_table(word, k)

    def next_factor(s: int, ell: int) -> int | None:
        if ell + 1 > n:
            return None
        p1 = nxt[s][ell + 1]
        if p1 is None:
            return None
        return nxt[s][p1 + 1]

    return subset_table(k, next_factor)[-1] is not None


class Df2:
    """Binary Disjoint Factors with O(1) updates and queries.

    Both symbols seen three or more times always admit disjoint factors; a
    symbol seen at most once never does.  Otherwise some symbol occurs
    exactly twice, at ``i < j``, and the instance is negative iff
    ``i <= 2`` and ``j >= n - 1``; that is read off the four border cells.
    """

    def __init__(self, word: Sequence[int]) -> None:
        self.word = _check_word(word, 2)
        self.n = len(self.word)
        self.counts = [0, 0, 0]
        for s in self.word:
            self.counts[s] += 1

    def update(self, pos: int, a: int) -> None:
        if not 1 <= pos <= self.n:
            raise RangeError(f"position {pos} outside [1, {self.n}]")
        if a not in (1, 2):
            raise RangeError(f"symbol {a} outside [1, 2]")
        old = self.word[pos - 1]
        self.counts[old] -= 1
        self.counts[a] += 1
        self.word[pos - 1] = a

    def query(self) -> bool:
        c1, c2 = self.counts[1], self.counts[2]
        if c1 <= 1 or c2 <= 1:
            return False
        if c1 >= 3 and c2 >= 3:
            return True
        s = 1 if c1 == 2 else 2
        n, w = self.n, self.word
        first_early = w[0] == s or w[1] == s
        second_late = w[n - 1] == s or w[n - 2] == s
        return not (first_early and second_late)


def df2_query(word: Sequence[int]) -> bool:
    return Df2(word).query()
