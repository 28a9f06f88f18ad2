"""Brute-force reference answers.

Nothing here imports the dynamic structures; these functions are the
independent side of every equivalence test.
"""

from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np


class OracleLimitError(ValueError):
    """The requested enumeration exceeds the configured size bound."""


@dataclass(frozen=True)
class OracleConfig:
    max_ed_cells: int = 4_000_000
    max_cs_candidates: int = 1 << 22
    max_df_permutation_work: int = 10_000_000
    max_df_interval_length: int = 14


DEFAULT_CONFIG = OracleConfig()


def hamming(u: Sequence, v: Sequence) -> int:
    if len(u) != len(v):
        raise ValueError(f"length mismatch: {len(u)} != {len(v)}")
    return sum(1 for a, b in zip(u, v) if a != b)


def ed_dp(x: Sequence, y: Sequence, config: OracleConfig = DEFAULT_CONFIG) -> int:
    """Full quadratic Levenshtein distance (unit-cost substitution/indel).

    Rows are vectorized: the in-row insertion chain is a running minimum of
    ``tmp[j] - j`` shifted back by ``j``.
    """
    m, n = len(x), len(y)
    if (m + 1) * (n + 1) > config.max_ed_cells:
        raise OracleLimitError(f"ed_dp on {m}x{n} exceeds {config.max_ed_cells} cells")
    if m == 0 or n == 0:
        return m + n
    codes: dict = {}
    xa = np.array([codes.setdefault(c, len(codes)) for c in x], dtype=np.int64)
    ya = np.array([codes.setdefault(c, len(codes)) for c in y], dtype=np.int64)
    idx = np.arange(n + 1, dtype=np.int64)
    prev = idx.copy()
    for i in range(1, m + 1):
        tmp = np.empty(n + 1, dtype=np.int64)
        tmp[0] = i
        cost = (ya != xa[i - 1]).astype(np.int64)
        tmp[1:] = np.minimum(prev[1:] + 1, prev[:-1] + cost)
        prev = np.minimum.accumulate(tmp - idx) + idx
    return int(prev[n])


@functools.lru_cache(maxsize=16)
def _all_words(sigma: int, L: int) -> np.ndarray:
    """Row ``r`` is the base-``sigma`` expansion of ``r`` (symbols ``1..sigma``)."""
    r = np.arange(sigma**L, dtype=np.int64)
    cands = np.empty((sigma**L, L), dtype=np.int8)
    for pos in range(L - 1, -1, -1):
        cands[:, pos] = r % sigma + 1
        r //= sigma
    cands.setflags(write=False)
    return cands


def cs_exhaustive(
    words: Sequence[Sequence[int]], sigma: int, d: int, config: OracleConfig = DEFAULT_CONFIG
) -> bool:
    """True iff some word over ``{1..sigma}^L`` is within Hamming ``d`` of all words."""
    if not words:
        return True
    L = len(words[0])
    if any(len(w) != L for w in words):
        raise ValueError("ragged dictionary")
    total = sigma**L
    if total > config.max_cs_candidates:
        raise OracleLimitError(f"sigma^L = {total} exceeds {config.max_cs_candidates}")
    if L == 0:
        return True
    cands = _all_words(sigma, L)
    worst = np.zeros(total, dtype=np.int16)
    for w in words:
        dist = (cands != np.asarray(w, dtype=np.int8)).sum(axis=1, dtype=np.int16)
        np.maximum(worst, dist, out=worst)
    return bool((worst <= d).any())


class CsExhaustiveStream:
    """:func:`cs_exhaustive` under single-symbol updates.

    Keeps the full candidate-by-word distance matrix, so an update costs one
    column refresh over ``sigma^L`` candidates and a query one row-wise max.
    """

    def __init__(
        self, words: Sequence[Sequence[int]], sigma: int, d: int, config: OracleConfig = DEFAULT_CONFIG
    ) -> None:
        self.words = [list(w) for w in words]
        self.sigma = sigma
        self.d = d
        L = len(self.words[0]) if self.words else 0
        if sigma**L > config.max_cs_candidates:
            raise OracleLimitError(f"sigma^L = {sigma**L} exceeds {config.max_cs_candidates}")
        self._cands = _all_words(sigma, L)
        self._dist = np.empty((sigma**L, len(self.words)), dtype=np.int16)
        for i in range(len(self.words)):
            self._column(i)

    def _column(self, i: int) -> None:
        w = np.asarray(self.words[i], dtype=np.int8)
        self._dist[:, i] = (self._cands != w).sum(axis=1, dtype=np.int16)

    def update(self, i: int, pos: int, a: int) -> None:
        """Set ``words[i][pos] = a`` (0-based ``i`` and ``pos``)."""
        old = self.words[i][pos]
        if old == a:
            return
        self.words[i][pos] = a
        col = self._cands[:, pos]
        self._dist[:, i] += (col == old).astype(np.int16) - (col == a).astype(np.int16)

    def query(self) -> bool:
        if not self.words:
            return True
        return bool((self._dist.max(axis=1) <= self.d).any())


def cs_ball(words: Sequence[Sequence[int]], sigma: int, d: int) -> bool:
    """Same answer as :func:`cs_exhaustive`, enumerating only the radius-``d``
    ball around the first word (every solution lies in it)."""
    if not words:
        return True
    first = list(words[0])
    L = len(first)
    for k in range(min(d, L) + 1):
        for positions in itertools.combinations(range(L), k):
            choices = [[a for a in range(1, sigma + 1) if a != first[p]] for p in positions]
            for symbols in itertools.product(*choices):
                c = first[:]
                for p, a in zip(positions, symbols):
                    c[p] = a
                if all(hamming(c, w) <= d for w in words):
                    return True
    return False


def df_greedy(word: Sequence[int], k: int, config: OracleConfig = DEFAULT_CONFIG) -> bool:
    """Disjoint factors by trying every factor order and taking each factor greedily."""
    n = len(word)
    if math.factorial(k) * max(n, 1) > config.max_df_permutation_work:
        raise OracleLimitError("k! * n exceeds the permutation budget")
    for order in itertools.permutations(range(1, k + 1)):
        pos = 0
        ok = True
        for s in order:
            start = None
            while pos < n:
                if word[pos] == s:
                    if start is None:
                        start = pos
                    else:
                        break
                pos += 1
            if pos >= n:
                ok = False
                break
            pos += 1
        if ok:
            return True
    return False


def df_intervals(word: Sequence[int], k: int, config: OracleConfig = DEFAULT_CONFIG) -> bool:
    """Disjoint factors by enumerating every placement of one interval per symbol."""
    n = len(word)
    if n > config.max_df_interval_length:
        raise OracleLimitError(f"interval enumeration limited to n <= {config.max_df_interval_length}")
    options: list[list[int]] = []
    for s in range(1, k + 1):
        occ = [i for i, c in enumerate(word) if c == s]
        masks = [((1 << (b + 1)) - 1) ^ ((1 << a) - 1) for a, b in itertools.combinations(occ, 2)]
        if not masks:
            return False
        options.append(masks)

    def place(idx: int, used: int) -> bool:
        if idx == len(options):
            return True
        return any(not (m & used) and place(idx + 1, used | m) for m in options[idx])

    return place(0, 0)


def df_brute(word: Sequence[int], k: int, config: OracleConfig = DEFAULT_CONFIG) -> bool:
    """Both brute-force routes; they must agree."""
    a = df_greedy(word, k, config)
    if len(word) <= config.max_df_interval_length:
        b = df_intervals(word, k, config)
        if a != b:
            raise AssertionError(f"disjoint-factor oracles disagree on {list(word)}")
    return a

