"""Dynamic LCE on narrow diagonals and banded k-edit-distance.

For every shift ``p`` in ``[-k, k]`` a predecessor set keeps the mismatch
positions ``S_p = {i : x[i] != y[i+p]}`` (only indices where both symbols
exist).  An LCE query on diagonal ``p`` is then one successor lookup, and
the Landau-Vishkin frontier needs ``O(k^2)`` of them.
"""

from __future__ import annotations

from typing import Sequence

from .errors import ContractError, RangeError
from .predecessor import PredecessorSet


class DiagonalLce:
    def __init__(self, x: Sequence, y: Sequence, k: int) -> None:
        if k < 0:
            raise RangeError(f"band half-width must be non-negative, got {k}")
        self.k = k
        self.x = list(x)
        self.y = list(y)
        universe = max(len(self.x), 1)
        self.mismatch_sets = {p: PredecessorSet(universe) for p in range(-k, k + 1)}
        nx, ny = len(self.x), len(self.y)
        for p, s in self.mismatch_sets.items():
            for i in range(max(1, 1 - p), min(nx, ny - p) + 1):
                if self.x[i - 1] != self.y[i + p - 1]:
                    s.insert(i)

    def update(self, which: str, pos: int, a) -> None:
        if which == "x":
            word, n = self.x, len(self.x)
        elif which == "y":
            word, n = self.y, len(self.y)
        else:
            raise RangeError(f"word selector must be 'x' or 'y', got {which!r}")
        if not 1 <= pos <= n:
            raise RangeError(f"position {pos} outside [1, {n}]")
        if word[pos - 1] == a:
            return
        word[pos - 1] = a
        nx, ny = len(self.x), len(self.y)
        for p, s in self.mismatch_sets.items():
            i = pos if which == "x" else pos - p
            if not (1 <= i <= nx and 1 <= i + p <= ny):
                continue
            if self.x[i - 1] != self.y[i + p - 1]:
                s.insert(i)
            else:
                s.delete(i)

    def query(self, i: int, j: int) -> int:
        """Length of the longest common prefix of ``x[i..]`` and ``y[j..]``."""
        if abs(i - j) > self.k:
            raise ContractError(f"|{i} - {j}| exceeds band {self.k}")
        nx, ny = len(self.x), len(self.y)
        if not (1 <= i <= nx + 1 and 1 <= j <= ny + 1):
            raise RangeError(f"LCE({i}, {j}) outside [1, {nx + 1}] x [1, {ny + 1}]")
        limit = min(nx - i + 1, ny - j + 1)
        if limit <= 0:
            return 0
        m = self.mismatch_sets[j - i].successor(i)
        if m is not None and m - i < limit:
            return m - i
        return limit


def lce_init(x: Sequence, y: Sequence, k: int) -> DiagonalLce:
    return DiagonalLce(x, y, k)


class EdState:
    """Dynamic ``ed(x, y) <= k`` with substitution-only updates.

    ``last_frontier`` keeps the table of the latest query:
    ``frontier[b][t]`` is the furthest row ``i`` such that
    ``ed(x[1..i], y[1..i+t]) <= b`` (None outside the band).
    """

    def __init__(self, x: Sequence, y: Sequence, k: int) -> None:
        self.lce = DiagonalLce(x, y, k)
        self.k = k
        self.last_frontier: list[dict[int, int | None]] = []

    @property
    def x(self) -> list:
        return self.lce.x

    @property
    def y(self) -> list:
        return self.lce.y

    def update(self, which: str, pos: int, a) -> None:
        self.lce.update(which, pos, a)

    def distance(self) -> int | None:
        """Exact edit distance when it is at most ``k``, else None."""
        k = self.k
        nx, ny = len(self.x), len(self.y)
        target = ny - nx
        self.last_frontier = []
        if abs(target) > k:
            return None
        lce = self.lce.query
        front: dict[int, int | None] = {0: lce(1, 1)}
        self.last_frontier.append(front)
        if target == 0 and front[0] >= nx:
            return 0
        for b in range(1, k + 1):
            prev = front
            front = {}
            for t in range(-b, b + 1):
                lo = max(0, -t)
                hi = min(nx, ny - t)
                if lo > hi:
                    front[t] = None
                    continue
                cands = []
                f = prev.get(t)
                if f is not None:
                    cands.append(f + 1)
                f = prev.get(t + 1)
                if f is not None:
                    cands.append(f + 1)
                f = prev.get(t - 1)
                if f is not None:
                    cands.append(f)
                if not cands:
                    front[t] = None
                    continue
                i0 = min(max(cands), hi)
                if i0 < lo:
                    front[t] = None
                    continue
                front[t] = i0 + lce(i0 + 1, i0 + t + 1)
            self.last_frontier.append(front)
            f = front.get(target)
            if f is not None and f >= nx:
                return b
        return None

    def query(self) -> bool:
        return self.distance() is not None


def ed_init(x: Sequence, y: Sequence, k: int) -> EdState:
    return EdState(x, y, k)
