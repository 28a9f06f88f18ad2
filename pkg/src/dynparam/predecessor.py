"""Van Emde Boas predecessor set over a bounded integer universe.

Positions are 1-based externally (``1..universe_size``) and shifted to
``0..2**bits - 1`` internally.  Clusters are created lazily and dropped as
soon as they empty, so memory stays proportional to the stored elements.
Universes of at most 64 keys are a single machine word (a bitmask leaf).
"""

from __future__ import annotations

from typing import Iterator

from .errors import RangeError

LEAF_BITS = 6


class _Leaf:
    __slots__ = ("mask",)

    def __init__(self) -> None:
        self.mask = 0

    @property
    def empty(self) -> bool:
        return self.mask == 0

    @property
    def min(self) -> int:
        m = self.mask
        return (m & -m).bit_length() - 1

    @property
    def max(self) -> int:
        return self.mask.bit_length() - 1

    def member(self, x: int, depth: int, stats: list[int]) -> bool:
        if depth > stats[0]:
            stats[0] = depth
        return (self.mask >> x) & 1 == 1

    def insert(self, x: int, depth: int, stats: list[int]) -> None:
        if depth > stats[0]:
            stats[0] = depth
        self.mask |= 1 << x

    def delete(self, x: int, depth: int, stats: list[int]) -> None:
        if depth > stats[0]:
            stats[0] = depth
        self.mask &= ~(1 << x)

    def succ(self, x: int, depth: int, stats: list[int]) -> int | None:
        if depth > stats[0]:
            stats[0] = depth
        m = self.mask >> x
        if not m:
            return None
        return x + (m & -m).bit_length() - 1

    def pred(self, x: int, depth: int, stats: list[int]) -> int | None:
        if depth > stats[0]:
            stats[0] = depth
        m = self.mask & ((2 << x) - 1)
        if not m:
            return None
        return m.bit_length() - 1


def _make(bits: int) -> _Leaf | _Node:
    if bits <= LEAF_BITS:
        return _Leaf()
    return _Node(bits)


class _Node:
    """Recursive cluster/summary node; ``min`` is never stored in a cluster."""

    __slots__ = ("lo_bits", "hi_bits", "lo_mask", "min", "max", "summary", "clusters")

    def __init__(self, bits: int) -> None:
        self.lo_bits = bits // 2
        self.hi_bits = bits - self.lo_bits
        self.lo_mask = (1 << self.lo_bits) - 1
        self.min: int | None = None
        self.max: int | None = None
        self.summary: _Leaf | _Node | None = None
        self.clusters: dict[int, _Leaf | _Node] = {}

    @property
    def empty(self) -> bool:
        return self.min is None

    def member(self, x: int, depth: int, stats: list[int]) -> bool:
        if depth > stats[0]:
            stats[0] = depth
        if x == self.min or x == self.max:
            return True
        if self.min is None:
            return False
        c = self.clusters.get(x >> self.lo_bits)
        return c is not None and c.member(x & self.lo_mask, depth + 1, stats)

    def insert(self, x: int, depth: int, stats: list[int]) -> None:
        # caller guarantees x is absent
        if depth > stats[0]:
            stats[0] = depth
        if self.min is None:
            self.min = self.max = x
            return
        if x < self.min:
            x, self.min = self.min, x
        if x > self.max:
            self.max = x
        h = x >> self.lo_bits
        c = self.clusters.get(h)
        if c is None:
            c = _make(self.lo_bits)
            self.clusters[h] = c
            if self.summary is None:
                self.summary = _make(self.hi_bits)
            self.summary.insert(h, depth + 1, stats)
        c.insert(x & self.lo_mask, depth + 1, stats)

    def delete(self, x: int, depth: int, stats: list[int]) -> None:
        # caller guarantees x is present
        if depth > stats[0]:
            stats[0] = depth
        if self.min == self.max:
            self.min = self.max = None
            return
        lb = self.lo_bits
        if x == self.min:
            first = self.summary.min
            x = (first << lb) | self.clusters[first].min
            self.min = x
        h = x >> lb
        c = self.clusters[h]
        c.delete(x & self.lo_mask, depth + 1, stats)
        if c.empty:
            del self.clusters[h]
            self.summary.delete(h, depth + 1, stats)
        if x == self.max:
            if self.summary.empty:
                self.max = self.min
            else:
                hm = self.summary.max
                self.max = (hm << lb) | self.clusters[hm].max

    def succ(self, x: int, depth: int, stats: list[int]) -> int | None:
        if depth > stats[0]:
            stats[0] = depth
        if self.min is None or x > self.max:
            return None
        if x <= self.min:
            return self.min
        lb = self.lo_bits
        h = x >> lb
        c = self.clusters.get(h)
        if c is not None and (x & self.lo_mask) <= c.max:
            return (h << lb) | c.succ(x & self.lo_mask, depth + 1, stats)
        if h + 1 >= (1 << self.hi_bits):
            return None
        nh = self.summary.succ(h + 1, depth + 1, stats)
        if nh is None:
            return None
        return (nh << lb) | self.clusters[nh].min

    def pred(self, x: int, depth: int, stats: list[int]) -> int | None:
        if depth > stats[0]:
            stats[0] = depth
        if self.min is None or x < self.min:
            return None
        if x >= self.max:
            return self.max
        lb = self.lo_bits
        h = x >> lb
        c = self.clusters.get(h)
        if c is not None and (x & self.lo_mask) >= c.min:
            return (h << lb) | c.pred(x & self.lo_mask, depth + 1, stats)
        ph = self.summary.pred(h - 1, depth + 1, stats) if h > 0 and self.summary is not None else None
        if ph is None:
            return self.min
        return (ph << lb) | self.clusters[ph].max


def _levels(bits: int) -> int:
    if bits <= LEAF_BITS:
        return 1
    return 1 + max(_levels(bits - bits // 2), _levels(bits // 2))


class PredecessorSet:
    """Dynamic subset of ``{1, ..., universe_size}``.

    Duplicate inserts and deletes of absent elements are silent no-ops.
    ``last_depth`` records the deepest recursion level touched by the most
    recent operation (1 = root only); ``max_depth`` is its running maximum.
    """

    __slots__ = ("universe_size", "bits", "count", "_root", "_stats", "max_depth")

    def __init__(self, universe_size: int, elements=()) -> None:
        if universe_size < 1:
            raise RangeError(f"universe size must be positive, got {universe_size}")
        self.universe_size = universe_size
        self.bits = max(1, (universe_size - 1).bit_length())
        self._root = _make(self.bits)
        self._stats = [0]
        self.count = 0
        self.max_depth = 0
        for x in elements:
            self.insert(x)

    @property
    def height(self) -> int:
        """Number of recursion levels of the decomposition."""
        return _levels(self.bits)

    @property
    def last_depth(self) -> int:
        return self._stats[0]

    def _check(self, x: int) -> int:
        if not 1 <= x <= self.universe_size:
            raise RangeError(f"{x} outside universe [1, {self.universe_size}]")
        self._stats[0] = 0
        return x - 1

    def _done(self) -> None:
        if self._stats[0] > self.max_depth:
            self.max_depth = self._stats[0]

    def __len__(self) -> int:
        return self.count

    def __contains__(self, x: int) -> bool:
        r = self._root.member(self._check(x), 1, self._stats)
        self._done()
        return r

    def insert(self, x: int) -> None:
        k = self._check(x)
        if not self._root.member(k, 1, self._stats):
            self._root.insert(k, 1, self._stats)
            self.count += 1
        self._done()

    def delete(self, x: int) -> None:
        k = self._check(x)
        if self._root.member(k, 1, self._stats):
            self._root.delete(k, 1, self._stats)
            self.count -= 1
        self._done()

    def predecessor(self, x: int) -> int | None:
        """Largest member ``<= x``, or None."""
        r = self._root.pred(self._check(x), 1, self._stats)
        self._done()
        return None if r is None else r + 1

    def successor(self, x: int) -> int | None:
        """Smallest member ``>= x``, or None."""
        r = self._root.succ(self._check(x), 1, self._stats)
        self._done()
        return None if r is None else r + 1

    @property
    def min(self) -> int | None:
        if self.count == 0:
            return None
        return self.successor(1)

    @property
    def max(self) -> int | None:
        if self.count == 0:
            return None
        return self.predecessor(self.universe_size)

    def __iter__(self) -> Iterator[int]:
        x = self.min
        while x is not None:
            yield x
            x = self.successor(x + 1) if x < self.universe_size else None

    def __repr__(self) -> str:
        return f"PredecessorSet({self.universe_size}, {list(self)})"
