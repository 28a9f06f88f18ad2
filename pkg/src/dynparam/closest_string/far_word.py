"""One randomized copy of the far-pair / far-word structure.

The copy hashes every dictionary word to a binary word, keeps an origin
word ``o`` (per-position approximate majority of the hashed words), the
mismatch set ``Delta(o, s~)`` of every hashed word, and groups words by the
set of colors their mismatch positions receive.  Positions are 0-based
inside this module; the public methods take and return 1-based values.
"""

from __future__ import annotations

import enum
from typing import NamedTuple, Sequence

import numpy as np

from ..errors import ContractError
from .hashing import HashPair, palette_size


class FarPair(enum.Enum):
    FAR_PAIR_EXISTS = "far-pair"
    INSTANCE_NEGATIVE = "instance-negative"
    NO_FAR_PAIR = "no-far-pair"


class FarWord(NamedTuple):
    index: int  # 1-based word index
    positions: tuple[int, ...]  # 1-based, sorted


class FarWordCopy:
    def __init__(self, words: list[list[int]], d: int, hashes: HashPair) -> None:
        self.words = words  # shared with the owner, mutated by it
        self.n = len(words)
        self.L = len(words[0]) if words else 0
        self.d = d
        self.hashes = hashes
        self.palette = palette_size(d)
        self.bad_threshold = 8 * d
        self._h = hashes.h.tolist()
        pi = hashes.pi
        self._color = [int(c) - 1 for c in pi]
        self._colorbit = [1 << c for c in self._color]

        arr = np.asarray(words, dtype=np.int64).reshape(self.n, self.L)
        hashed = hashes.h[np.arange(self.L), arr] if self.n else np.zeros((0, self.L), np.uint8)
        ones = hashed.sum(axis=0, dtype=np.int64)
        origin = (2 * ones > self.n).astype(np.uint8)  # ties go to bit 0
        self.hashed = [bytearray(row.tobytes()) for row in hashed]
        self.ones = ones.tolist()
        self.origin = bytearray(origin.tobytes())

        mism = hashed != origin
        self.delta: list[dict[int, None]] = []
        self.counts: list[list[int]] = []
        self.cmask: list[int] = []
        self.classes: dict[int, dict[int, None]] = {}
        self.bad_count = 0
        for j in range(self.n):
            positions = np.flatnonzero(mism[j]).tolist()
            self.delta.append(dict.fromkeys(positions))
            tally = [0] * self.palette
            mask = 0
            for p in positions:
                tally[self._color[p]] += 1
                mask |= self._colorbit[p]
            self.counts.append(tally)
            self.cmask.append(mask)
            self.classes.setdefault(mask, {})[j] = None
            if len(positions) > self.bad_threshold:
                self.bad_count += 1

        self.rebuild_charge = 0
        self.rebuilds = 0
        self.last_far_pair: FarPair | None = None
        self.defined = False
        self.diffs: dict[int, int] = {}
        self.hashed_diffs: dict[int, int] = {}

    # -- dictionary maintenance -------------------------------------------

    def _move(self, j: int, mask: int) -> None:
        old = self.cmask[j]
        members = self.classes[old]
        del members[j]
        if not members:
            del self.classes[old]
        self.cmask[j] = mask
        self.classes.setdefault(mask, {})[j] = None

    def _toggle(self, j: int, p: int) -> None:
        """Flip whether ``p`` belongs to ``Delta(o, s~_j)``."""
        dj = self.delta[j]
        c = self._color[p]
        tally = self.counts[j]
        if p in dj:
            del dj[p]
            if len(dj) == self.bad_threshold:
                self.bad_count -= 1
            tally[c] -= 1
            if tally[c] == 0:
                self._move(j, self.cmask[j] ^ self._colorbit[p])
        else:
            dj[p] = None
            if len(dj) == self.bad_threshold + 1:
                self.bad_count += 1
            tally[c] += 1
            if tally[c] == 1:
                self._move(j, self.cmask[j] | self._colorbit[p])

    def _rebuild(self, p: int) -> None:
        self.rebuilds += 1
        self.rebuild_charge += self.n
        ones = self.ones[p]
        bit = 1 if ones > self.n - ones else 0
        if bit == self.origin[p]:
            return
        self.origin[p] = bit
        for j in range(self.n):
            self._toggle(j, p)

    def update(self, j: int, pos: int, a: int) -> None:
        """Relay ``s_j[pos] := a`` (0-based ``j`` and ``pos``); the owner has
        already written the true symbol."""
        self.defined = False
        self.last_far_pair = None
        bit = self._h[pos][a]
        row = self.hashed[j]
        if row[pos] == bit:
            return
        row[pos] = bit
        self.ones[pos] += 1 if bit else -1
        self._toggle(j, pos)
        matching = self.ones[pos] if self.origin[pos] else self.n - self.ones[pos]
        if 4 * matching < self.n:
            self._rebuild(pos)

    # -- queries ------------------------------------------------------------

    def query_far_pair(self) -> FarPair:
        if self.bad_count:
            result = FarPair.INSTANCE_NEGATIVE
        else:
            result = FarPair.NO_FAR_PAIR
            limit = 2 * self.d
            masks = list(self.classes)
            for a, x in enumerate(masks):
                for y in masks[a + 1:]:
                    if (x ^ y).bit_count() > limit:
                        result = FarPair.FAR_PAIR_EXISTS
                        break
                if result is FarPair.FAR_PAIR_EXISTS:
                    break
        self.last_far_pair = result
        return result

    def reset(self) -> None:
        if self.last_far_pair is not FarPair.NO_FAR_PAIR:
            raise ContractError("reset requires a preceding negative far-pair answer")
        self.defined = True
        self.diffs.clear()
        self.hashed_diffs.clear()

    def update_candidate(self, pos: int, a: int) -> None:
        if not self.defined:
            raise ContractError("candidate is undefined; call reset first")
        p = pos - 1
        if a == self.words[0][p]:
            self.diffs.pop(p, None)
            self.hashed_diffs.pop(p, None)
            return
        if p not in self.diffs and len(self.diffs) >= self.d:
            raise ContractError(f"candidate would differ from the first word in more than {self.d} positions")
        self.diffs[p] = a
        self.hashed_diffs[p] = self._h[p][a]

    def candidate(self) -> list[int]:
        if not self.defined:
            raise ContractError("candidate is undefined; call reset first")
        q = list(self.words[0])
        for p, a in self.diffs.items():
            q[p] = a
        return q

    def _candidate_delta(self) -> list[int]:
        """``Delta(o, q~)``, read off ``Delta(o, s~_1)`` and the diff entries."""
        first = self.hashed[0]
        hd = self.hashed_diffs
        o = self.origin
        out = [p for p in self.delta[0] if hd.get(p, first[p]) != o[p]]
        out.extend(p for p, bit in hd.items() if p not in self.delta[0] and bit != o[p])
        return out

    def visible_diffs(self, j: int, cand_delta: Sequence[int] | None = None) -> set[int]:
        """0-based positions where hashed word ``j`` and ``q~`` differ."""
        if cand_delta is None:
            cand_delta = self._candidate_delta()
        row = self.hashed[j]
        first = self.hashed[0]
        hd = self.hashed_diffs
        out = {p for p in self.delta[j] if row[p] != hd.get(p, first[p])}
        out.update(p for p in cand_delta if row[p] != hd.get(p, first[p]))
        return out

    def query_far_word(self) -> FarWord | FarPair | None:
        """A word whose hashed form is more than ``d`` away from ``q~``.

        Returns ``FarPair.INSTANCE_NEGATIVE`` when ``Delta(o, s~_1)`` is
        already too large for the candidate to be valid.
        """
        if not self.defined:
            raise ContractError("candidate is undefined; call reset first")
        if len(self.delta[0]) > self.bad_threshold:
            return FarPair.INSTANCE_NEGATIVE
        cand_delta = self._candidate_delta()
        q = 0
        for p in cand_delta:
            q |= self._colorbit[p]
        d = self.d
        for x, members in self.classes.items():
            if (x ^ q).bit_count() > d:
                j = next(iter(members))
                return FarWord(j + 1, tuple(sorted(p + 1 for p in self.visible_diffs(j, cand_delta))))
        return None

    # -- consistency --------------------------------------------------------

    def check_invariants(self) -> None:
        """Recompute everything from the hashed words and compare; raises AssertionError."""
        n = self.n
        for p in range(self.L):
            ones = sum(row[p] for row in self.hashed)
            assert ones == self.ones[p], f"bit counter at {p}"
            matching = ones if self.origin[p] else n - ones
            assert 4 * matching >= n, f"origin condition fails at {p}"
        bad = 0
        expected_classes: dict[int, set[int]] = {}
        for j, (word, row) in enumerate(zip(self.words, self.hashed)):
            assert list(row) == [self._h[p][a] for p, a in enumerate(word)], f"hashed word {j}"
            delta = {p for p in range(self.L) if row[p] != self.origin[p]}
            assert set(self.delta[j]) == delta, f"delta of word {j}"
            tally = [0] * self.palette
            for p in delta:
                tally[self._color[p]] += 1
            assert tally == self.counts[j], f"color counters of word {j}"
            mask = sum(1 << c for c in range(self.palette) if tally[c])
            assert mask == self.cmask[j], f"color set of word {j}"
            expected_classes.setdefault(mask, set()).add(j)
            bad += len(delta) > self.bad_threshold
        assert bad == self.bad_count, "bad counter"
        assert {m: set(v) for m, v in self.classes.items()} == expected_classes, "class lists"
