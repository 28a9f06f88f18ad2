"""Dynamic Closest String: ``R`` independent far-word copies plus the two
branching searches run on top of them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

from ..errors import ContractError, FormatError, RangeError
from .far_word import FarPair, FarWord, FarWordCopy
from .hashing import HashPair


def default_copies(d: int) -> int:
    return 3 * 4**d


@dataclass
class SearchStats:
    nodes: int = 0
    far_word_calls: int = 0
    queries: int = 0
    # (b before, b after) for every guess of the small-alphabet search
    budget_trace: list[tuple[int, int]] = field(default_factory=list)
    trace_budgets: bool = False


class ClosestStringDyn:
    """Words ``s_1..s_n`` of length ``L`` over ``{1..sigma}``, distance bound ``d``.

    All indices are 1-based.  Every update is relayed to every copy; a
    far-pair or far-word answer is the disjunction over copies.
    """

    def __init__(
        self,
        words: Sequence[Sequence[int]],
        sigma: int,
        d: int,
        seed: int = 0,
        copies: int | None = None,
        hash_pairs: Sequence[HashPair] | None = None,
    ) -> None:
        if not words:
            raise FormatError("dictionary must contain at least one word")
        if d < 0:
            raise RangeError(f"d must be non-negative, got {d}")
        if sigma < 1:
            raise RangeError(f"alphabet size must be positive, got {sigma}")
        L = len(words[0])
        for i, w in enumerate(words, 1):
            if len(w) != L:
                raise FormatError(f"word {i} has length {len(w)}, expected {L}")
            for pos, a in enumerate(w, 1):
                if not 1 <= a <= sigma:
                    raise RangeError(f"word {i} position {pos}: symbol {a} outside [1, {sigma}]")
        self.words = [list(w) for w in words]
        self.n = len(words)
        self.L = L
        self.sigma = sigma
        self.d = d
        self.seed = seed
        if hash_pairs is None:
            R = default_copies(d) if copies is None else copies
            if R < 1:
                raise RangeError(f"copy count must be positive, got {R}")
            hash_pairs = [HashPair.sample(L, sigma, d, seed, c) for c in range(R)]
        self.copies = [FarWordCopy(self.words, d, hp) for hp in hash_pairs]
        self.R = len(self.copies)
        self.stats = SearchStats()
        self._q: dict[int, int] = {}  # 0-based position -> symbol, mirrors every copy's diffs
        self._defined = False
        # exact per-position symbol counts; answer the d = 0 case without hashing
        self._symbol_counts = [[0] * (sigma + 1) for _ in range(L)]
        for w in self.words:
            for p, a in enumerate(w):
                self._symbol_counts[p][a] += 1
        self._split_positions = sum(1 for row in self._symbol_counts if max(row) < self.n)

    # -- updates ------------------------------------------------------------

    def update_symbol(self, i: int, pos: int, a: int) -> None:
        if not 1 <= i <= self.n:
            raise RangeError(f"word index {i} outside [1, {self.n}]")
        if not 1 <= pos <= self.L:
            raise RangeError(f"position {pos} outside [1, {self.L}]")
        if not 1 <= a <= self.sigma:
            raise RangeError(f"symbol {a} outside [1, {self.sigma}]")
        self._defined = False
        self._q.clear()
        old = self.words[i - 1][pos - 1]
        if old != a:
            row = self._symbol_counts[pos - 1]
            self._split_positions += (row[old] == self.n) - (row[a] + 1 == self.n)
            row[old] -= 1
            row[a] += 1
        self.words[i - 1][pos - 1] = a
        for c in self.copies:
            c.update(i - 1, pos - 1, a)

    @property
    def rebuild_charge(self) -> int:
        return sum(c.rebuild_charge for c in self.copies)

    # -- far-word interface relayed to all copies ---------------------------

    def query_far_pair(self) -> FarPair:
        out = FarPair.NO_FAR_PAIR
        for c in self.copies:
            r = c.query_far_pair()
            if out is FarPair.NO_FAR_PAIR:
                out = r
        return out

    def reset(self) -> None:
        for c in self.copies:
            c.reset()
        self._q.clear()
        self._defined = True

    def candidate_symbol(self, pos: int) -> int:
        return self._q.get(pos - 1, self.words[0][pos - 1])

    def update_candidate(self, pos: int, a: int) -> None:
        if not self._defined:
            raise ContractError("candidate is undefined; call reset first")
        if not 1 <= pos <= self.L:
            raise RangeError(f"position {pos} outside [1, {self.L}]")
        if not 1 <= a <= self.sigma:
            raise RangeError(f"symbol {a} outside [1, {self.sigma}]")
        if a != self.words[0][pos - 1] and pos - 1 not in self._q and len(self._q) >= self.d:
            raise ContractError(f"candidate would differ from the first word in more than {self.d} positions")
        for c in self.copies:
            c.update_candidate(pos, a)
        if a == self.words[0][pos - 1]:
            self._q.pop(pos - 1, None)
        else:
            self._q[pos - 1] = a

    def candidate(self) -> list[int]:
        if not self._defined:
            raise ContractError("candidate is undefined; call reset first")
        q = list(self.words[0])
        for p, a in self._q.items():
            q[p] = a
        return q

    def query_far_word(self) -> FarWord | FarPair | None:
        """First far word reported by any copy, with its positions widened to
        every difference visible through some copy's hash."""
        self.stats.far_word_calls += 1
        for c in self.copies:
            r = c.query_far_word()
            if r is None:
                continue
            if r is FarPair.INSTANCE_NEGATIVE:
                return r
            j = r.index - 1
            positions: set[int] = set()
            for other in self.copies:
                positions |= other.visible_diffs(j)
            return FarWord(r.index, tuple(sorted(p + 1 for p in positions)))
        return None

    def _visible(self, p: int, a: int, b: int) -> bool:
        """Do symbols ``a`` and ``b`` at 0-based ``p`` hash apart in some copy?"""
        return a != b and any(c._h[p][a] != c._h[p][b] for c in self.copies)

    # -- queries ------------------------------------------------------------

    def _all_identical(self) -> bool:
        return self._split_positions == 0

    def query_branching(self) -> bool:
        """Bounded search tree of depth ``d`` and fan-out at most ``3d``."""
        self.stats.queries += 1
        if self.d == 0:
            return self._all_identical()
        if self.query_far_pair() is not FarPair.NO_FAR_PAIR:
            return False
        self.reset()
        return self._branch(self.d)

    def _branch(self, budget: int) -> bool:
        self.stats.nodes += 1
        fw = self.query_far_word()
        if fw is None:
            return True
        if fw is FarPair.INSTANCE_NEGATIVE:
            return False
        if len(fw.positions) > 3 * self.d or budget == 0:
            return False
        s = self.words[fw.index - 1]
        for pos in fw.positions:
            old = self.candidate_symbol(pos)
            self.update_candidate(pos, s[pos - 1])
            try:
                found = self._branch(budget - 1)
            finally:
                self.update_candidate(pos, old)
            if found:
                return True
        return False

    def query_small_alphabet(self) -> bool:
        """Search that fixes the positions of each far word and halves its budget."""
        self.stats.queries += 1
        if self.d == 0:
            return self._all_identical()
        if self.query_far_pair() is not FarPair.NO_FAR_PAIR:
            return False
        self.reset()
        return self._small(frozenset(), self.d)

    def _small(self, fixed: frozenset[int], budget: int) -> bool:
        self.stats.nodes += 1
        fw = self.query_far_word()
        if fw is None:
            return True
        if fw is FarPair.INSTANCE_NEGATIVE:
            return False
        d = self.d
        diff = fw.positions
        if len(diff) > 2 * d:
            return False
        free = [p for p in diff if p not in fixed]
        if not free:
            return False
        s = self.words[fw.index - 1]
        fixed_next = fixed.union(free)
        for size in range(1, min(budget, len(free)) + 1):
            for chosen in itertools.combinations(free, size):
                olds = [self.candidate_symbol(p) for p in chosen]
                choices = [[a for a in range(1, self.sigma + 1) if a != old] for old in olds]
                for guess in itertools.product(*choices):
                    for p, a in zip(chosen, guess):
                        self.update_candidate(p, a)
                    try:
                        # positions outside `chosen` keep their visibility
                        dist = len(diff) - size + sum(
                            1 for p, a in zip(chosen, guess) if self._visible(p - 1, s[p - 1], a)
                        )
                        nxt = min(d - dist, budget - size)
                        if self.stats.trace_budgets:
                            self.stats.budget_trace.append((budget, nxt))
                        found = nxt >= 0 and self._small(fixed_next, nxt)
                    finally:
                        for p, old in zip(chosen, olds):
                            self.update_candidate(p, old)
                    if found:
                        return True
        return False

    def uses_branching(self) -> bool:
        d = self.d
        return (3 * d) ** d <= (self.sigma - 1) ** d * 2 ** (3 * d)

    def query(self) -> bool:
        if self.d == 0:
            self.stats.queries += 1
            return self._all_identical()
        if self.uses_branching():
            return self.query_branching()
        return self.query_small_alphabet()

    def check_invariants(self) -> None:
        for c in self.copies:
            c.check_invariants()
