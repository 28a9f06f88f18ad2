"""Prefix-U1 threshold queries answered through the dynamic string structures.

A prefix-U1 set ``S`` of ``[n]`` is mirrored into

* a Disjoint Factors word ``1 a_1 ... a_n 0 # 0 0`` over ``{0, 1, #}``
  (``a_i = 1`` iff ``i`` in ``S``), queried with ``k = 3``;
* an edit-distance pair ``aca a_1 ... a_n aaa aaa`` / ``cac a_1 ... a_n aaa aaa``
  (``a_i = b`` iff ``i`` in ``S``), queried with ``k = 2``.  The extra
  ``aaa`` block keeps the query window inside the word for every ``i``.

and a plain predecessor set serves as the baseline answer.
"""

from __future__ import annotations

from .disjoint_factors import DfState
from .edit_distance import EdState
from .errors import RangeError
from .predecessor import PredecessorSet

DF_SYMBOLS = {"0": 1, "1": 2, "#": 3}


class PrefixU1:
    """Baseline: ``query(i)`` is ``min(S) <= i`` via one predecessor lookup."""

    def __init__(self, n: int) -> None:
        if n < 1:
            raise RangeError(f"universe size must be positive, got {n}")
        self.n = n
        self.members = PredecessorSet(n)

    def _check(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise RangeError(f"{i} outside [1, {self.n}]")

    def insert(self, i: int) -> None:
        self._check(i)
        self.members.insert(i)

    def delete(self, i: int) -> None:
        self._check(i)
        self.members.delete(i)

    def query(self, i: int) -> bool:
        self._check(i)
        return self.members.predecessor(i) is not None


class DfReduction(PrefixU1):
    def __init__(self, n: int) -> None:
        super().__init__(n)
        word = [DF_SYMBOLS["1"]] + [DF_SYMBOLS["0"]] * n + [DF_SYMBOLS[c] for c in "0#00"]
        self.df = DfState(word, 3)

    @property
    def word(self) -> list[int]:
        return self.df.word

    def insert(self, i: int) -> None:
        super().insert(i)
        self.df.update(i + 1, DF_SYMBOLS["1"])

    def delete(self, i: int) -> None:
        super().delete(i)
        self.df.update(i + 1, DF_SYMBOLS["0"])

    def query(self, i: int) -> bool:
        self._check(i)
        pos = i + 2
        saved = self.df.word[pos - 1]
        self.df.update(pos, DF_SYMBOLS["#"])
        try:
            return self.df.query()
        finally:
            self.df.update(pos, saved)


class EdReduction(PrefixU1):
    def __init__(self, n: int) -> None:
        super().__init__(n)
        tail = ["a"] * 6
        self.ed = EdState(list("aca") + ["a"] * n + tail, list("cac") + ["a"] * n + tail, 2)

    @property
    def x(self) -> list[str]:
        return self.ed.x

    @property
    def y(self) -> list[str]:
        return self.ed.y

    def _write(self, i: int, a: str) -> None:
        self.ed.update("x", i + 3, a)
        self.ed.update("y", i + 3, a)

    def insert(self, i: int) -> None:
        super().insert(i)
        self._write(i, "b")

    def delete(self, i: int) -> None:
        super().delete(i)
        self._write(i, "a")

    def query(self, i: int) -> bool:
        """Install ``cac`` / ``aca`` right after ``a_i``; distance above 2 means
        some ``b`` precedes the window."""
        self._check(i)
        window = range(i + 4, i + 7)
        saved = [(p, self.ed.x[p - 1], self.ed.y[p - 1]) for p in window]
        for p, a, b in zip(window, "cac", "aca"):
            self.ed.update("x", p, a)
            self.ed.update("y", p, b)
        try:
            return self.ed.distance() is None
        finally:
            for p, a, b in saved:
                self.ed.update("x", p, a)
                self.ed.update("y", p, b)


class PrefixU1Harness:
    """All three routes kept in lockstep on one set."""

    def __init__(self, n: int) -> None:
        self.n = n
        self.direct = PrefixU1(n)
        self.via_df = DfReduction(n)
        self.via_ed = EdReduction(n)

    def insert(self, i: int) -> None:
        for r in (self.direct, self.via_df, self.via_ed):
            r.insert(i)

    def delete(self, i: int) -> None:
        for r in (self.direct, self.via_df, self.via_ed):
            r.delete(i)

    def query(self, i: int) -> tuple[bool, bool, bool]:
        """(direct, via Disjoint Factors, via Edit Distance)."""
        return self.direct.query(i), self.via_df.query(i), self.via_ed.query(i)
