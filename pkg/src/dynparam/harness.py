"""Replay, generation and benchmarking on top of the text formats."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from . import oracles
from .closest_string import ClosestStringDyn
from .disjoint_factors import DfState
from .edit_distance import EdState
from .errors import ContractError, RangeError
from .formats import ALPHABET, CsInstance, DfInstance, EdInstance, Instance, Op

BENCH_HEADER = (
    "op_index",
    "line",
    "op",
    "p50_us",
    "p90_us",
    "p99_us",
    "max_us",
    "rebuild_charge",
    "branch_nodes",
    "pred_depth",
)


class Session:
    """One live structure built from an instance; ops are applied in order."""

    def __init__(self, inst: Instance, seed: int = 0, copies: int | None = None) -> None:
        self.inst = inst
        self.kind = inst.kind
        if isinstance(inst, CsInstance):
            self.cs = ClosestStringDyn(inst.words, inst.sigma, inst.d, seed=seed, copies=copies)
        elif isinstance(inst, DfInstance):
            self.df = DfState(inst.word, inst.k)
        else:
            self.ed = EdState(list(inst.x), list(inst.y), inst.k)

    def update(self, args: tuple) -> None:
        if self.kind == "CS":
            self.cs.update_symbol(*args)
        elif self.kind == "DF":
            self.df.update(*args)
        else:
            self.ed.update(*args)

    def query(self) -> bool:
        if self.kind == "CS":
            return self.cs.query()
        if self.kind == "DF":
            return self.df.query()
        return self.ed.query()

    def apply(self, op: Op) -> bool | None:
        if op.kind == "Q":
            return self.query()
        self.update(op.args)
        return None

    def oracle(self, config: oracles.OracleConfig = oracles.DEFAULT_CONFIG) -> bool:
        if self.kind == "CS":
            return oracles.cs_exhaustive(self.cs.words, self.cs.sigma, self.cs.d, config)
        if self.kind == "DF":
            return oracles.df_brute(self.df.word, self.df.k, config)
        return oracles.ed_dp(self.ed.x, self.ed.y, config) <= self.ed.lce.k

    def counters(self) -> tuple[int, int, int]:
        """(rebuild_charge, branch_nodes, pred_depth); each is monotone over a stream."""
        if self.kind == "CS":
            return self.cs.rebuild_charge, self.cs.stats.nodes, 0
        if self.kind == "DF":
            return 0, 0, max(s.max_depth for s in self.df.occ_sets)
        return 0, 0, max(s.max_depth for s in self.ed.lce.mismatch_sets.values())


def replay(session: Session, ops: Iterable[Op]) -> Iterator[tuple[Op, bool]]:
    """Yield ``(op, answer)`` for every query op."""
    for op in ops:
        ans = session.apply(op)
        if ans is not None:
            yield op, ans


def yes_no(b: bool) -> str:
    return "YES" if b else "NO"


# -- generation -------------------------------------------------------------


@dataclass
class GenParams:
    kind: str
    n: int = 8
    L: int = 8
    sigma: int = 2
    d: int = 1
    k: int = 3
    mode: str = "random"
    updates: int = 0
    edits: int = 2


CS_MODES = ("planted", "adversarial", "random")
DF_MODES = ("random", "k1color")
ED_MODES = ("random", "gadget")


def _cs_words(p: GenParams, rng: np.random.Generator) -> list[list[int]]:
    if p.n < 1 or p.L < 0 or not 1 <= p.sigma <= len(ALPHABET) or p.d < 0:
        raise RangeError("CS needs n >= 1, L >= 0, 1 <= sigma <= 62, d >= 0")
    if p.mode == "random":
        return rng.integers(1, p.sigma + 1, size=(p.n, p.L)).tolist()
    center = rng.integers(1, p.sigma + 1, size=p.L)
    words = []
    for _ in range(p.n):
        w = center.copy()
        if p.sigma > 1 and p.L:
            flips = int(rng.integers(0, min(p.d, p.L) + 1))
            for pos in rng.choice(p.L, size=flips, replace=False):
                w[pos] = (w[pos] - 1 + rng.integers(1, p.sigma)) % p.sigma + 1
        words.append(w.tolist())
    if p.mode == "adversarial":
        if p.n < 2 or p.sigma < 2 or p.L <= 2 * p.d:
            raise RangeError("adversarial mode needs n >= 2, sigma >= 2 and L > 2d")
        i, j = rng.choice(p.n, size=2, replace=False)
        words[j] = [a % p.sigma + 1 for a in words[i]]
    return words


def _df_word(p: GenParams, rng: np.random.Generator) -> list[int]:
    if p.n < 0 or p.k < 1:
        raise RangeError("DF needs n >= 0 and k >= 1")
    if p.mode == "k1color":
        # every symbol occurs at least k + 1 times
        if p.n < p.k * (p.k + 1):
            raise RangeError("k1color mode needs n >= k(k+1)")
        word = [s for s in range(1, p.k + 1) for _ in range(p.k + 1)]
        word += rng.integers(1, p.k + 1, size=p.n - len(word)).tolist()
        rng.shuffle(word)
        return [int(s) for s in word]
    return rng.integers(1, p.k + 1, size=p.n).tolist()


def _ed_pair(p: GenParams, rng: np.random.Generator) -> tuple[str, str]:
    if p.n < 0 or p.k < 0 or not 1 <= p.sigma <= len(ALPHABET):
        raise RangeError("ED needs n >= 0, k >= 0, 1 <= sigma <= 62")
    if p.mode == "gadget":
        w = "".join(rng.choice(list("ab"), size=p.n).tolist())
        return "aca" + w + "cac", "cac" + w + "aca"
    x = "".join(ALPHABET[a] for a in rng.integers(0, p.sigma, size=p.n))
    y = list(x)
    for _ in range(int(rng.integers(0, p.edits + 1))):
        op = int(rng.integers(0, 3))
        if op == 0 and y:
            del y[int(rng.integers(0, len(y)))]
        elif op == 1:
            y.insert(int(rng.integers(0, len(y) + 1)), ALPHABET[int(rng.integers(0, p.sigma))])
        elif y:
            y[int(rng.integers(0, len(y)))] = ALPHABET[int(rng.integers(0, p.sigma))]
    return x, "".join(y)


def generate(p: GenParams, seed: int) -> tuple[Instance, list[Op]]:
    """Seeded instance plus ``p.updates`` random updates, each followed by ``Q``."""
    rng = np.random.default_rng(seed)
    if p.kind == "CS":
        if p.mode not in CS_MODES:
            raise RangeError(f"CS mode must be one of {CS_MODES}")
        words = _cs_words(p, rng)
        inst: Instance = CsInstance(p.n, p.L, p.sigma, p.d, words)
        dims = (p.n, p.L, p.sigma)
    elif p.kind == "DF":
        if p.mode not in DF_MODES:
            raise RangeError(f"DF mode must be one of {DF_MODES}")
        word = _df_word(p, rng)
        inst = DfInstance(len(word), p.k, word)
        dims = (len(word), p.k)
    elif p.kind == "ED":
        if p.mode not in ED_MODES:
            raise RangeError(f"ED mode must be one of {ED_MODES}")
        x, y = _ed_pair(p, rng)
        inst = EdInstance(p.k, x, y)
        dims = (len(x), len(y), 2 if p.mode == "gadget" else p.sigma)
    else:
        raise RangeError(f"unknown kind {p.kind!r}")

    ops = [Op(0, "Q")]
    for _ in range(p.updates):
        if p.kind == "CS":
            n, L, sigma = dims
            if L == 0:
                break
            args = (int(rng.integers(1, n + 1)), int(rng.integers(1, L + 1)), int(rng.integers(1, sigma + 1)))
        elif p.kind == "DF":
            n, k = dims
            if n == 0:
                break
            args = (int(rng.integers(1, n + 1)), int(rng.integers(1, k + 1)))
        else:
            nx, ny, sigma = dims
            if nx + ny == 0:
                break
            which = "x" if rng.integers(0, nx + ny) < nx else "y"
            args = (which, int(rng.integers(1, (nx if which == "x" else ny) + 1)), ALPHABET[int(rng.integers(0, sigma))])
        ops.append(Op(0, "U", args))
        ops.append(Op(0, "Q"))
    return inst, ops


def oracle_answers(inst: Instance, ops: list[Op], config: oracles.OracleConfig = oracles.DEFAULT_CONFIG) -> list[bool]:
    """Reference answer for every query, computed from scratch each time."""
    s = Session(inst, copies=1)
    out = []
    for op in ops:
        if op.kind == "Q":
            out.append(s.oracle(config))
        else:
            s.update(op.args)
    return out


# -- benchmarking -----------------------------------------------------------


def bench(inst: Instance, ops: list[Op], repetitions: int = 5, seed: int = 0, copies: int | None = None) -> list[tuple]:
    """One row per op: wall-time percentiles over ``repetitions`` fresh replays
    and the counters observed after the op in the first replay."""
    if repetitions < 1:
        raise RangeError("repetitions must be positive")
    times = np.zeros((repetitions, len(ops)), dtype=np.int64)
    counters: list[tuple[int, int, int]] = []
    for r in range(repetitions):
        s = Session(inst, seed=seed, copies=copies)
        for idx, op in enumerate(ops):
            t0 = time.perf_counter_ns()
            try:
                s.apply(op)
            except (RangeError, ContractError) as err:
                raise type(err)(f"line {op.line}: {err}") from err
            times[r, idx] = time.perf_counter_ns() - t0
            if r == 0:
                counters.append(s.counters())
    rows = []
    for idx, op in enumerate(ops):
        col = times[:, idx] / 1000.0
        p50, p90, p99 = np.percentile(col, [50, 90, 99])
        rows.append((idx + 1, op.line, op.kind, round(float(p50), 3), round(float(p90), 3), round(float(p99), 3),
                     round(float(col.max()), 3), *counters[idx]))
    return rows
