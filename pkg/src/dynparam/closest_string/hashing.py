"""Per-copy random functions: symbol hash to {0,1} and position coloring."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PALETTE_FACTOR = 17
SEED_MASK = (1 << 64) - 1


def palette_size(d: int) -> int:
    return max(1, PALETTE_FACTOR * d)


def copy_generator(seed: int, copy_index: int) -> np.random.Generator:
    """Independent PCG64 stream for copy ``copy_index`` of a structure seeded with ``seed``."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & SEED_MASK, copy_index])))


@dataclass(frozen=True)
class HashPair:
    """``h[pos, a]`` is the bit of symbol ``a`` at 0-based ``pos`` (column 0 unused);
    ``pi[pos]`` is the color of ``pos`` in ``1..palette``."""

    h: np.ndarray
    pi: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        self.h.setflags(write=False)
        self.pi.setflags(write=False)

    @classmethod
    def sample(cls, L: int, sigma: int, d: int, seed: int, copy_index: int) -> HashPair:
        rng = copy_generator(seed, copy_index)
        h = rng.integers(0, 2, size=(L, sigma + 1), dtype=np.uint8)
        pi = rng.integers(1, palette_size(d) + 1, size=L, dtype=np.int64)
        return cls(h, pi, seed & SEED_MASK)

    @classmethod
    def identity(cls, L: int, sigma: int, d: int) -> HashPair:
        """Deterministic fixture: symbol ``a`` hashes to ``(a - 1) % 2``, colors cycle."""
        h = np.tile(np.arange(-1, sigma, dtype=np.int64) % 2, (L, 1)).astype(np.uint8)
        pi = np.arange(L, dtype=np.int64) % palette_size(d) + 1
        return cls(h, pi, 0)
