"""Dynamic Closest String over a hashed, color-coded dictionary."""

from .dynamic import ClosestStringDyn, SearchStats, default_copies
from .far_word import FarPair, FarWord, FarWordCopy
from .hashing import HashPair, palette_size

__all__ = [
    "ClosestStringDyn",
    "FarPair",
    "FarWord",
    "FarWordCopy",
    "HashPair",
    "SearchStats",
    "default_copies",
    "palette_size",
]
