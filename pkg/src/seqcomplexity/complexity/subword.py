"""Subword (factor) complexity."""
from __future__ import annotations

import numpy as np

from .automaton import SuffixAutomaton
from .moc import as_symbols

__all__ = ["subword_complexity", "subword_complexity_window", "subword_profile"]


def _automaton(sym: np.ndarray) -> SuffixAutomaton:
    sam = SuffixAutomaton(max(2, int(sym.max()) + 1), capacity=2 * sym.size + 2)
    sam.extend(sym)
    return sam


def subword_complexity(seq, k: int) -> int:
    """Number of distinct length-``k`` factors of the prefix."""
    sym = as_symbols(seq)
    if not 1 <= k <= sym.size:
        raise ValueError(f"k must satisfy 1 <= k <= {sym.size}")
    return _automaton(sym).count_factors(k)


def subword_complexity_window(seq, k: int) -> int:
    """Same count by hashing every length-``k`` window."""
    sym = as_symbols(seq)
    if not 1 <= k <= sym.size:
        raise ValueError(f"k must satisfy 1 <= k <= {sym.size}")
    data = sym.astype(np.uint8).tobytes()
    return len({data[i : i + k] for i in range(len(data) - k + 1)})


def subword_profile(seq, k_max: int) -> np.ndarray:
    """``p(k)`` for ``k = 1..k_max`` from one automaton."""
    sym = as_symbols(seq)
    sam = _automaton(sym)
    return np.array([sam.count_factors(k) for k in range(1, k_max + 1)], dtype=np.int64)
