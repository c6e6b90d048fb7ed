"""Linear complexity profile via the Berlekamp-Massey recurrence over GF(2)."""
from __future__ import annotations

import numpy as np

from .moc import as_symbols
from .profile import ComplexityProfile

__all__ = ["berlekamp_massey", "linear_complexity_profile", "linear_complexity"]


def berlekamp_massey(seq) -> tuple[np.ndarray, int]:
    """Return ``(L(N) for N = 1..n, connection polynomial)``.

    The connection polynomial ``C`` is bit-packed with bit ``j`` holding
    ``c_j`` (``c_0 = 1``), so ``s_n = sum_{j=1..L} c_j s_{n-j}``.
    """
    sym = as_symbols(seq)
    if sym.size and sym.max() > 1:
        raise ValueError("linear complexity is defined here for binary sequences")
    c, b = 1, 1
    L, m = 0, -1
    hist = 0  # bit j holds s_{n-j}
    out = np.zeros(sym.size, dtype=np.int64)
    for n, s in enumerate(sym.tolist()):
        hist = (hist << 1) | s
        if (c & hist).bit_count() & 1:
            t = c
            c ^= b << (n - m)
            if 2 * L <= n:
                L, b, m = n + 1 - L, t, n
        out[n] = L
    return out, c


def linear_complexity_profile(seq) -> ComplexityProfile:
    dense, _ = berlekamp_massey(seq)
    if dense.size == 0:
        raise ValueError("sequence must be nonempty")
    return ComplexityProfile.from_dense(dense, measure="linear")


def linear_complexity(seq, n: int | None = None) -> int:
    sym = as_symbols(seq)
    n = sym.size if n is None else n
    return int(berlekamp_massey(sym[:n])[0][-1]) if n else 0
