"""Online suffix automaton (DAWG) over a small integer alphabet.

The automaton keeps, besides the usual ``len``/``link``/transition arrays, the
out-degree of every state and the largest ``len`` among states with at least
two outgoing transitions.  Those states hold exactly the factors that occur
with two different successors, which is what maximum order complexity needs.
"""
from __future__ import annotations

import numpy as np
from numba import njit

__all__ = ["SuffixAutomaton"]

# meta slots
_SIZE, _LAST, _BEST = 0, 1, 2


@njit(cache=True)
def _extend(symbols, length, link, trans, outdeg, meta, step_pos, step_val, offset):
    size = meta[_SIZE]
    last = meta[_LAST]
    best = meta[_BEST]
    nsteps = 0
    for t in range(symbols.shape[0]):
        c = symbols[t]
        cur = size
        size += 1
        length[cur] = length[last] + 1
        outdeg[cur] = 0
        p = last
        while p != -1 and trans[p, c] == -1:
            trans[p, c] = cur
            outdeg[p] += 1
            if outdeg[p] >= 2 and length[p] > best:
                best = length[p]
            p = link[p]
        if p == -1:
            link[cur] = 0
        else:
            q = trans[p, c]
            if length[p] + 1 == length[q]:
                link[cur] = q
            else:
                clone = size
                size += 1
                length[clone] = length[p] + 1
                for a in range(trans.shape[1]):
                    trans[clone, a] = trans[q, a]
                outdeg[clone] = outdeg[q]
                link[clone] = link[q]
                if outdeg[clone] >= 2 and length[clone] > best:
                    best = length[clone]
                while p != -1 and trans[p, c] == q:
                    trans[p, c] = clone
                    p = link[p]
                link[q] = clone
                link[cur] = clone
        last = cur
        if best != meta[_BEST]:
            meta[_BEST] = best
            step_pos[nsteps] = offset + t + 1
            step_val[nsteps] = best + 1
            nsteps += 1
    meta[_SIZE] = size
    meta[_LAST] = last
    return nsteps


class SuffixAutomaton:
    """Suffix automaton built one symbol at a time.

    Symbols are integers in ``range(alphabet_size)``.  After ``N`` symbols,
    :attr:`max_order_complexity` is ``1 + len`` of the longest factor that occurs
    twice with distinct successors, or 0 when no such factor exists.
    """

    def __init__(self, alphabet_size: int = 2, capacity: int = 1024):
        if alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        self.alphabet_size = alphabet_size
        self.n_symbols = 0
        cap = max(2, capacity)
        self._len = np.zeros(cap, dtype=np.int32)
        self._link = np.full(cap, -1, dtype=np.int32)
        self._trans = np.full((cap, alphabet_size), -1, dtype=np.int32)
        self._outdeg = np.zeros(cap, dtype=np.int16)
        # size, last, best branching length (-1: no branching state yet)
        self._meta = np.array([1, 0, -1], dtype=np.int64)
        self._steps: list[tuple[int, int]] = []

    def _reserve(self, extra: int) -> None:
        need = int(self._meta[_SIZE]) + 2 * extra
        cap = self._len.shape[0]
        if need <= cap:
            return
        new = max(need, 2 * cap)
        if new >= 2**31:
            raise MemoryError("automaton would exceed 2**31 states")
        self._len = np.concatenate([self._len, np.zeros(new - cap, dtype=np.int32)])
        self._link = np.concatenate([self._link, np.full(new - cap, -1, dtype=np.int32)])
        self._trans = np.concatenate(
            [self._trans, np.full((new - cap, self.alphabet_size), -1, dtype=np.int32)]
        )
        self._outdeg = np.concatenate([self._outdeg, np.zeros(new - cap, dtype=np.int16)])

    def extend(self, symbols) -> list[tuple[int, int]]:
        """Append symbols; return the ``(N, M)`` steps they produced."""
        sym = np.ascontiguousarray(symbols, dtype=np.int64).ravel()
        if sym.size == 0:
            return []
        if sym.min() < 0 or sym.max() >= self.alphabet_size:
            raise ValueError(f"symbols must lie in range({self.alphabet_size})")
        self._reserve(sym.size)
        # a step needs a strictly larger branching length, so steps <= symbols
        pos = np.empty(sym.size, dtype=np.int64)
        val = np.empty(sym.size, dtype=np.int64)
        k = _extend(sym, self._len, self._link, self._trans, self._outdeg,
                    self._meta, pos, val, self.n_symbols)
        self.n_symbols += int(sym.size)
        new = list(zip(pos[:k].tolist(), val[:k].tolist()))
        self._steps.extend(new)
        return new

    @property
    def n_states(self) -> int:
        return int(self._meta[_SIZE])

    @property
    def lengths(self) -> np.ndarray:
        return self._len[: self.n_states]

    @property
    def links(self) -> np.ndarray:
        return self._link[: self.n_states]

    @property
    def transitions(self) -> np.ndarray:
        return self._trans[: self.n_states]

    @property
    def out_degrees(self) -> np.ndarray:
        return self._outdeg[: self.n_states]

    @property
    def max_branch_length(self) -> int:
        """``len`` of the deepest state with two or more successors, -1 if none."""
        return int(self._meta[_BEST])

    @property
    def max_order_complexity(self) -> int:
        return self.max_branch_length + 1

    @property
    def steps(self) -> list[tuple[int, int]]:
        return list(self._steps)

    def accepts(self, word) -> bool:
        """True if ``word`` occurs as a factor of the input so far."""
        s = 0
        for c in word:
            s = int(self._trans[s, int(c)])
            if s < 0:
                return False
        return True

    def count_factors(self, k: int) -> int:
        """Number of distinct factors of length ``k``."""
        if k <= 0:
            return 1 if k == 0 else 0
        lens = self.lengths[1:]
        link_lens = self.lengths[self.links[1:]]
        return int(np.count_nonzero((link_lens < k) & (lens >= k)))
