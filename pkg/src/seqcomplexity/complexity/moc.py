"""Maximum order complexity: automaton engine and brute-force references."""
from __future__ import annotations

import numpy as np

from .automaton import SuffixAutomaton
from .profile import ComplexityProfile

__all__ = ["moc_profile", "moc_brute", "moc_brute_profile", "as_symbols"]


def as_symbols(seq) -> np.ndarray:
    bits = getattr(seq, "bits", seq)
    return np.ascontiguousarray(bits, dtype=np.int64).ravel()


def moc_profile(seq, alphabet_size: int | None = None) -> ComplexityProfile:
    """Maximum order complexity ``M(seq, N)`` for every prefix length, in linear time."""
    sym = as_symbols(seq)
    if sym.size == 0:
        raise ValueError("sequence must be nonempty")
    if alphabet_size is None:
        alphabet_size = max(2, int(sym.max()) + 1)
    sam = SuffixAutomaton(alphabet_size, capacity=2 * sym.size + 2)
    sam.extend(sym)
    steps = sam.steps
    return ComplexityProfile([p for p, _ in steps], [v for _, v in steps], int(sym.size), "moc")


def _fsr_consistent(s: bytes, m: int) -> bool:
    seen: dict[bytes, int] = {}
    for i in range(len(s) - m):
        key = s[i : i + m]
        nxt = s[i + m]
        if seen.setdefault(key, nxt) != nxt:
            return False
    return True


def _constant_case(s: bytes) -> int | None:
    n = len(s)
    if n == 1:
        return 0
    head = s[: n - 1]
    if head.count(head[0]) == len(head):
        return 0 if s[-1] == head[0] else n - 1
    return None


def _factor_criterion(s: bytes) -> int:
    n = len(s)
    for k in range(n - 1, -1, -1):
        succ: dict[bytes, int] = {}
        for i in range(n - k):
            # factor s[i:i+k] with successor s[i+k]
            key = s[i : i + k]
            prev = succ.setdefault(key, s[i + k])
            if prev != s[i + k]:
                return k + 1
    return 0


def moc_brute(seq, n: int, method: str = "fsr") -> int:
    """``M(seq, N)`` by direct search.

    ``method="fsr"`` looks for the shortest feedback function consistent with
    ``s_0..s_{N-1}``; ``method="factors"`` scans all factors for the longest one
    with two distinct successors.  Both apply the constant-prefix conventions.
    """
    if method not in ("fsr", "factors"):
        raise ValueError(f"unknown method {method!r}")
    sym = as_symbols(seq)
    if not 1 <= n <= sym.size:
        raise ValueError(f"N must satisfy 1 <= N <= {sym.size}")
    s = bytes(sym[:n].astype(np.uint8))
    special = _constant_case(s)
    if special is not None:
        return special
    if method == "factors":
        return _factor_criterion(s)
    for m in range(1, n):
        if _fsr_consistent(s, m):
            return m
    return n - 1


def moc_brute_profile(seq, n_max: int | None = None) -> np.ndarray:
    """Dense ``M(seq, N)`` for ``N = 1..n_max`` via the FSR search.

    The search for ``N`` starts at the value for ``N-1`` since an FSR that
    produces ``N`` terms also produces ``N-1``.
    """
    sym = as_symbols(seq)
    n_max = sym.size if n_max is None else n_max
    s_all = bytes(sym[:n_max].astype(np.uint8))
    out = np.zeros(n_max, dtype=np.int64)
    m = 1
    for n in range(1, n_max + 1):
        s = s_all[:n]
        special = _constant_case(s)
        if special is not None:
            out[n - 1] = special
            m = max(special, 1)
            continue
        while m < n - 1 and not _fsr_consistent(s, m):
            m += 1
        out[n - 1] = m
    return out
