"""Fibonacci and Lucas numbers, Zeckendorf digits and carry-normalizing addition.

Digit index ``i`` of a :class:`ZeckRep` carries the weight ``F_{i+2}``, so
``11 = F_6 + F_4`` has ones at indices 4 and 2.  Every offset and window in
this package uses the same convention.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

__all__ = [
    "PHI",
    "fibonacci",
    "lucas",
    "fibonacci_upto",
    "ZeckRep",
    "zeckendorf_digits",
    "digit_sum_z",
    "digit_sum_z_array",
    "zeck_add",
    "non_interfering",
    "DigitWindow",
    "lucas_multiple_window",
]

PHI = (1 + math.sqrt(5)) / 2

# F_2, F_3, ... as long as they fit into int64; used by the vectorized path.
_FIB_INT64 = []
_a, _b = 1, 2
while _a < 2**63:
    _FIB_INT64.append(_a)
    _a, _b = _b, _a + _b
_FIB_INT64_ARR = np.array(_FIB_INT64, dtype=np.int64)
del _a, _b


def _fib_pair(n: int) -> tuple[int, int]:
    # fast doubling: returns (F_n, F_{n+1})
    if n == 0:
        return 0, 1
    a, b = _fib_pair(n >> 1)
    c = a * (2 * b - a)
    d = a * a + b * b
    if n & 1:
        return d, c + d
    return c, d


def fibonacci(n: int) -> int:
    """Return ``F_n`` with ``F_0 = 0`` and ``F_1 = 1``."""
    if n < 0:
        raise ValueError(f"Fibonacci index must be non-negative, got {n}")
    return _fib_pair(n)[0]


def lucas(n: int) -> int:
    """Return ``L_n`` with ``L_0 = 2`` and ``L_1 = 1``."""
    if n < 0:
        raise ValueError(f"Lucas index must be non-negative, got {n}")
    f, g = _fib_pair(n)
    return 2 * g - f


def fibonacci_upto(n: int) -> list[int]:
    """Weights ``F_2, F_3, ...`` not exceeding ``n`` (the Zeckendorf digit weights)."""
    out = []
    a, b = 1, 2
    while a <= n:
        out.append(a)
        a, b = b, a + b
    return out


@dataclass(frozen=True)
class ZeckRep:
    """Zeckendorf digit vector; ``digits[i]`` is the coefficient of ``F_{i+2}``."""

    digits: tuple[int, ...] = ()

    def __post_init__(self):
        d = tuple(int(x) for x in self.digits)
        object.__setattr__(self, "digits", d)
        if d and d[-1] != 1:
            raise ValueError("leading Zeckendorf digit must be 1")
        for i, x in enumerate(d):
            if x not in (0, 1):
                raise ValueError(f"digit {i} is {x}, expected 0 or 1")
            if x and i + 1 < len(d) and d[i + 1]:
                raise ValueError(f"adjacent ones at indices {i} and {i + 1}")

    @classmethod
    def from_int(cls, n: int) -> "ZeckRep":
        return zeckendorf_digits(n)

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> "ZeckRep":
        idx = sorted(set(indices))
        if not idx:
            return cls()
        digits = [0] * (idx[-1] + 1)
        for i in idx:
            digits[i] = 1
        return cls(tuple(digits))

    @property
    def value(self) -> int:
        total = 0
        a, b = 1, 2
        for x in self.digits:
            if x:
                total += a
            a, b = b, a + b
        return total

    @property
    def ones(self) -> tuple[int, ...]:
        return tuple(i for i, x in enumerate(self.digits) if x)

    @property
    def digit_sum(self) -> int:
        return sum(self.digits)

    def __int__(self) -> int:
        return self.value

    def __bool__(self) -> bool:
        return bool(self.digits)

    def __str__(self) -> str:
        # most significant digit first, like the carry tableaux
        return "".join(str(x) for x in reversed(self.digits)) or "0"


def zeckendorf_digits(n: int) -> ZeckRep:
    """Greedy Zeckendorf expansion of ``n``."""
    if n < 0:
        raise ValueError(f"Zeckendorf expansion needs n >= 0, got {n}")
    fibs = fibonacci_upto(n)
    digits = [0] * len(fibs)
    i = len(fibs) - 1
    while n and i >= 0:
        if fibs[i] <= n:
            n -= fibs[i]
            digits[i] = 1
            i -= 2
        else:
            i -= 1
    while digits and digits[-1] == 0:
        digits.pop()
    return ZeckRep(tuple(digits))


def digit_sum_z(n: int) -> int:
    """Number of summands in the Zeckendorf expansion of ``n``."""
    if n < 0:
        raise ValueError(f"s_Z needs n >= 0, got {n}")
    if n < 2**63:
        fibs = _FIB_INT64
        i = len(fibs) - 1
    else:
        fibs = fibonacci_upto(n)
        i = len(fibs) - 1
    count = 0
    while n:
        while fibs[i] > n:
            i -= 1
        n -= fibs[i]
        count += 1
        i -= 2
    return count


def digit_sum_z_array(values) -> np.ndarray:
    """Vectorized ``s_Z`` over an array of non-negative values below ``2**63``."""
    x = np.array(values, dtype=np.int64)
    if x.size and x.min() < 0:
        raise ValueError("s_Z needs non-negative values")
    count = np.zeros(x.shape, dtype=np.int64)
    if not x.size:
        return count
    top = int(np.searchsorted(_FIB_INT64_ARR, x.max(), side="right"))
    for f in _FIB_INT64_ARR[:top][::-1]:
        take = x >= f
        x -= f * take
        count += take
    return count


def _normalize(d: list[int]) -> list[int]:
    limit = 64 * (len(d) + 4) ** 2 + 1000
    steps = 0
    changed = True
    while changed:
        changed = False
        # (a) digits >= 2
        i = len(d) - 1
        while i >= 0:
            if d[i] >= 2:
                if i + 2 >= len(d):
                    d.extend([0] * (i + 3 - len(d)))
                d[i] -= 2
                if i == 0:
                    d[1] += 1  # 2F_2 = F_3
                elif i == 1:
                    d[2] += 1  # 2F_3 = F_4 + F_2
                    d[0] += 1
                else:
                    d[i + 1] += 1  # 2F_j = F_{j+1} + F_{j-2}
                    d[i - 2] += 1
                changed = True
                steps += 1
                i = min(i + 1, len(d) - 1)
                continue
            i -= 1
        # (b) adjacent ones, F_j + F_{j+1} = F_{j+2}
        for i in range(len(d) - 2, -1, -1):
            if d[i] and d[i + 1]:
                if i + 2 >= len(d):
                    d.append(0)
                d[i] -= 1
                d[i + 1] -= 1
                d[i + 2] += 1
                changed = True
                steps += 1
        if steps > limit:
            raise RuntimeError("Zeckendorf normalization did not converge")
    while d and d[-1] == 0:
        d.pop()
    return d


def zeck_add(a: ZeckRep, b: ZeckRep) -> ZeckRep:
    """Digit-wise sum of two expansions followed by carry normalization."""
    n = max(len(a.digits), len(b.digits))
    d = [0] * (n + 2)
    for i, x in enumerate(a.digits):
        d[i] += x
    for i, x in enumerate(b.digits):
        d[i] += x
    return ZeckRep(tuple(_normalize(d)))


def non_interfering(a: ZeckRep, b: ZeckRep) -> bool:
    """True when the digit blocks of ``a`` and ``b`` are separated by a gap of at least 2.

    The pair is ordered internally so that the block with the lower least
    significant digit comes first.
    """
    if not a or not b:
        raise ValueError("non-interference is defined for nonzero expansions only")
    if b.ones[0] < a.ones[0]:
        a, b = b, a
    return b.ones[0] - a.ones[-1] >= 2


@dataclass(frozen=True)
class DigitWindow:
    """Digits of ``m * L_k`` around position ``k``: ``m L_k = sum bits[j] F_{k+j}``."""

    m: int
    low: int
    bits: tuple[int, ...]

    @property
    def high(self) -> int:
        return self.low + len(self.bits) - 1

    @property
    def offsets(self) -> dict[int, int]:
        return {self.low + j: b for j, b in enumerate(self.bits) if b}

    @property
    def width(self) -> int:
        return len(self.bits)

    def value_at(self, k: int) -> int:
        return sum(fibonacci(k + j) for j in self.offsets)


def _window_at(m: int, k: int) -> tuple[int, tuple[int, ...]] | None:
    rep = zeckendorf_digits(m * lucas(k))
    ones = rep.ones
    if ones[0] < 2:
        return None
    lo, hi = ones[0], ones[-1]
    # index i has weight F_{i+2} = F_{k+j}  =>  j = i + 2 - k
    return lo + 2 - k, rep.digits[lo : hi + 1]


def lucas_multiple_window(m: int, k_probe: int | None = None) -> DigitWindow:
    """Stable digit pattern of ``m * L_k`` relative to ``F_k`` for large ``k``.

    The pattern is accepted once three consecutive probe positions agree; the
    probe is doubled otherwise.
    """
    if m <= 0:
        raise ValueError(f"m must be positive, got {m}")
    ell = len(fibonacci_upto(m)) + 1  # F_ell <= m < F_{ell+1}
    k = max(k_probe or 0, 2 * ell + 5)
    while True:
        windows = [_window_at(m, k + s) for s in range(3)]
        if None not in windows and windows[0] == windows[1] == windows[2]:
            low, bits = windows[0]
            return DigitWindow(m, low, tuple(bits))
        k *= 2

