"""Bit-packed arithmetic over the two-element field.

Polynomials and matrix rows are Python ints: bit ``t`` is the coefficient of
``x^t`` (or column ``t``).
"""
from __future__ import annotations

from typing import Iterable

__all__ = ["clmul", "poly_from_bits", "XorBasis", "rank", "nullspace_vector"]


def clmul(a: int, b: int, nbits: int | None = None) -> int:
    """Carry-less product ``a * b``, optionally reduced mod ``x^nbits``."""
    if a.bit_count() > b.bit_count():
        a, b = b, a
    mask = (1 << nbits) - 1 if nbits is not None else -1
    out = 0
    while a:
        low = a & -a
        out ^= (b << (low.bit_length() - 1)) & mask
        a ^= low
    return out


def poly_from_bits(bits: Iterable[int]) -> int:
    out = 0
    for i, b in enumerate(bits):
        if b:
            out |= 1 << i
    return out


class XorBasis:
    """Incremental row echelon basis keyed by leading bit."""

    def __init__(self):
        self.rows: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.rows)

    def reduce(self, v: int) -> int:
        while v:
            top = v.bit_length() - 1
            row = self.rows.get(top)
            if row is None:
                return v
            v ^= row
        return 0

    def add(self, v: int) -> bool:
        """Insert ``v``; return True if it increased the rank."""
        v = self.reduce(v)
        if v:
            self.rows[v.bit_length() - 1] = v
            return True
        return False


def rank(rows: Iterable[int]) -> int:
    basis = XorBasis()
    for r in rows:
        basis.add(r)
    return len(basis)


def nullspace_vector(rows: list[int], ncols: int) -> int | None:
    """A nonzero ``v`` with ``popcount(row & v)`` even for every row, or None."""
    pivots: dict[int, int] = {}  # pivot column -> reduced row
    for r in rows:
        for col, prow in pivots.items():
            if r >> col & 1:
                r ^= prow
        if not r:
            continue
        col = (r & -r).bit_length() - 1
        for c in list(pivots):
            if pivots[c] >> col & 1:
                pivots[c] ^= r
        pivots[col] = r
    free = [c for c in range(ncols) if c not in pivots]
    if not free:
        return None
    f = free[0]
    v = 1 << f
    for col, prow in pivots.items():
        if prow >> f & 1:
            v |= 1 << col
    return v
