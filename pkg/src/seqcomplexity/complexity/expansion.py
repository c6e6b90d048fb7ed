"""Expansion complexity by kernel search over GF(2)."""
from __future__ import annotations

from typing import Mapping

import numpy as np

from .gf2 import XorBasis, clmul, nullspace_vector, poly_from_bits
from .moc import as_symbols
from .profile import ComplexityProfile

__all__ = [
    "expansion_complexity",
    "expansion_complexity_profile",
    "annihilating_polynomial",
    "evaluate_bivariate",
    "THUE_MORSE_WITNESS",
]

# (x+1)^3 y^2 + (x+1)^2 y + x, as {(i, j): 1} for the monomials x^i y^j
THUE_MORSE_WITNESS = {
    (3, 2): 1, (2, 2): 1, (1, 2): 1, (0, 2): 1,
    (2, 1): 1, (0, 1): 1,
    (1, 0): 1,
}


def _monomials(d: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(d + 1) for i in range(d + 1 - j)]


def _powers(g: int, d: int, n: int) -> list[int]:
    out = [1]
    for _ in range(d):
        out.append(clmul(out[-1], g, n))
    return out


def _row(t: int, monos, gpow) -> int:
    r = 0
    for col, (i, j) in enumerate(monos):
        if t >= i and gpow[j] >> (t - i) & 1:
            r |= 1 << col
    return r


def evaluate_bivariate(h: Mapping[tuple[int, int], int], seq, n: int) -> int:
    """``h(x, G(x)) mod x^n`` bit-packed, ``G`` the generating function of ``seq``."""
    g = poly_from_bits(as_symbols(seq)[:n].tolist())
    dmax = max((j for (_, j), c in h.items() if c & 1), default=0)
    gpow = _powers(g, dmax, n)
    mask = (1 << n) - 1
    acc = 0
    for (i, j), c in h.items():
        if c & 1:
            acc ^= (gpow[j] << i) & mask
    return acc


def _saturation(gpow, d: int, n_max: int) -> int:
    """Smallest ``N`` whose degree-``d`` system has only the trivial kernel (or n_max + 1)."""
    monos = _monomials(d)
    basis = XorBasis()
    for t in range(n_max):
        basis.add(_row(t, monos, gpow))
        if len(basis) == len(monos):
            return t + 1
    return n_max + 1


def expansion_complexity_profile(seq, dmax: int = 30) -> ComplexityProfile:
    """``E(seq, N)`` for all ``N`` up to the point where it would exceed ``dmax``.

    The returned profile's ``length`` is the last ``N`` with ``E <= dmax``.
    """
    sym = as_symbols(seq)
    n_max = int(sym.size)
    if n_max == 0:
        raise ValueError("sequence must be nonempty")
    g = poly_from_bits(sym.tolist())
    gpow = [1]
    dense = np.zeros(n_max, dtype=np.int64)
    first_one = int(np.argmax(sym != 0)) if sym.any() else n_max
    covered = first_one  # E = 0 on the all-zero prefix
    d = 0
    while covered < n_max:
        d += 1
        if d > dmax:
            return ComplexityProfile.from_dense(dense[:covered], measure="expansion")
        gpow.append(clmul(gpow[-1], g, n_max))
        sat = _saturation(gpow, d, n_max)
        # kernel exists at degree d for N < sat
        if sat - 1 > covered:
            dense[covered : sat - 1] = d
            covered = sat - 1
    return ComplexityProfile.from_dense(dense, measure="expansion")


def expansion_complexity(seq, n: int, dmax: int = 30) -> int | None:
    """``E(seq, N)``, or None when it exceeds ``dmax``."""
    sym = as_symbols(seq)
    if not 1 <= n <= sym.size:
        raise ValueError(f"N must satisfy 1 <= N <= {sym.size}")
    if not sym[:n].any():
        return 0
    g = poly_from_bits(sym[:n].tolist())
    gpow = [1]
    for d in range(1, dmax + 1):
        gpow.append(clmul(gpow[-1], g, n))
        monos = _monomials(d)
        rows = [_row(t, monos, gpow) for t in range(n)]
        if nullspace_vector(rows, len(monos)) is not None:
            return d
    return None


def annihilating_polynomial(seq, n: int, d: int) -> dict[tuple[int, int], int] | None:
    """A nonzero ``h`` of total degree ``<= d`` with ``h(x, G(x)) = 0 mod x^n``, if one exists."""
    sym = as_symbols(seq)
    g = poly_from_bits(sym[:n].tolist())
    gpow = _powers(g, d, n)
    monos = _monomials(d)
    v = nullspace_vector([_row(t, monos, gpow) for t in range(n)], len(monos))
    if v is None:
        return None
    return {monos[c]: 1 for c in range(len(monos)) if v >> c & 1}
