"""Exhaustive and sampled instance checks of the digit identities behind the bounds.

Each battery returns a :class:`BatteryResult`; ``failures`` holds up to
``max_failures`` offending inputs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable

import numpy as np

from .complexity import moc_brute_profile, moc_profile
from .lucas import (
    binomial_decomposition,
    check_sign_pattern,
    lc_eval,
    lc_pow,
    sign_pattern_admissible,
    t_combination,
)
from .sequences import (
    ContinuedFractionSpec,
    convergent_denominators,
    ostrowski_digits,
    polynomial_subsequence,
    random_sequence,
    sz_bit,
    sz_prefix,
    thue_morse_bit,
    thue_morse_prefix,
)
from .zeckendorf import (
    PHI,
    ZeckRep,
    digit_sum_z,
    digit_sum_z_array,
    fibonacci,
    lucas,
    non_interfering,
    zeckendorf_digits,
)

__all__ = ["BatteryResult", "SUITES", "ALIASES", "run_suite"]


@dataclass
class BatteryResult:
    name: str
    checked: int = 0
    failures: list = field(default_factory=list)
    failure_count: int = 0
    max_failures: int = 20

    def record(self, ok: bool, case) -> None:
        self.checked += 1
        if not ok:
            self.failure_count += 1
            if len(self.failures) < self.max_failures:
                self.failures.append(case)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checked} checks, {self.failure_count} failures"


def lucas_identities(k_max: int = 40, h_max: int = 9) -> BatteryResult:
    res = BatteryResult("lucas-identities")
    for j in range(1, k_max + 1):
        res.record(lucas(j) == fibonacci(j + 1) + fibonacci(j - 1), ("L=F+F", j))
    for k in range(k_max + 1):
        for ell in range(k + 1):
            sign = -1 if ell % 2 else 1
            res.record(lucas(k) * lucas(ell) == lucas(k + ell) + sign * lucas(k - ell),
                       ("LL", k, ell))
            res.record(lucas(k) * fibonacci(ell) == fibonacci(k + ell) - sign * fibonacci(k - ell),
                       ("LF", k, ell))
        for h in range(h_max + 1):
            if h % 2:
                rhs = sum(comb(h, i) * (-1) ** (i * k) * lucas((h - 2 * i) * k)
                          for i in range((h - 1) // 2 + 1))
            else:
                rhs = sum(comb(h, i) * (-1) ** (i * k) * lucas((h - 2 * i) * k)
                          for i in range(h // 2)) + comb(h, h // 2) * (-1) ** (h * k // 2)
            res.record(lucas(k) ** h == rhs, ("L^h", k, h))
    return res


def two_lucas_parity(lo: int = 5, hi: int = 60) -> BatteryResult:
    res = BatteryResult("two-lucas-parity")
    for k in range(lo, hi + 1):
        for ell in range(lo, k + 1):
            odd = digit_sum_z(lucas(k) + lucas(ell)) % 2 == 1
            res.record(odd == (k == ell + 2), (k, ell))
    return res


def _small_reps(max_index: int, max_digits: int) -> list[tuple[int, ...]]:
    out = []
    for r in range(1, max_digits + 1):
        for idx in combinations(range(max_index + 1), r):
            if all(b - a >= 2 for a, b in zip(idx, idx[1:])):
                out.append(idx)
    return out


def non_interference(max_index: int = 25, max_digits: int = 3) -> BatteryResult:
    """Digit sums add over every non-interfering pair of small expansions."""
    res = BatteryResult("non-interference")
    reps = _small_reps(max_index, max_digits)
    fib = np.array([fibonacci(i + 2) for i in range(max_index + 1)], dtype=np.int64)
    values = np.array([fib[list(r)].sum() for r in reps], dtype=np.int64)
    counts = np.array([len(r) for r in reps], dtype=np.int64)
    low = np.array([r[0] for r in reps])
    high = np.array([r[-1] for r in reps])
    for a in range(len(reps)):
        sep = (low - high[a] >= 2) | (low[a] - high >= 2)
        if not sep.any():
            continue
        sums = digit_sum_z_array(values[a] + values[sep])
        ok = sums == counts[a] + counts[sep]
        res.checked += int(sep.sum())
        bad = np.nonzero(~ok)[0]
        res.failure_count += int(bad.size)
        for b in bad[: res.max_failures - len(res.failures)]:
            res.failures.append((reps[a], reps[np.nonzero(sep)[0][b]]))
    # the predicate itself, on a deterministic sample of pairs
    rng = np.random.default_rng(0)
    for _ in range(2000):
        i, j = rng.integers(len(reps), size=2)
        ra, rb = ZeckRep.from_indices(reps[i]), ZeckRep.from_indices(reps[j])
        expected = bool((low[j] - high[i] >= 2) or (low[i] - high[j] >= 2))
        res.record(non_interfering(ra, rb) == expected, ("predicate", reps[i], reps[j]))
    return res


def fibonacci_shift(lo: int = 2, hi: int = 25) -> BatteryResult:
    """Blocks after ``F_{l+1}`` and ``F_{l+2}`` agree and the successors differ in parity."""
    res = BatteryResult("fibonacci-shift")
    for ell in range(lo, hi + 1):
        n = np.arange(fibonacci(ell), dtype=np.int64)
        a = digit_sum_z_array(n + fibonacci(ell + 1))
        b = digit_sum_z_array(n + fibonacci(ell + 2))
        bad = np.nonzero(a != b)[0]
        res.checked += int(n.size)
        res.failure_count += int(bad.size)
        res.failures.extend((ell, int(x)) for x in bad[: 3])
        f = fibonacci(ell)
        res.record(digit_sum_z(f + fibonacci(ell + 1)) % 2 != digit_sum_z(f + fibonacci(ell + 2)) % 2,
                   ("successor", ell))
    return res


def sign_pattern(degrees=(1, 2, 3), bounds=(2, 3)) -> BatteryResult:
    """Coefficient signs of ``t(k)^d`` under admissible parameters."""
    res = BatteryResult("sign-pattern")
    for d in degrees:
        for M in bounds:
            cap = Fraction(1, d**3 * (32 * M) ** d)
            for m2 in (cap / 2, cap * Fraction(999, 1000), Fraction(1, d**3 * (32 * M) ** d + 1)):
                for ms in ((1, 1, 1), (Fraction(2 * M - 1, 2), 1, Fraction(3, 2)),
                           (1, Fraction(M * 7 - 1, 7), 1), (M - Fraction(1, 10),) * 3):
                    m0, m1, m3 = ms
                    if not sign_pattern_admissible(m0, m1, m2, m3, d, M):
                        continue
                    c = lc_pow(t_combination(m3, m2, m1, m0), d)
                    res.record(check_sign_pattern(c, d).holds, (d, M, m0, m1, m2, m3))
    return res


def power_block_shift(d: int = 3, ks=range(4, 9), parity_ks=range(120, 181)) -> BatteryResult:
    """``s_Z((n+L_{6k+2})^d) = s_Z((n+L_{6k+4})^d)`` for small ``n``, and the
    unit step of ``s_Z(t(k)^d)`` in ``k`` once ``k`` is large."""
    res = BatteryResult("power-block-shift")
    for k in ks:
        f3k = fibonacci(3 * k)
        n = d
        while binomial_decomposition(n, d).constant < f3k:
            a = digit_sum_z((n + lucas(6 * k + 2)) ** d)
            b = digit_sum_z((n + lucas(6 * k + 4)) ** d)
            res.record(a == b, ("equality", k, n))
            n += 1
    alpha = next(a for a in range(1, 10**4) if PHI**a > d**3 * PHI * (32 * PHI) ** d)
    m = math.ceil(PHI ** (alpha - 1))
    T = lc_pow(t_combination(m, 1, m, m), d)
    prev = None
    for k in parity_ks:
        cur = digit_sum_z(lc_eval(T, k))
        if prev is not None:
            res.record(cur - prev == 1, ("unit-step", k, prev, cur))
        prev = cur
    return res


def shifted_difference(m_max: int = 5) -> BatteryResult:
    """``s_Z(m1 L_{2k1} - m2 L_{2k2}) - (k1 - k2)`` is constant on a grid of large ``k1 > k2``."""
    res = BatteryResult("shifted-difference")
    for m1 in range(1, m_max + 1):
        for m2 in range(1, m_max + 1):
            first = None
            for k2 in range(10, 16):
                for k1 in range(k2 + 8, k2 + 16):
                    v = digit_sum_z(m1 * lucas(2 * k1) - m2 * lucas(2 * k2)) - (k1 - k2)
                    if first is None:
                        first = v
                    res.record(v == first, (m1, m2, k1, k2, v, first))
    return res


def polynomial_shift(polys=((0, 0, 1), (1, 0, 1), (3, 2, 1), (5, 1, 1)), ks=(2, 3, 4),
                     rs=(2, 3, 4), n_min: int = 1) -> BatteryResult:
    """``s_Z(P(n + L_{2d mu k + 2})) = s_Z(P(n + L_{2d mu k + 2r}))`` with ``mu = 2d - 1``,
    and the parity split at ``n = L_{2dk}``."""
    res = BatteryResult("polynomial-shift")
    for coeffs in polys:
        d = len(coeffs) - 1
        mu = 2 * d - 1
        P = lambda x: sum(a * x**i for i, a in enumerate(coeffs))
        for k in ks:
            base = 2 * d * mu * k
            for n in range(n_min, fibonacci(mu * k)):
                a = digit_sum_z(P(n + lucas(base + 2)))
                for r in rs:
                    res.record(a == digit_sum_z(P(n + lucas(base + 2 * r))), (coeffs, k, n, r))
            lam = 2 * d * k
            a = digit_sum_z(P(lucas(lam) + lucas(base + 2)))
            b = digit_sum_z(P(lucas(lam) + lucas(base + 4)))
            res.record(a != b, ("split", coeffs, k, a, b))
    return res


def binomial_dominance(degrees=(3, 5, 7), n_max: int = 200) -> BatteryResult:
    """Every Lucas coefficient of ``(n + L_l)^d`` is below the constant term for ``n >= d``."""
    res = BatteryResult("binomial-dominance")
    for d in degrees:
        for n in range(d, n_max):
            dec = binomial_decomposition(n, d)
            res.record(all(b < dec.constant for b in dec.coefficients), (d, n))
            res.record(dec.evaluate(10) == (n + lucas(10)) ** d, ("exact", d, n))
    return res


def lucas_windows(m_max: int = 60) -> BatteryResult:
    from .zeckendorf import fibonacci_upto, lucas_multiple_window

    res = BatteryResult("lucas-windows")
    for m in range(1, m_max + 1):
        w = lucas_multiple_window(m)
        ell = len(fibonacci_upto(m)) + 1
        res.record(w.width <= 2 * ell + 3, ("width", m, w.width))
        lo = 2 * ell + 5
        for k in range(lo, lo + 12):
            res.record(w.value_at(k) == m * lucas(k), ("value", m, k))
    return res


def oracle_moc(n_random: int = 500, length: int = 200, seed: int = 2024) -> BatteryResult:
    """Automaton profile equals the brute-force FSR search at every prefix."""
    res = BatteryResult("oracle-moc")
    seqs = [random_sequence(length, seed + i) for i in range(n_random)]
    seqs += [
        sz_prefix(length),
        thue_morse_prefix(length),
        polynomial_subsequence(thue_morse_bit, [0, 0, 1], length),
        polynomial_subsequence(sz_bit, [0, 0, 1], length),
    ]
    for i, s in enumerate(seqs):
        fast = moc_profile(s).dense()
        slow = moc_brute_profile(s)
        bad = np.nonzero(fast != slow)[0]
        res.checked += int(fast.size)
        res.failure_count += int(bad.size)
        if bad.size and len(res.failures) < res.max_failures:
            res.failures.append((i, int(bad[0]) + 1, int(fast[bad[0]]), int(slow[bad[0]])))
    return res


def _legal_ostrowski(cf: ContinuedFractionSpec, length: int):
    """All legal digit vectors ``b_0..b_{length-1}`` (brute force)."""
    out = [[]]
    for i in range(length):
        top = cf.quotient(i + 1)
        choices = range(top) if i == 0 else range(top + 1)
        nxt = []
        for v in out:
            for b in choices:
                if i >= 1 and b == top and v[i - 1] != 0:
                    continue
                nxt.append(v + [b])
        out = nxt
    return out


def ostrowski(n_golden: int = 10**4, n_exhaustive: int = 2000) -> BatteryResult:
    res = BatteryResult("ostrowski")
    golden = ContinuedFractionSpec.golden()
    for n in range(n_golden):
        b = ostrowski_digits(golden, n)
        z = zeckendorf_digits(n).digits
        res.record((not b or b[0] == 0) and tuple(b[1:]) == z, ("golden", n))
    for text in ("1:2", "0:3", "2:1,2", "0,1,4:2,1,3"):
        cf = ContinuedFractionSpec.parse(text)
        q = convergent_denominators(cf, 40)
        length = next(i for i, v in enumerate(q) if v > n_exhaustive) + 1
        table: dict[int, list] = {}
        for v in _legal_ostrowski(cf, length):
            val = sum(b * qi for b, qi in zip(v, q))
            if val <= n_exhaustive:
                table.setdefault(val, []).append(v)
        for n in range(n_exhaustive + 1):
            found = table.get(n, [])
            digits = list(ostrowski_digits(cf, n))
            digits += [0] * (length - len(digits))
            res.record(len(found) == 1 and found[0] == digits, (text, n, found))
    return res


SUITES: dict[str, Callable[[], BatteryResult]] = {
    "lucas-identities": lucas_identities,
    "two-lucas-parity": two_lucas_parity,
    "non-interference": non_interference,
    "fibonacci-shift": fibonacci_shift,
    "sign-pattern": sign_pattern,
    "power-block-shift": power_block_shift,
    "shifted-difference": shifted_difference,
    "polynomial-shift": polynomial_shift,
    "binomial-dominance": binomial_dominance,
    "lucas-windows": lucas_windows,
    "oracle-moc": oracle_moc,
    "ostrowski": ostrowski,
}

# suite names used in the CLI contract
ALIASES = {
    "lemma-2.2": "fibonacci-shift",
    "lemma-2.6": "sign-pattern",
    "lemma-2.7": "power-block-shift",
}


def run_suite(name: str) -> BatteryResult:
    key = ALIASES.get(name, name)
    if key not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    result = SUITES[key]()
    result.name = name
    return result
