"""Symbolic integer combinations of Lucas numbers.

A :class:`LucasCombination` is a finite sum ``sum c * L_{a*k + b}`` over
slots ``(a, b)`` sharing one symbol ``k``; a concrete index ``j`` is the slot
``(0, j)``.  Products use ``L_x L_y = L_{x+y} + L_{|x-y|}``, which is exact
whenever both indices are even, so multiplication only admits slots with even
``a`` and ``b``.  Slot order is the order of the indices for large ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Mapping, NamedTuple, Union

from .zeckendorf import lucas

__all__ = [
    "Slot",
    "LucasCombination",
    "lc_make",
    "lc_mul",
    "lc_pow",
    "lc_eval",
    "ONE",
    "t_combination",
    "SignPattern",
    "check_sign_pattern",
    "sign_pattern_admissible",
    "BinomialDecomposition",
    "binomial_decomposition",
    "polynomial_decomposition",
    "dominance_threshold",
]

Coefficient = Union[int, Fraction]


class Slot(NamedTuple):
    """Index expression ``a*k + b``."""

    a: int
    b: int

    def at(self, k: int) -> int:
        return self.a * k + self.b

    @property
    def is_even(self) -> bool:
        return self.a % 2 == 0 and self.b % 2 == 0

    def __str__(self) -> str:
        if self.a == 0:
            return str(self.b)
        head = "k" if self.a == 1 else f"{self.a}k"
        if self.b == 0:
            return head
        return f"{head}{self.b:+d}"


def _slot(x) -> Slot:
    if isinstance(x, Slot):
        return x
    if isinstance(x, int):
        if x < 0:
            raise ValueError(f"concrete Lucas index must be >= 0, got {x}")
        return Slot(0, x)
    a, b = x
    a, b = int(a), int(b)
    if a < 0 or (a == 0 and b < 0):
        raise ValueError(f"slot {a}k{b:+d} is negative for large k")
    return Slot(a, b)


def _normalize_coef(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    if isinstance(c, (int, Fraction)):
        return c
    if isinstance(c, Rational):
        return Fraction(c)
    raise TypeError(f"coefficients must be exact rationals, got {type(c).__name__}")


@dataclass(frozen=True)
class LucasCombination:
    terms: tuple[tuple[Slot, Coefficient], ...] = ()

    @classmethod
    def from_mapping(cls, mapping: Mapping[Slot, Coefficient]) -> "LucasCombination":
        items = []
        for s, c in mapping.items():
            c = _normalize_coef(c)
            if c != 0:
                items.append((s, c))
        items.sort(key=lambda t: t[0])
        return cls(tuple(items))

    def as_dict(self) -> dict[Slot, Coefficient]:
        return dict(self.terms)

    def coefficient(self, slot) -> Coefficient:
        return self.as_dict().get(_slot(slot), 0)

    @property
    def leading(self) -> tuple[Slot, Coefficient]:
        if not self.terms:
            raise ValueError("empty combination has no leading term")
        return self.terms[-1]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "LucasCombination") -> "LucasCombination":
        out = self.as_dict()
        for s, c in other.terms:
            out[s] = out.get(s, 0) + c
        return LucasCombination.from_mapping(out)

    def __mul__(self, other):
        if isinstance(other, LucasCombination):
            return lc_mul(self, other)
        return LucasCombination.from_mapping({s: c * other for s, c in self.terms})

    __rmul__ = __mul__

    def __pow__(self, d: int) -> "LucasCombination":
        return lc_pow(self, d)

    def __call__(self, k: int):
        return lc_eval(self, k)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*L[{s}]" for s, c in reversed(self.terms))


def lc_make(terms: Iterable[tuple[object, Coefficient]]) -> LucasCombination:
    """Build a combination from ``(index, coefficient)`` pairs; duplicate slots are summed.

    An index is either a concrete int or a pair ``(a, b)`` meaning ``a*k + b``.
    """
    out: dict[Slot, Coefficient] = {}
    for index, c in terms:
        s = _slot(index)
        out[s] = out.get(s, 0) + _normalize_coef(c)
    return LucasCombination.from_mapping(out)


ONE = lc_make([(0, Fraction(1, 2))])  # L_0 / 2 == 1


def _require_even(x: LucasCombination) -> None:
    for s, _ in x.terms:
        if not s.is_even:
            raise ValueError(
                f"slot {s} may be odd; products are only sign-free for even indices"
            )


def lc_mul(x: LucasCombination, y: LucasCombination) -> LucasCombination:
    """Product of two even-indexed combinations."""
    _require_even(x)
    _require_even(y)
    out: dict[Slot, Coefficient] = {}
    for s, c in x.terms:
        for t, e in y.terms:
            hi, lo = (s, t) if s >= t else (t, s)
            total = Slot(hi.a + lo.a, hi.b + lo.b)
            # hi >= lo as slots, so the difference is non-negative for large k
            diff = Slot(hi.a - lo.a, hi.b - lo.b)
            w = c * e
            out[total] = out.get(total, 0) + w
            out[diff] = out.get(diff, 0) + w
    return LucasCombination.from_mapping(out)


def lc_pow(x: LucasCombination, d: int) -> LucasCombination:
    if d < 1:
        raise ValueError(f"exponent must be >= 1, got {d}")
    _require_even(x)
    result = None
    base = x
    while d:
        if d & 1:
            result = base if result is None else lc_mul(result, base)
        d >>= 1
        if d:
            base = lc_mul(base, base)
    return result


def lc_eval(x: LucasCombination, k: int):
    """Substitute ``k`` and sum the Lucas values exactly."""
    total = 0
    for s, c in x.terms:
        j = s.at(k)
        if j < 0:
            raise ValueError(f"slot {s} is negative at k={k}")
        total += c * lucas(j)
    return _normalize_coef(total) if isinstance(total, Fraction) else total


def t_combination(m3, m2, m1, m0) -> LucasCombination:
    """``m3 L_{6k} - m2 L_{4k} + m1 L_{2k} + m0 L_0``."""
    return lc_make([((6, 0), m3), ((4, 0), -m2), ((2, 0), m1), (0, m0)])


@dataclass(frozen=True)
class SignPattern:
    holds: bool
    coefficients: tuple[Coefficient, ...]
    violations: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.holds


def check_sign_pattern(c: LucasCombination, d: int) -> SignPattern:
    """Check ``c_{3d} > 0``, ``c_{3d-1} < 0`` and ``c_i > 0`` for ``i <= 3d-2``.

    ``c`` is expected to be ``t(k)**d``; ``c_i`` is its coefficient on
    ``L_{2ik}``.  Slots outside ``{2ik}`` count as violations (index -1).
    """
    coeffs = c.as_dict()
    values = tuple(coeffs.pop(Slot(2 * i, 0), 0) for i in range(3 * d + 1))
    violations = [-1] if coeffs else []
    for i, v in enumerate(values):
        if i == 3 * d - 1:
            ok = v < 0
        else:
            ok = v > 0
        if not ok:
            violations.append(i)
    return SignPattern(not violations, values, tuple(violations))


def sign_pattern_admissible(m0, m1, m2, m3, d: int, bound) -> bool:
    """Parameter conditions under which the sign pattern is guaranteed."""
    return (
        all(1 <= m < bound for m in (m0, m1, m3))
        and 0 < m2 < Fraction(1, d**3 * (32 * bound) ** d)
    )


def _eta(d: int, i: int, lam: int) -> int:
    par = lam % 2
    return comb(d, 2 * i + par) * comb(2 * i + par, i - (lam - par) // 2)


@dataclass(frozen=True)
class BinomialDecomposition:
    """``constant + sum_{lam >= 1} coefficients[lam] * L_{lam * ell}``."""

    constant: int
    coefficients: tuple[int, ...]  # entry lam-1 multiplies L_{lam * ell}

    def beta(self, lam: int) -> int:
        return self.constant if lam == 0 else self.coefficients[lam - 1]

    def evaluate(self, ell: int) -> int:
        return self.constant + sum(
            b * lucas(lam * ell) for lam, b in enumerate(self.coefficients, start=1)
        )

    def as_combination(self) -> LucasCombination:
        """Lucas part only, with ``ell`` as the symbol."""
        return lc_make(
            ((lam, 0), b) for lam, b in enumerate(self.coefficients, start=1)
        )


def binomial_decomposition(n: int, d: int) -> BinomialDecomposition:
    """Expand ``(n + L_ell)**d`` for even ``ell`` as an integer plus Lucas terms.

    Valid for every even ``ell`` (the decomposition does not depend on it).
    The inner sum for ``L_{lam*ell}`` runs over ``(lam - lam%2)/2 <= i <=
    floor((d - lam%2)/2)``.
    """
    if d < 1:
        raise ValueError(f"degree must be >= 1, got {d}")
    constant = sum(_eta(d, i, 0) * n ** (d - 2 * i) for i in range(d // 2 + 1))
    coeffs = []
    for lam in range(1, d + 1):
        par = lam % 2
        lo, hi = (lam - par) // 2, (d - par) // 2
        coeffs.append(
            sum(_eta(d, i, lam) * n ** (d - 2 * i - par) for i in range(lo, hi + 1))
        )
    return BinomialDecomposition(constant, tuple(coeffs))


def polynomial_decomposition(coefficients, n: int) -> BinomialDecomposition:
    """Expand ``P(n + L_ell)`` for even ``ell``; ``coefficients`` are low-to-high."""
    alphas = [int(a) for a in coefficients]
    d = len(alphas) - 1
    while d > 0 and alphas[d] == 0:
        d -= 1
    constant = alphas[0]
    betas = [0] * d
    for i in range(1, d + 1):
        if alphas[i] == 0:
            continue
        part = binomial_decomposition(n, i)
        constant += alphas[i] * part.constant
        for lam, b in enumerate(part.coefficients, start=1):
            betas[lam - 1] += alphas[i] * b
    return BinomialDecomposition(constant, tuple(betas))


def dominance_threshold(d: int, n_max: int = 1000) -> int | None:
    """Smallest ``n0`` with ``beta_lam < beta_0`` for every ``lam >= 1`` and ``n0 <= n < n_max``.

    None when the last sampled ``n`` already fails.
    """
    n0 = None
    for n in range(n_max - 1, -1, -1):
        dec = binomial_decomposition(n, d)
        if all(b < dec.constant for b in dec.coefficients):
            n0 = n
        else:
            break
    return n0
