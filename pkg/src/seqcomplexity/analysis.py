"""Step tables, lower-bound checks and growth fits for complexity profiles."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_UP, Decimal, localcontext
from fractions import Fraction
from typing import Sequence

import numpy as np

from .complexity.profile import ComplexityProfile
from .sequences import IntPolynomial

__all__ = [
    "GOLDEN_RATIO",
    "LINEAR_BOUND_SLOPE",
    "CONJECTURED_SZ_SLOPE",
    "StepTable",
    "extract_steps",
    "format_ratio",
    "RatioReport",
    "ratio_limit_report",
    "BoundReport",
    "check_lower_bound",
    "SlopeReport",
    "slope_at_last_step",
    "FitReport",
    "fit_growth",
    "HypothesisReport",
    "theorem_hypothesis_check",
]

GOLDEN_RATIO = (1 + math.sqrt(5)) / 2
# 1 / (phi + phi^3) = 1 / (3 phi + 1)
LINEAR_BOUND_SLOPE = 1 / (3 * GOLDEN_RATIO + 1)
# 1 / (1 + phi^2)
CONJECTURED_SZ_SLOPE = 1 / (1 + GOLDEN_RATIO**2)


def format_ratio(r: Fraction, decimals: int = 9, comma: bool = False,
                 significant: int | None = None) -> str:
    """Round half-up to ``decimals`` places and drop trailing zeros (``2,5``, ``1,615``).

    With ``significant`` the value is rounded to that many significant digits
    instead, and trailing zeros are kept unless the rounding was exact
    (``2,00884850`` but ``1,5``).
    """
    with localcontext() as ctx:
        ctx.prec = 60
        exact = Decimal(r.numerator) / Decimal(r.denominator)
        if significant is None:
            step = Decimal(1).scaleb(-decimals)
        else:
            step = Decimal(1).scaleb(exact.adjusted() - significant + 1) if r else Decimal(1)
        d = exact.quantize(step, rounding=ROUND_HALF_UP)
        strip = significant is None or Fraction(d) == r
    text = format(d, "f")
    if strip and "." in text:
        text = text.rstrip("0").rstrip(".")
    return text.replace(".", ",") if comma else text


@dataclass(frozen=True)
class StepTable:
    """Step positions with the exact ratio to the previous step (None on the first row)."""

    positions: tuple[int, ...]

    def __post_init__(self):
        pos = tuple(int(p) for p in self.positions)
        if any(b <= a for a, b in zip(pos, pos[1:])):
            raise ValueError("step positions must be strictly increasing")
        object.__setattr__(self, "positions", pos)

    @classmethod
    def from_positions(cls, positions: Sequence[int]) -> "StepTable":
        return cls(tuple(positions))

    @property
    def ratios(self) -> tuple[Fraction | None, ...]:
        if not self.positions:
            return ()
        return (None,) + tuple(
            Fraction(b, a) for a, b in zip(self.positions, self.positions[1:])
        )

    @property
    def rows(self) -> list[tuple[int, Fraction | None]]:
        return list(zip(self.positions, self.ratios))

    def __len__(self) -> int:
        return len(self.positions)

    def decimal_rows(self, decimals: int = 9, comma: bool = False,
                     significant: int | None = None) -> list[tuple[int, str]]:
        return [
            (p, "-" if r is None else format_ratio(r, decimals, comma, significant))
            for p, r in self.rows
        ]

    def to_csv(self, decimals: int = 9, comma: bool = False, significant: int | None = None) -> str:
        """``N,ratio`` rows for every step that has a predecessor."""
        lines = ["N,ratio"]
        for p, r in self.decimal_rows(decimals, comma, significant)[1:]:
            # quote comma decimals so the CSV stays two columns
            lines.append(f'{p},"{r}"' if comma and "," in r else f"{p},{r}")
        return "\n".join(lines) + "\n"


def extract_steps(profile: ComplexityProfile) -> StepTable:
    return StepTable(tuple(int(p) for p in profile.positions))


@dataclass(frozen=True)
class RatioReport:
    target: float
    last_ratios: tuple[float, ...]
    final_ratio: float | None
    deviation: float | None


def ratio_limit_report(table: StepTable, target: float, last: int = 5) -> RatioReport:
    """Summarize how the ratios of successive steps approach ``target``."""
    ratios = [float(r) for r in table.ratios[1:]]
    if not ratios:
        return RatioReport(target, (), None, None)
    final = ratios[-1]
    return RatioReport(target, tuple(ratios[-last:]), final, abs(final - target))


@dataclass
class BoundReport:
    bound: str
    range: tuple[int, int]
    violations: list[int] = field(default_factory=list)
    constants: dict = field(default_factory=dict)
    vacuous: bool = False

    @property
    def passed(self) -> bool:
        if self.bound == "sz-polynomial":
            return self.vacuous or self.constants.get("c", 0) > 0
        return not self.violations

    def to_dict(self) -> dict:
        out = asdict(self)
        out["range"] = list(self.range)
        out["passed"] = self.passed
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _linear_bound_holds(m: np.ndarray, n: np.ndarray) -> np.ndarray:
    # M - 1 >= N / (3 phi + 1)  <=>  3 x sqrt5 >= 2N - 5x  with x = M - 1
    rhs = 2 * n - 5 * (m - 1)
    x = m - 1
    return (x >= 0) & ((rhs <= 0) | (45 * x * x >= rhs * rhs))


def check_lower_bound(profile: ComplexityProfile, bound: str, lo: int, hi: int,
                      degree: int | None = None, max_listed: int = 100) -> BoundReport:
    """Check a lower bound on ``[lo, hi]``.

    ``bound="sz-linear"``: ``M(N) >= N / (phi + phi^3) + 1`` exactly for every
    ``N``; the report lists violating ``N`` and the largest one as
    ``constants["empirical_N0"]``.

    ``bound="sz-polynomial"``: the best ``c`` with ``M(N) >= c N^(1/(2 degree))``
    over the range.
    """
    if bound not in ("sz-linear", "sz-polynomial"):
        raise ValueError(f"unknown bound {bound!r}")
    hi = min(hi, profile.length)
    report = BoundReport(bound, (lo, hi))
    if hi < lo:
        report.vacuous = True
        return report
    if hi > 10**9:
        raise ValueError("range too large for exact int64 comparison")
    n = np.arange(lo, hi + 1, dtype=np.int64)
    m = profile.dense()[lo - 1 : hi]
    if bound == "sz-linear":
        ok = _linear_bound_holds(m, n)
        bad = n[~ok]
        report.violations = bad[:max_listed].tolist()
        report.constants = {
            "slope": LINEAR_BOUND_SLOPE,
            "violation_count": int(bad.size),
            "empirical_N0": int(bad[-1]) if bad.size else None,
        }
    else:
        if degree is None or degree < 1:
            raise ValueError("sz-polynomial needs the polynomial degree")
        c = m / n.astype(float) ** (1 / (2 * degree))
        i = int(np.argmin(c))
        report.constants = {"c": float(c[i]), "attained_at": int(n[i]), "exponent": 1 / (2 * degree)}
        if c[i] <= 0:
            report.violations = n[c <= 0][:max_listed].tolist()
    return report


@dataclass(frozen=True)
class SlopeReport:
    position: int
    value: int
    slope: float
    target: float
    deviation: float


def slope_at_last_step(profile: ComplexityProfile, limit: int,
                       target: float = CONJECTURED_SZ_SLOPE) -> SlopeReport:
    """``M(N)/N`` at the last step ``N <= limit``."""
    k = int(np.searchsorted(profile.positions, limit, side="right"))
    if k == 0:
        raise ValueError("profile has no step below the limit")
    n, v = int(profile.positions[k - 1]), int(profile.values[k - 1])
    return SlopeReport(n, v, v / n, target, abs(v / n - target))


@dataclass(frozen=True)
class FitReport:
    model: str
    coefficient: float
    exponent: float | None
    intercept: float | None
    rms_residual: float
    r2: float
    range: tuple[int, int]
    n_points: int

    def to_dict(self) -> dict:
        out = asdict(self)
        out["range"] = list(self.range)
        return out


def fit_growth(profile: ComplexityProfile, model: str = "power",
               lo: int = 1, hi: int | None = None) -> FitReport:
    """Least-squares growth fit on the step points ``(N_i, M_i)`` inside ``[lo, hi]``.

    ``linear`` fits ``M = a N``; ``power`` fits ``log M = e log N + b`` and
    reports ``coefficient = exp(b)``.
    """
    from .estimators import GrowthCurve

    hi = profile.length if hi is None else hi
    mask = (profile.positions >= lo) & (profile.positions <= hi)
    n = profile.positions[mask].astype(float)
    m = profile.values[mask].astype(float)
    if n.size < 2:
        raise ValueError("insufficient data: need at least two steps in range")
    est = GrowthCurve(model=model).fit(n, m)
    return FitReport(
        model=model,
        coefficient=float(est.coef_),
        exponent=None if model == "linear" else float(est.exponent_),
        intercept=None if model == "linear" else float(est.intercept_),
        rms_residual=float(est.rms_residual_),
        r2=float(est.score(n, m)),
        range=(int(lo), int(hi)),
        n_points=int(n.size),
    )


@dataclass(frozen=True)
class HypothesisReport:
    monic: bool
    degree: int
    nonnegative: bool
    first_negative: int | None
    checked_up_to: int

    @property
    def applicable(self) -> bool:
        """Whether the polynomial lower bound is claimed for this polynomial."""
        return self.monic and self.degree >= 2 and self.nonnegative

    def to_dict(self) -> dict:
        out = asdict(self)
        out["applicable"] = self.applicable
        return out


def theorem_hypothesis_check(poly: IntPolynomial | Sequence[int], n_max: int = 10**4) -> HypothesisReport:
    """Monicity, degree >= 2 and ``P(n) >= 0`` for ``0 <= n < n_max``."""
    if not isinstance(poly, IntPolynomial):
        poly = IntPolynomial(tuple(poly))
    values = poly.evaluate_range(n_max)
    first = None
    for i, v in enumerate(values):
        if v < 0:
            first = i
            break
    return HypothesisReport(poly.is_monic, poly.degree, first is None, first, n_max)
