"""Digit-sum sequences in Zeckendorf and Ostrowski numeration and their complexity profiles."""

__version__ = "0.1.0"

from .analysis import (
    CONJECTURED_SZ_SLOPE,
    LINEAR_BOUND_SLOPE,
    BoundReport,
    FitReport,
    StepTable,
    check_lower_bound,
    extract_steps,
    fit_growth,
    slope_at_last_step,
    theorem_hypothesis_check,
)
from .complexity import (
    ComplexityProfile,
    SuffixAutomaton,
    expansion_complexity,
    expansion_complexity_profile,
    linear_complexity,
    linear_complexity_profile,
    moc_brute,
    moc_profile,
    subword_complexity,
)
from .estimators import ComplexityProfiler, GrowthCurve
from .lucas import LucasCombination, binomial_decomposition, check_sign_pattern, lc_make
from .sequences import (
    BitSequence,
    ContinuedFractionSpec,
    IntPolynomial,
    MorphismSpec,
    morphic_prefix,
    ostrowski_digits,
    polynomial_subsequence,
    sz_bit,
    sz_prefix,
    thue_morse_bit,
    thue_morse_prefix,
)
from .zeckendorf import ZeckRep, digit_sum_z, fibonacci, lucas, zeck_add, zeckendorf_digits
