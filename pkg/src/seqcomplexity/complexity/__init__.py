"""Complexity measures of finite binary sequences."""
from .automaton import SuffixAutomaton
from .expansion import (
    THUE_MORSE_WITNESS,
    annihilating_polynomial,
    evaluate_bivariate,
    expansion_complexity,
    expansion_complexity_profile,
)
from .linear import berlekamp_massey, linear_complexity, linear_complexity_profile
from .moc import moc_brute, moc_brute_profile, moc_profile
from .profile import ComplexityProfile
from .subword import subword_complexity, subword_complexity_window, subword_profile

__all__ = [
    "SuffixAutomaton",
    "ComplexityProfile",
    "moc_profile",
    "moc_brute",
    "moc_brute_profile",
    "berlekamp_massey",
    "linear_complexity",
    "linear_complexity_profile",
    "expansion_complexity",
    "expansion_complexity_profile",
    "annihilating_polynomial",
    "evaluate_bivariate",
    "THUE_MORSE_WITNESS",
    "subword_complexity",
    "subword_complexity_window",
    "subword_profile",
]
