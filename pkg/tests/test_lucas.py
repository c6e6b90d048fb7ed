from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from seqcomplexity.lucas import (
    ONE,
    LucasCombination,
    Slot,
    binomial_decomposition,
    check_sign_pattern,
    dominance_threshold,
    lc_eval,
    lc_make,
    lc_mul,
    lc_pow,
    polynomial_decomposition,
    sign_pattern_admissible,
    t_combination,
)
from seqcomplexity.zeckendorf import digit_sum_z, fibonacci, lucas

even_slot = st.tuples(st.integers(0, 4).map(lambda a: 2 * a), st.integers(0, 6).map(lambda b: 2 * b))
coef = st.fractions(min_value=-5, max_value=5, max_denominator=7)
combination = st.lists(st.tuples(even_slot, coef), min_size=1, max_size=4).map(lc_make)


class TestCombination:
    def test_one_is_unit(self):
        assert lc_eval(ONE, 3) == 1
        x = lc_make([((2, 0), 3), (4, -1)])
        assert lc_mul(ONE, x) == x

    def test_duplicates_summed_and_zeros_dropped(self):
        c = lc_make([((2, 0), 1), ((2, 0), 2), (4, 1), (4, -1)])
        assert c.as_dict() == {Slot(2, 0): 3}

    def test_slot_rendering(self):
        assert str(Slot(6, 0)) == "6k"
        assert str(Slot(2, -2)) == "2k-2"
        assert str(Slot(0, 4)) == "4"

    def test_negative_slots_rejected(self):
        with pytest.raises(ValueError):
            lc_make([(-1, 1)])
        with pytest.raises(ValueError):
            lc_make([((0, -2), 1)])

    def test_odd_slots_refused_in_products(self):
        odd = lc_make([((1, 0), 1)])
        with pytest.raises(ValueError):
            lc_mul(odd, odd)
        with pytest.raises(ValueError):
            lc_mul(lc_make([((2, 1), 1)]), ONE)

    def test_float_coefficients_refused(self):
        with pytest.raises(TypeError):
            lc_make([(2, 0.5)])

    def test_leading_term(self):
        t = t_combination(1, 2, 3, 4)
        assert t.leading == (Slot(6, 0), 1)

    @settings(max_examples=200)
    @given(combination, combination, st.integers(7, 20))
    def test_product_is_evaluation_homomorphism(self, x, y, k):
        assert lc_eval(x * y, k) == lc_eval(x, k) * lc_eval(y, k)

    @settings(max_examples=100)
    @given(combination, st.integers(1, 4), st.integers(30, 45))
    def test_power(self, x, d, k):
        assert lc_eval(lc_pow(x, d), k) == lc_eval(x, k) ** d

    def test_operators(self):
        x = lc_make([((2, 0), 1)])
        assert isinstance(x + x, LucasCombination)
        assert (x + x) == 2 * x
        assert (x**3)(5) == lucas(10) ** 3


class TestSignPattern:
    def test_d2_with_large_m2_fails(self):
        c = lc_pow(t_combination(1, 1, 1, 1), 2)
        res = check_sign_pattern(c, 2)
        assert not res
        assert res.violations == (1, 2)

    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("M", [2, 3, 5])
    def test_admissible_parameters(self, d, M):
        m2 = Fraction(1, d**3 * (32 * M) ** d + 1)
        assert sign_pattern_admissible(1, 1, m2, 1, d, M)
        for m in (1, Fraction(3, 2), M - Fraction(1, 3)):
            c = lc_pow(t_combination(m, m2, m, m), d)
            assert check_sign_pattern(c, d).holds

    def test_admissibility_boundaries(self):
        assert not sign_pattern_admissible(1, 1, Fraction(1, 3**3 * 64**3), 1, 3, 2)
        assert not sign_pattern_admissible(2, 1, Fraction(1, 10**9), 1, 3, 2)
        assert not sign_pattern_admissible(1, 1, 0, 1, 3, 2)

    def test_foreign_slot_is_a_violation(self):
        c = lc_make([((2, 0), 1), ((4, 2), 1)])
        assert -1 in check_sign_pattern(c, 1).violations


def naive_power_lucas(n, ell, d):
    return (n + lucas(ell)) ** d


class TestBinomialDecomposition:
    def test_cube_of_three(self):
        dec = binomial_decomposition(3, 3)
        assert dec.constant == 45
        assert dec.coefficients == (30, 9, 1)
        assert dec.evaluate(10) == 126**3

    @pytest.mark.parametrize("d", range(1, 9))
    def test_exact_for_even_ell(self, d):
        for n in range(0, 12):
            dec = binomial_decomposition(n, d)
            for ell in (0, 2, 4, 10, 20):
                assert dec.evaluate(ell) == naive_power_lucas(n, ell, d)

    def test_leading_coefficient_is_one(self):
        for d in range(1, 8):
            assert binomial_decomposition(5, d).coefficients[-1] == 1

    def test_odd_degree_odd_lambda_upper_limit(self):
        # d = 5: beta_1 needs i up to 2 (2i + 1 <= 5)
        dec = binomial_decomposition(2, 5)
        expected = sum(comb(5, 2 * i + 1) * comb(2 * i + 1, i) * 2 ** (4 - 2 * i) for i in range(3))
        assert dec.beta(1) == expected

    def test_polynomial_decomposition(self):
        coeffs = [3, -2, 0, 1]
        for n in range(0, 10):
            dec = polynomial_decomposition(coeffs, n)
            for ell in (2, 6, 12):
                x = n + lucas(ell)
                assert dec.evaluate(ell) == 3 - 2 * x + x**3

    def test_as_combination(self):
        dec = binomial_decomposition(4, 2)
        assert dec.constant + lc_eval(dec.as_combination(), 6) == (4 + lucas(6)) ** 2

    def test_equal_digit_sums_after_block_shift(self):
        # small n keep the constant far below the lower Lucas block
        d, k = 3, 8
        for n in range(d, 30):
            dec = binomial_decomposition(n, d)
            assert dec.constant < fibonacci(3 * k)
            assert digit_sum_z((n + lucas(6 * k + 2)) ** d) == digit_sum_z((n + lucas(6 * k + 4)) ** d)

    def test_dominance_threshold(self):
        # the constant term outweighs every Lucas coefficient almost immediately
        got = {d: dominance_threshold(d, 300) for d in range(1, 9)}
        assert got == {1: 2, 2: 0, 3: 1, 4: 0, 5: 1, 6: 0, 7: 1, 8: 0}
        for d, n0 in got.items():
            if n0:
                dec = binomial_decomposition(n0 - 1, d)
                assert max(dec.coefficients) >= dec.constant
