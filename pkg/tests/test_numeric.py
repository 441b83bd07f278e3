import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mathgen import numeric as nm
from mathgen.numeric import (
    BaseNumeral, ExactDecimal, InvalidInputError, base_convert, coprime_count,
    div_remainder, gcd, is_factor, is_prime, lcm, nearest_integer_root,
    place_value, prime_factor_list, prime_factorize, round_to_place,
)


def trial_division_factorize(n):
    """Independent oracle: plain trial division."""
    out = []
    d = 2
    while d * d <= n:
        while n % d == 0:
            out.append(d)
            n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


class TestGcdLcm:
    def test_small(self):
        assert gcd(12, 18) == 6
        assert gcd(0, 7) == 7
        # Euclid by hand: 252 = 198 + 54; 198 = 3*54 + 36; 54 = 36 + 18; 36 = 2*18
        assert gcd(252, 198) == 18

    def test_lcm(self):
        assert lcm(4, 6) == 12
        assert lcm(1, 17) == 17
        assert lcm(1, -17) == 17
        assert lcm(21, 6) == 42  # |21*6| / gcd = 126 / 3

    def test_gcd_lcm_identity(self):
        rng = random.Random(0)
        for _ in range(10_000):
            a = rng.randint(1, 10 ** 6)
            b = rng.randint(1, 10 ** 6)
            assert gcd(a, b) * lcm(a, b) == a * b


class TestPrimes:
    def test_known_values(self):
        assert is_prime(2)
        assert not is_prime(235232673)
        assert is_prime(317453)

    def test_factorize_paper_value(self):
        assert prime_factorize(235232673) == [(3, 1), (13, 1), (19, 1), (317453, 1)]

    def test_factorize_against_trial_division(self):
        assert prime_factor_list(64372) == trial_division_factorize(64372)
        assert prime_factorize(2) == [(2, 1)]
        rng = random.Random(1)
        for _ in range(300):
            n = rng.randint(2, 10 ** 7)
            assert prime_factor_list(n) == trial_division_factorize(n)

    def test_factorize_reconstructs(self):
        rng = random.Random(2)
        for _ in range(200):
            n = rng.randint(2, 10 ** 12)
            product = 1
            for p, k in prime_factorize(n):
                assert is_prime(p)
                product *= p ** k
            assert product == n

    def test_is_prime_against_trial_division(self):
        for n in range(-3, 2000):
            assert is_prime(n) == (n > 1 and trial_division_factorize(n) == [n])

    def test_bad_input(self):
        with pytest.raises(InvalidInputError):
            prime_factorize(1)


class TestDivision:
    def test_examples(self):
        assert div_remainder(17, 5) == (3, 2)
        assert div_remainder(0, 9) == (0, 0)
        # long division: 611 * 3685 = 2251535, remainder 255
        assert div_remainder(2251790, 611) == (3685, 255)

    def test_contract(self):
        rng = random.Random(3)
        for _ in range(1000):
            a = rng.randint(-10 ** 9, 10 ** 9)
            b = rng.randint(1, 10 ** 6)
            q, r = div_remainder(a, b)
            assert a == q * b + r
            assert 0 <= r < b
        with pytest.raises(InvalidInputError):
            div_remainder(5, 0)

    def test_is_factor(self):
        assert is_factor(15, 60)
        assert not is_factor(2, 3)
        assert is_factor(2, 2)
        with pytest.raises(InvalidInputError):
            is_factor(0, 4)


class TestRoots:
    def test_examples(self):
        assert nearest_integer_root(64, 2) == 8
        assert nearest_integer_root(30, 3) == 3  # |27-30| < |64-30|
        assert nearest_integer_root(2, 2) == 1   # |1-2| < |4-2|

    def test_minimizes(self):
        rng = random.Random(4)
        for _ in range(500):
            n = rng.randint(0, 10 ** 9)
            k = rng.randint(2, 5)
            m = nearest_integer_root(n, k)
            best = min(range(max(0, m - 2), m + 3), key=lambda t: abs(t ** k - n))
            assert abs(m ** k - n) == abs(best ** k - n)


class TestBaseNumerals:
    def test_examples(self):
        assert str(base_convert(BaseNumeral.parse("1011001", 2), 16)) == "59"
        assert str(base_convert(BaseNumeral.parse("0", 7), 3)) == "0"
        assert str(base_convert(BaseNumeral.parse("ff", 16), 10)) == "255"

    def test_positional_value_oracle(self):
        rng = random.Random(5)
        for _ in range(1000):
            value = rng.randint(-10 ** 9, 10 ** 9)
            radix = rng.randint(2, 16)
            numeral = BaseNumeral.from_int(value, radix)
            assert numeral.to_int() == value
            assert int(str(numeral), radix) == value  # stdlib as oracle

    def test_round_trip(self):
        rng = random.Random(6)
        for _ in range(1000):
            value = rng.randint(0, 10 ** 8)
            r1 = rng.randint(2, 16)
            r2 = rng.randint(2, 16)
            x = BaseNumeral.from_int(value, r1)
            assert base_convert(base_convert(x, r2), r1) == x

    def test_validation(self):
        with pytest.raises(InvalidInputError):
            BaseNumeral.parse("19", 8)
        with pytest.raises(InvalidInputError):
            BaseNumeral.parse("007", 8)


class TestExactDecimal:
    def test_parse_and_render(self):
        d = ExactDecimal.from_string("-841469015.544")
        assert (d.unscaled, d.scale) == (-841469015544, 3)
        assert str(d) == "-841469015.544"
        assert str(ExactDecimal.from_string("411127")) == "411127"
        assert str(ExactDecimal(2500, 3)) == "2.5"  # canonicalized
        assert str(ExactDecimal(0, 5)) == "0"

    def test_figure_sum(self):
        a = ExactDecimal.from_string("-841880142.544")
        b = ExactDecimal.from_string("411127")
        assert str(a + b) == "-841469015.544"

    @given(st.integers(-10 ** 12, 10 ** 12), st.integers(0, 6),
           st.integers(-10 ** 12, 10 ** 12), st.integers(0, 6))
    def test_addition_matches_rationals(self, u1, s1, u2, s2):
        a, b = ExactDecimal(u1, s1), ExactDecimal(u2, s2)
        assert (a + b).to_fraction() == a.to_fraction() + b.to_fraction()
        assert (a * b).to_fraction() == a.to_fraction() * b.to_fraction()

    def test_rational_ops_exact(self):
        rng = random.Random(7)
        for _ in range(2000):
            a = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
            b = Fraction(rng.randint(-99, 99), rng.randint(1, 99))
            assert (a + b) - b == a
            if b != 0:
                assert (a * b) / b == a


class TestPlacesAndRounding:
    def test_place_value(self):
        assert place_value(ExactDecimal(3585792), nm.PLACE_BY_NAME["tens"]) == 9
        assert place_value(ExactDecimal(7), nm.PLACE_BY_NAME["units"]) == 7
        # digit extraction: 432.1058 -> tenths 1, hundredths 0, thousandths 5
        d = ExactDecimal.from_string("432.1058")
        assert place_value(d, nm.PLACE_BY_NAME["thousandths"]) == 5
        assert place_value(d, nm.PLACE_BY_NAME["ten thousandths"]) == 8
        assert place_value(d, nm.PLACE_BY_NAME["millions"]) == 0

    def test_round_examples(self):
        assert str(round_to_place(ExactDecimal.from_string("432.1058"), 3)) == "432.106"
        assert str(round_to_place(ExactDecimal.from_string("2.5"), 0)) == "3"
        assert str(round_to_place(ExactDecimal.from_string("-0.0004"), 3)) == "0"

    def test_half_away_from_zero(self):
        assert str(round_to_place(ExactDecimal.from_string("-2.5"), 0)) == "-3"
        assert str(round_to_place(ExactDecimal.from_string("-2.4"), 0)) == "-2"
        assert str(round_to_place(ExactDecimal(15), -1)) == "20"
        assert str(round_to_place(ExactDecimal(-15), -1)) == "-20"
        assert str(round_to_place(ExactDecimal(44999), -3)) == "45000"

    @given(st.integers(-10 ** 10, 10 ** 10), st.integers(0, 6),
           st.integers(-3, 5))
    def test_idempotent(self, unscaled, scale, place):
        x = ExactDecimal(unscaled, scale)
        once = round_to_place(x, place)
        assert round_to_place(once, place) == once


class TestCoprimeCount:
    def test_against_enumeration(self):
        import math
        rng = random.Random(8)
        for _ in range(200):
            lo = rng.randint(-50, 50)
            hi = lo + rng.randint(0, 100)
            m = rng.randint(1, 300)
            expected = sum(1 for k in range(lo, hi + 1) if math.gcd(k, m) == 1)
            assert coprime_count(lo, hi, m) == expected
