import itertools
import math
import random
from fractions import Fraction

import pytest

from mathgen.expressions import ContractViolation, parse
from mathgen.numeric import InvalidInputError
from mathgen.solvers import (
    ClockTime, LetterBag, LinearSystem2, SurfaceNumber, UnitQuantity,
    closest_to, compare_pair, convert_units, fit_sequence, kth_extreme,
    prob_level_set_swr, prob_sequence_swr, solve_linear_1d, solve_linear_2d,
    sort_numbers, time_between, time_shift,
)


def SN(text):
    return SurfaceNumber.of(text)


class TestLinear1d:
    def test_appendix_equation(self):
        x = solve_linear_1d(parse("2*(x - 10) + 3"), parse("17*x + 10"), "x")
        assert x == Fraction(-9, 5)

    def test_exam_equation(self):
        assert solve_linear_1d(parse("7*(x + 2)"), parse("7"), "x") == -1

    def test_trivial(self):
        assert solve_linear_1d(parse("x"), parse("5"), "x") == 5

    def test_degenerate(self):
        with pytest.raises(ContractViolation):
            solve_linear_1d(parse("x + 1"), parse("x + 1"), "x")


class TestLinear2d:
    def test_figure_system(self):
        system = LinearSystem2(-42, 27, 130, 4, -1167, 372, "r", "c")
        assert solve_linear_2d(system, "r") == 4
        assert solve_linear_2d(system, "c") == -37

    def test_exam_system(self):
        system = LinearSystem2(5, 2, 4, -3, 11, 18)
        assert solve_linear_2d(system, "x") == 3

    def test_zero(self):
        system = LinearSystem2(1, 1, 1, -1, 0, 0)
        assert solve_linear_2d(system, "x") == 0

    def test_substitutes_back(self):
        rng = random.Random(31)
        for _ in range(500):
            a, b, c, d = (rng.randint(-20, 20) for _ in range(4))
            if a * d - b * c == 0:
                continue
            e, f = rng.randint(-50, 50), rng.randint(-50, 50)
            system = LinearSystem2(a, b, c, d, e, f)
            sol = system.solve()
            assert a * sol["x"] + b * sol["y"] == e
            assert c * sol["x"] + d * sol["y"] == f

    def test_singular(self):
        with pytest.raises(ContractViolation):
            LinearSystem2(1, 2, 2, 4, 1, 2).solve()


class TestSequences:
    def test_appendix_sequence(self):
        spec = fit_sequence([2, 6, 12, 20])
        assert spec.nth_term_expression() == "n**2 + n"
        assert spec.next_term() == 30

    def test_exam_sequence(self):
        spec = fit_sequence([3, 9, 15, 21, 27])
        assert spec.nth_term_expression() == "6*n - 3"
        assert spec.next_term() == 33

    def test_constant(self):
        spec = fit_sequence([5, 5, 5])
        assert spec.nth_term_expression() == "5"
        assert spec.next_term() == 5

    def test_rational_coefficients(self):
        spec = fit_sequence([1, 3, 6, 10])  # triangular numbers
        assert spec.nth_term_expression() == "n**2/2 + n/2"
        assert spec.next_term() == 15

    def test_reproduces_terms_and_minimality(self):
        rng = random.Random(32)
        for _ in range(300):
            degree = rng.randint(0, 3)
            coeffs = [rng.randint(-9, 9) for _ in range(degree)] + \
                [rng.choice([-3, -2, -1, 1, 2, 3])]
            count = degree + rng.randint(2, 4)
            terms = []
            for n in range(1, count + 1):
                terms.append(sum(c * math.comb(n - 1, j)
                                 for j, c in enumerate(coeffs)))
            spec = fit_sequence(terms)
            for n, t in enumerate(terms, start=1):
                assert spec.term(n) == t
            assert spec.polynomial.degree_in("n") == degree


class TestComparison:
    def test_pair(self):
        assert compare_pair(SN("4/37"), SN("7/65")) == 1  # 4*65 > 7*37
        assert compare_pair(SN("5"), SN("5")) == 0
        assert compare_pair(SN("-555"), SN("-139/4")) == -1

    def test_sort(self):
        xs = [SN("-139/4"), SN("40.8"), SN("-555"), SN("607")]
        assert [s.surface for s in sort_numbers(xs)] == \
            ["-555", "-139/4", "40.8", "607"]
        assert sort_numbers([]) == []

    def test_sort_stability(self):
        a, b = SurfaceNumber("1", Fraction(1)), SurfaceNumber("1.0", Fraction(1))
        assert sort_numbers([a, b]) == [a, b]

    def test_closest(self):
        assert closest_to(Fraction(0), [SN("-2"), SN("3"), SN("5")]).surface == "-2"
        assert closest_to(Fraction(3), [SN("-2"), SN("3")]).surface == "3"
        assert closest_to(Fraction(1, 2), [SN("0"), SN("1")]).surface == "0"
        with pytest.raises(InvalidInputError):
            closest_to(Fraction(0), [])

    def test_kth(self):
        xs = [SN("3"), SN("1"), SN("2")]
        assert kth_extreme(xs, 2, biggest=True).surface == "2"
        assert kth_extreme(xs, 1, biggest=False).surface == "1"
        big = [SN("-139/4"), SN("40.8"), SN("-555"), SN("607")]
        assert kth_extreme(big, 2, biggest=False).surface == "-139/4"
        with pytest.raises(InvalidInputError):
            kth_extreme(xs, 4, biggest=True)

    def test_sort_is_permutation(self):
        rng = random.Random(33)
        for _ in range(200):
            xs = [SN(str(rng.randint(-99, 99))) for _ in range(rng.randint(0, 8))]
            out = sort_numbers(xs)
            assert sorted(s.surface for s in out) == sorted(s.surface for s in xs)
            for a, b in zip(out, out[1:]):
                assert compare_pair(a, b) <= 0


class TestMeasurement:
    def test_litres(self):
        q = UnitQuantity(Fraction(13, 8), "litres")
        assert convert_units(q, "millilitres").magnitude == 1625

    def test_metre(self):
        assert convert_units(UnitQuantity(1, "metres"), "centimetres").magnitude == 100

    def test_minutes(self):
        q = UnitQuantity(90, "minutes")
        assert convert_units(q, "hours").magnitude == Fraction(3, 2)

    def test_round_trip(self):
        rng = random.Random(34)
        from mathgen.solvers import UNIT_FAMILIES
        for family, table in UNIT_FAMILIES.items():
            units = list(table)
            for _ in range(50):
                a, b = rng.choice(units), rng.choice(units)
                mag = Fraction(rng.randint(1, 10 ** 6), rng.randint(1, 100))
                q = UnitQuantity(mag, a)
                assert convert_units(convert_units(q, b), a).magnitude == mag

    def test_cross_family(self):
        with pytest.raises(InvalidInputError):
            convert_units(UnitQuantity(1, "metres"), "grams")


class TestClock:
    def test_appendix_interval(self):
        t1, t2 = ClockTime.parse("8:05 PM"), ClockTime.parse("9:12 PM")
        assert time_between(t1, t2) == 67

    def test_same(self):
        t = ClockTime.parse("7:30 AM")
        assert time_between(t, t) == 0

    def test_meridiem_boundary(self):
        assert time_between(ClockTime.parse("11:50 AM"),
                            ClockTime.parse("12:10 PM")) == 20

    def test_rendering(self):
        assert str(ClockTime.from_minutes(0)) == "12:00 AM"
        assert str(ClockTime.from_minutes(12 * 60 + 5)) == "12:05 PM"
        assert str(time_shift(ClockTime.parse("2:50 PM"), 25)) == "3:15 PM"
        assert str(time_shift(ClockTime.parse("1:10 AM"), -30)) == "12:40 AM"


def enumerate_sequence_probability(bag: LetterBag, seq):
    """Oracle: exhaustive enumeration over distinguishable balls."""
    balls = [letter for letter, n in bag.counts for _ in range(n)]
    hits = total = 0
    for perm in itertools.permutations(balls, len(seq)):
        total += 1
        hits += perm == tuple(seq)
    return Fraction(hits, total)


class TestProbability:
    def test_figure_bag(self):
        bag = LetterBag.from_letters("qqqkkklkqkkk")
        assert prob_sequence_swr(bag, "qql") == Fraction(1, 110)

    def test_absent_letter(self):
        bag = LetterBag.of({"a": 2})
        assert prob_sequence_swr(bag, "ab") == 0
        assert prob_sequence_swr(bag, "aa") == 1

    def test_level_set_examples(self):
        bag = LetterBag.of({"q": 4, "k": 7, "l": 1})
        assert prob_level_set_swr(bag, {"q": 2, "k": 1}) == Fraction(21, 110)
        assert prob_level_set_swr(bag, {"q": 4, "k": 7, "l": 1}) == 1
        assert prob_level_set_swr(bag, {"l": 2}) == 0

    def test_against_enumeration(self):
        bags = [LetterBag.of({"a": 2, "b": 1}),
                LetterBag.of({"a": 3, "b": 2, "c": 1}),
                LetterBag.of({"x": 4, "y": 2})]
        for bag in bags:
            letters = [letter for letter, _ in bag.counts]
            for k in (1, 2, 3):
                for seq in itertools.product(letters, repeat=k):
                    assert prob_sequence_swr(bag, seq) == \
                        enumerate_sequence_probability(bag, seq)

    def test_level_set_equals_sum_over_orderings(self):
        bag = LetterBag.of({"a": 3, "b": 2, "c": 1})
        for want in ({"a": 2, "b": 1}, {"a": 1, "c": 1}, {"b": 2, "c": 1}):
            k = sum(want.values())
            total = Fraction(0)
            for seq in itertools.product("abc", repeat=k):
                if all(seq.count(ch) == want.get(ch, 0) for ch in "abc"):
                    total += prob_sequence_swr(bag, seq)
            assert prob_level_set_swr(bag, want) == total

    def test_sequences_sum_to_one(self):
        bag = LetterBag.of({"a": 2, "b": 2, "c": 1})
        for k in (1, 2, 3):
            total = Fraction(0)
            for seq in itertools.product("abc", repeat=k):
                total += prob_sequence_swr(bag, seq)
            assert total == 1
