import math

import pytest

from mathgen.numeric import InvalidInputError
from mathgen.sampling import (
    AlphaPolicy, DEFAULT_POLICY, EntropyBudget, RandomStream, allocate,
    draw_alpha, draw_from_set, sample_integer,
)


class TestRandomStream:
    def test_deterministic_by_seed_and_path(self):
        a = RandomStream(7).child("module").child(3)
        b = RandomStream(7).child("module").child(3)
        assert [a.bits64() for _ in range(20)] == [b.bits64() for _ in range(20)]

    def test_different_paths_differ(self):
        a = RandomStream(7).child("x")
        b = RandomStream(7).child("y")
        assert [a.bits64() for _ in range(4)] != [b.bits64() for _ in range(4)]

    def test_randbelow_unbiased_support(self):
        s = RandomStream(1)
        seen = {s.randbelow(5) for _ in range(500)}
        assert seen == {0, 1, 2, 3, 4}
        assert s.randbelow(1) == 0
        big = s.randbelow(10 ** 30)
        assert 0 <= big < 10 ** 30

    def test_child_streams_uniform(self):
        # chi-square uniformity over 16 bins, pooled across child streams
        bins = [0] * 16
        n = 0
        for label in range(200):
            child = RandomStream(42).child(label)
            for _ in range(50):
                bins[child.randbelow(16)] += 1
                n += 1
        expected = n / 16
        chi2 = sum((b - expected) ** 2 / expected for b in bins)
        # df=15; p > 0.001 means chi2 below 37.70
        assert chi2 < 37.70

    def test_shuffle_is_permutation(self):
        s = RandomStream(5)
        items = list(range(30))
        out = s.shuffle(list(items))
        assert sorted(out) == items


class TestEntropyBudget:
    def test_forced_draw_adds_nothing(self):
        s, b = RandomStream(0), EntropyBudget(0.0)
        assert draw_from_set(s, b, 1) == 0
        assert b.accumulated == 0.0
        assert b.satisfied

    def test_log10_additivity(self):
        s, b = RandomStream(0), EntropyBudget(5.0)
        draw_from_set(s, b, 100)
        draw_from_set(s, b, 1000)
        assert math.isclose(b.accumulated, 5.0)
        assert b.satisfied

    def test_eight_tens_cover_test_alpha(self):
        s, b = RandomStream(0), EntropyBudget(8.0)
        for _ in range(8):
            draw_from_set(s, b, 10)
        assert b.satisfied
        b2 = EntropyBudget(8.0)
        for _ in range(7):
            draw_from_set(s, b2, 10)
        assert not b2.satisfied

    def test_records_are_replayable(self):
        s, b = RandomStream(3), EntropyBudget(4.0)
        draw_from_set(s, b, 50, label="a")
        draw_from_set(s, b, 300, label="b")
        total = math.fsum(r.log10_size for r in b.records)
        assert math.isclose(total, b.accumulated)


class TestAllocate:
    def test_even_split(self):
        children = allocate(EntropyBudget(8.0), [1, 1])
        assert [c.target_alpha for c in children] == [4.0, 4.0]

    def test_weighted_split(self):
        children = allocate(EntropyBudget(8.0), [3, 1])
        assert [c.target_alpha for c in children] == [6.0, 2.0]

    def test_degenerate(self):
        children = allocate(EntropyBudget(0.0), [1, 1, 1])
        assert all(c.target_alpha == 0 and c.satisfied for c in children)

    def test_children_report_into_parent(self):
        s = RandomStream(0)
        parent = EntropyBudget(4.0)
        left, right = allocate(parent, [1, 1])
        draw_from_set(s, left, 100)
        draw_from_set(s, right, 100)
        assert left.satisfied and right.satisfied
        assert math.isclose(math.fsum(r.log10_size for r in parent.records), 4.0)


class TestSampleInteger:
    def test_first_positive(self):
        s, b = RandomStream(0), EntropyBudget(1.0)
        values = {sample_integer(s, b, first_positive=10) for _ in range(200)}
        assert values == set(range(1, 11))
        assert math.isclose(b.records[0].log10_size, 1.0)

    def test_symmetric_excludes_zero(self):
        s, b = RandomStream(0), EntropyBudget(0.0)
        values = {sample_integer(s, b, symmetric_width=3) for _ in range(300)}
        assert values == {-3, -2, -1, 1, 2, 3}
        with pytest.raises(InvalidInputError):
            sample_integer(s, b, symmetric_width=0)

    def test_coprime(self):
        s, b = RandomStream(0), EntropyBudget(0.0)
        values = {sample_integer(s, b, coprime_to=(6, 1, 12)) for _ in range(300)}
        assert values == {1, 5, 7, 11}
        assert math.isclose(b.records[0].log10_size, math.log10(4))


class TestAlphaPolicy:
    def test_interpolation_exact(self):
        assert draw_alpha(DEFAULT_POLICY, "interpolate", RandomStream(0)) == 8.0

    def test_train_in_range(self):
        s = RandomStream(9)
        draws = [draw_alpha(DEFAULT_POLICY, "train", s) for _ in range(100_000)]
        assert all(3.0 <= a <= 10.0 for a in draws)
        mean = sum(draws) / len(draws)
        assert abs(mean - 6.5) < 0.02

    def test_extrapolate_override(self):
        policy = AlphaPolicy(extrapolate_overrides=(("x/y", 6.0),))
        assert draw_alpha(policy, "extrapolate", RandomStream(0), "x/y") == 6.0
        assert draw_alpha(policy, "extrapolate", RandomStream(0), "other") == 8.0
