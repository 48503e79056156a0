"""Tests for the correlation family: worked examples, brute-force oracles,
and the invariance properties every kind must satisfy."""

from itertools import permutations

import numpy as np
import pytest

from cesreg.correlation import CC_KINDS, corr, midranks, zero_corr_evaluator
from cesreg.exceptions import DegenerateInputError, InvalidInputError

from oracles import gdcc_loops, gini_loops, kendall_pairs, midranks_loops, pearson_fsum

RANK_KINDS = ("spearman", "kendall", "gini", "gdcc")


def random_pair(rng, n, ties=False):
    a = rng.normal(0, 2, n)
    b = rng.normal(1, 3, n)
    if ties:
        a = np.round(a, 1)
        b = np.round(b, 1)
    return a, b


class TestMidranks:
    def test_examples(self):
        np.testing.assert_array_equal(midranks([10, 20, 30]), [1, 2, 3])
        np.testing.assert_array_equal(midranks([5, 5, 9]), [1.5, 1.5, 3])
        np.testing.assert_array_equal(midranks([3, 1, 3, 3]), [3, 1, 3, 3])

    def test_against_loop_oracle(self):
        rng = np.random.default_rng(21)
        for _ in range(50):
            v = rng.integers(-3, 4, rng.integers(1, 12)).astype(float)
            np.testing.assert_array_equal(midranks(v), midranks_loops(list(v)))

    def test_rank_sum_preserved(self):
        rng = np.random.default_rng(22)
        for _ in range(50):
            n = int(rng.integers(1, 40))
            v = np.round(rng.normal(0, 1, n), 1)
            assert midranks(v).sum() == n * (n + 1) / 2

    def test_permutation_when_tie_free(self):
        rng = np.random.default_rng(23)
        v = rng.permutation(20).astype(float)
        assert sorted(midranks(v)) == list(range(1, 21))

    def test_rejects_non_finite(self):
        with pytest.raises(InvalidInputError):
            midranks([1.0, np.nan, 2.0])


class TestWorkedExamples:
    def test_pearson_exact_line(self):
        assert corr("pearson", [1, 2, 3], [2, 4, 6]) == 1.0

    def test_kendall_one_discordant(self):
        """2 concordant, 1 discordant pair out of 3."""
        assert corr("kendall", [1, 2, 3], [1, 3, 2]) == kendall_pairs([1, 2, 3], [1, 3, 2])
        assert corr("kendall", [1, 2, 3], [1, 3, 2]) == pytest.approx(1 / 3)

    def test_gini_perfect_reversal(self):
        assert corr("gini", [1, 2, 3], [3, 2, 1]) == -1.0

    def test_gdcc_zero_case(self):
        """Hand enumeration: d=(1,0,0), reversed d'=(1,1,0)."""
        assert corr("gdcc", [1, 2, 3], [2, 1, 3]) == 0.0


class TestPerKindProperties:
    @pytest.mark.parametrize("kind", CC_KINDS)
    def test_perfect_dependence(self, kind):
        rng = np.random.default_rng(31)
        for _ in range(25):
            a = rng.permutation(rng.integers(3, 15)).astype(float) + rng.normal(0, 0.01)
            assert corr(kind, a, a) == pytest.approx(1.0, abs=1e-12)
            assert corr(kind, a, -a) == pytest.approx(-1.0, abs=1e-12)

    @pytest.mark.parametrize("kind", CC_KINDS)
    def test_range(self, kind):
        rng = np.random.default_rng(32)
        for trial in range(120):
            a, b = random_pair(rng, int(rng.integers(3, 30)), ties=trial % 2 == 0)
            try:
                r = corr(kind, a, b)
            except DegenerateInputError:
                continue
            assert -1.0 <= r <= 1.0

    @pytest.mark.parametrize("kind", RANK_KINDS)
    def test_monotone_invariance(self, kind):
        """Rank kinds are untouched by strictly increasing transforms."""
        rng = np.random.default_rng(33)
        for trial in range(40):
            a, b = random_pair(rng, int(rng.integers(3, 20)), ties=trial % 3 == 0)
            base = corr(kind, a, b)
            assert corr(kind, np.exp(a / 4), b) == base
            assert corr(kind, a, b**3 + 2 * b) == base
            assert corr(kind, 5 * a + 1, np.exp(b / 4)) == base

    @pytest.mark.parametrize("kind", CC_KINDS)
    def test_location_scale_invariance(self, kind):
        rng = np.random.default_rng(34)
        for _ in range(40):
            a, b = random_pair(rng, int(rng.integers(3, 20)))
            base = corr(kind, a, b)
            moved = corr(kind, 2.5 * a - 3.0, 0.7 * b + 11.0)
            assert moved == pytest.approx(base, abs=1e-12)

    @pytest.mark.parametrize("kind", ["pearson", "spearman", "kendall", "gini"])
    def test_sign_flip_exact(self, kind):
        rng = np.random.default_rng(35)
        for _ in range(40):
            a, b = random_pair(rng, int(rng.integers(3, 20)))
            assert corr(kind, a, -b) == -corr(kind, a, b)

    @pytest.mark.parametrize("kind", ["pearson", "spearman", "kendall", "gini", "mad", "absolute"])
    def test_symmetric_in_arguments(self, kind):
        rng = np.random.default_rng(36)
        for _ in range(40):
            a, b = random_pair(rng, int(rng.integers(3, 20)))
            assert corr(kind, a, b) == pytest.approx(corr(kind, b, a), abs=1e-14)


class TestAgainstOracles:
    def test_pearson_compensated_sum(self):
        rng = np.random.default_rng(41)
        for _ in range(60):
            n = int(rng.integers(3, 60))
            a = rng.normal(0, 1, n) + rng.uniform(-1e4, 1e4)  # abusive offsets
            b = rng.normal(0, 3, n) + rng.uniform(-1e4, 1e4)
            assert corr("pearson", a, b) == pytest.approx(
                pearson_fsum(list(a), list(b)), abs=1e-12
            )

    def test_kendall_exhaustive_small_n(self):
        """Exact pair-count equality over every permutation up to n=6."""
        for n in range(2, 7):
            ident = list(range(1, n + 1))
            for perm in permutations(ident):
                assert corr("kendall", ident, perm) == kendall_pairs(ident, list(perm))

    def test_kendall_randomized_with_ties(self):
        rng = np.random.default_rng(42)
        for _ in range(80):
            n = int(rng.integers(3, 9))
            a = rng.integers(0, 4, n).astype(float)
            b = rng.integers(0, 4, n).astype(float)
            try:
                r = corr("kendall", a, b)
            except DegenerateInputError:
                continue
            assert r == kendall_pairs(list(a), list(b))

    def test_gdcc_exhaustive_small_n(self):
        for n in (2, 3, 4, 5):
            ident = list(range(1, n + 1))
            for perm in permutations(ident):
                assert corr("gdcc", ident, perm) == gdcc_loops(ident, list(perm))

    def test_gdcc_randomized_with_ties(self):
        rng = np.random.default_rng(43)
        for _ in range(60):
            n = int(rng.integers(2, 12))
            a = rng.integers(0, 5, n).astype(float)
            b = rng.integers(0, 5, n).astype(float)
            assert corr("gdcc", a, b) == gdcc_loops(list(a), list(b))

    def test_gini_against_loops(self):
        rng = np.random.default_rng(44)
        for trial in range(60):
            n = int(rng.integers(2, 15))
            a, b = random_pair(rng, n, ties=trial % 2 == 0)
            try:
                r = corr("gini", a, b)
            except DegenerateInputError:
                continue
            assert r == pytest.approx(gini_loops(list(a), list(b)), abs=1e-12)

    def test_gdcc_symmetric_on_tie_free_input(self):
        """Observed behavior: exchanging tie-free arguments leaves gdcc unchanged."""
        for n in (2, 3, 4, 5):
            ident = list(range(1, n + 1))
            for perm in permutations(ident):
                assert corr("gdcc", ident, perm) == corr("gdcc", perm, ident)


class TestDegenerateAndInvalid:
    @pytest.mark.parametrize("kind", ["pearson", "spearman", "kendall", "gini", "absolute", "mad"])
    def test_constant_input_raises(self, kind):
        with pytest.raises(DegenerateInputError):
            corr(kind, [1.0, 1.0, 1.0, 1.0], [1.0, 2.0, 3.0, 4.0])

    def test_gdcc_total_on_constant(self):
        # ties broken by first appearance; no denominator can vanish
        assert corr("gdcc", [1.0, 1.0, 1.0], [1.0, 2.0, 3.0]) == 1.0

    def test_zero_mad_without_constant(self):
        with pytest.raises(DegenerateInputError):
            corr("mad", [0.0, 0.0, 0.0, 1.0, 2.0], [1.0, 2.0, 3.0, 4.0, 5.0])

    def test_unknown_kind(self):
        with pytest.raises(InvalidInputError):
            corr("tau", [1, 2], [3, 4])

    def test_length_mismatch(self):
        with pytest.raises(InvalidInputError):
            corr("pearson", [1, 2, 3], [1, 2])

    @pytest.mark.parametrize("kind,min_n", [("pearson", 2), ("absolute", 3), ("mad", 3)])
    def test_min_length(self, kind, min_n):
        with pytest.raises(InvalidInputError):
            corr(kind, [1.0] * (min_n - 1), [2.0] * (min_n - 1))

    def test_non_finite(self):
        with pytest.raises(InvalidInputError):
            corr("pearson", [1.0, np.inf, 3.0], [1.0, 2.0, 3.0])


class TestZeroCorrEvaluator:
    @pytest.mark.parametrize("kind", CC_KINDS)
    def test_matches_plain_corr(self, kind):
        rng = np.random.default_rng(51)
        for trial in range(40):
            n = int(rng.integers(3, 25))
            base = np.sort(rng.normal(0, 2, n))
            resp = np.sort(rng.normal(0, 3, n))
            if trial % 3 == 0:
                base = np.sort(np.round(base, 1))
                resp = np.sort(np.round(resp, 1))
            try:
                f = zero_corr_evaluator(kind, base)(resp)
            except DegenerateInputError:
                continue
            for s in rng.uniform(-3, 3, 4):
                t = resp - s * base
                if t.max() == t.min():
                    continue
                try:
                    expected = corr(kind, base, t)
                except DegenerateInputError:
                    continue
                assert f(float(s)) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("kind", CC_KINDS)
    def test_constant_difference_scores_zero(self, kind):
        base = np.array([1.0, 2.0, 4.0, 7.0])
        f = zero_corr_evaluator(kind, base)(2.0 * base + 3.0)
        assert f(2.0) == 0.0
