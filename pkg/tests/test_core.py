"""Exact arithmetic, decision encoding, and shared mixture formula."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from guesswho.core import (
    GUESS,
    BoardState,
    Guess,
    InvalidMixtureError,
    Split,
    Split3,
    decision_is_legal,
    decision_sort_key,
    decode_decision,
    encode_decision,
    format_rational,
    mixture_value,
    parse_rational,
    require_legal_decision,
    split_lower,
    split_upper,
    StrategyFaultError,
)


class TestRationalWire:
    def test_format_lowest_terms(self):
        assert format_rational(Fraction(9, 16)) == "9/16"
        assert format_rational(Fraction(6, 8)) == "3/4"
        assert format_rational(Fraction(0)) == "0"
        assert format_rational(Fraction(1)) == "1"
        assert format_rational(Fraction(5, 5)) == "1"

    def test_parse_valid(self):
        assert parse_rational("2/5") == Fraction(2, 5)
        assert parse_rational("1") == 1
        assert parse_rational("0") == 0
        assert parse_rational("-3/7") == Fraction(-3, 7)

    @pytest.mark.parametrize("bad", ["0.5", "1/0", "abc", "1/-2", "", "1 / 2", "2/5/7"])
    def test_parse_rejects(self, bad):
        with pytest.raises(ValueError):
            parse_rational(bad)

    @given(st.fractions())
    def test_round_trip(self, q):
        assert parse_rational(format_rational(q)) == q


class TestDecisions:
    def test_encoding_round_trip(self):
        for decision in (GUESS, Split(3), Split3(1, 2, 2), Split3(0, 1, 1)):
            assert decode_decision(encode_decision(decision)) == decision
        assert encode_decision(GUESS) == 0
        assert encode_decision(Split(7)) == 7
        assert encode_decision(Split3(1, 2, 2)) == [1, 2, 2]

    def test_decode_rejects(self):
        for bad in (-1, [1, 2], [1, 2, 3, 4], "x", True, None):
            with pytest.raises(ValueError):
                decode_decision(bad)

    def test_guess_always_legal(self):
        assert decision_is_legal(GUESS, 1, "bi")
        assert decision_is_legal(GUESS, 24, "tri")

    def test_split_domain(self):
        assert decision_is_legal(Split(1), 2, "bi")
        assert decision_is_legal(Split(12), 24, "bi")
        assert not decision_is_legal(Split(13), 24, "bi")  # beyond half
        assert not decision_is_legal(Split(0), 4, "bi")
        assert not decision_is_legal(Split(1), 1, "bi")
        assert decision_is_legal(Split(2), 5, "tri")  # plain question still playable

    def test_split3_domain(self):
        assert decision_is_legal(Split3(0, 1, 1), 2, "tri")
        assert decision_is_legal(Split3(1, 2, 2), 5, "tri")
        assert not decision_is_legal(Split3(2, 1, 2), 5, "tri")  # not sorted
        assert not decision_is_legal(Split3(0, 0, 5), 5, "tri")  # no-op
        assert not decision_is_legal(Split3(1, 2, 2), 6, "tri")  # wrong total
        assert not decision_is_legal(Split3(1, 2, 2), 5, "bi")   # needs tri mode

    def test_require_legal_raises_strategy_fault(self):
        with pytest.raises(StrategyFaultError):
            require_legal_decision(Split(5), 4, "bi")

    def test_sort_key_orders_guess_first(self):
        decisions = [Split3(1, 1, 1), Split(2), GUESS, Split(1)]
        ordered = sorted(decisions, key=decision_sort_key)
        assert ordered == [GUESS, Split(1), Split(2), Split3(1, 1, 1)]

    def test_parts(self):
        assert Split(3).parts(10) == (3, 7)
        assert Split3(1, 2, 2).parts(5) == (1, 2, 2)
        with pytest.raises(ValueError):
            Split3(1, 2, 2).parts(6)
        with pytest.raises(ValueError):
            GUESS.parts(3)


class TestBoardState:
    def test_valid(self):
        s = BoardState(4, 7)
        assert (s.n, s.m) == (4, 7)

    @pytest.mark.parametrize("n,m", [(0, 3), (3, 0), (-1, 1)])
    def test_invalid(self, n, m):
        with pytest.raises(ValueError):
            BoardState(n, m)


class TestMixture:
    def lookup(self, m, a):
        # stand-in value function: depends on both arguments
        return Fraction(1, a + m)

    def test_weighted_average(self):
        # parts 1 and 4 against m=2: (1/5)(1/3) + (4/5)(1/6) = 1/5
        assert mixture_value(self.lookup, 2, (1, 4)) == Fraction(1, 5)

    def test_zero_parts_skipped(self):
        full = mixture_value(self.lookup, 3, (2, 5))
        assert mixture_value(self.lookup, 3, (0, 2, 5, 0)) == full

    def test_errors(self):
        with pytest.raises(InvalidMixtureError):
            mixture_value(self.lookup, 2, ())
        with pytest.raises(InvalidMixtureError):
            mixture_value(self.lookup, 2, (0, 0))
        with pytest.raises(InvalidMixtureError):
            mixture_value(self.lookup, 2, (3, -1))

    @given(
        st.lists(st.integers(min_value=0, max_value=30), min_size=1, max_size=6).filter(sum),
        st.integers(min_value=1, max_value=20),
        st.randoms(use_true_random=False),
    )
    def test_permutation_invariance(self, parts, m, rng):
        shuffled = list(parts)
        rng.shuffle(shuffled)
        assert mixture_value(self.lookup, m, parts) == mixture_value(
            self.lookup, m, shuffled
        )


class TestBalancedSplit:
    def test_small_table(self):
        # n = 2 is special; 3..10 follow the floor formula
        assert split_lower(2) == 1
        assert [split_lower(n) for n in range(3, 11)] == [1, 2, 2, 2, 3, 4, 4, 4]

    def test_complement(self):
        for n in range(2, 200):
            assert split_lower(n) + split_upper(n) == n

    def test_rejects_small(self):
        with pytest.raises(ValueError):
            split_lower(1)

    @given(st.integers(min_value=3, max_value=10**6))
    def test_floor_formulas_match_for_n_ge_3(self, n):
        assert split_lower(n) == n // 4 + (n + 1) // 4
        assert split_upper(n) == (n + 2) // 4 + (n + 3) // 4
