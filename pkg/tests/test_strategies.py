"""Fixed-strategy evaluation, best responses, and seeded match play."""

from fractions import Fraction

import pytest

from guesswho.core import GUESS, BoardState, Split, Split3, StrategyFaultError
from guesswho.strategies import (
    always_guess,
    always_split_one,
    best_response,
    closed_form_strategy,
    evaluate_pair,
    simulate_match,
    table_strategy,
    ternary_candidate_strategy,
    verify_equilibrium,
)


def timid(mode, n, m):
    # asks the narrowest question it can, guesses once cornered
    if n < 2:
        return GUESS
    if mode == "tri" and n >= 3:
        return Split3(0, 1, 2) if n == 3 else Split3(1, 1, n - 2)
    return Split(1)


def halving(mode, n, m):
    if n < 2:
        return GUESS
    return Split(n // 2)


HANDWRITTEN = (always_guess, always_split_one, closed_form_strategy, timid, halving)


class TestEvaluatePair:
    def test_optimal_self_play_matches_game_value(self, bi24):
        opt = table_strategy(bi24)
        assert evaluate_pair(opt, opt, (24, 24), "bi") == Fraction(5, 9)
        assert evaluate_pair(opt, opt, (4, 4), "bi") == Fraction(9, 16)

    def test_closed_form_self_play(self):
        v = evaluate_pair(closed_form_strategy, closed_form_strategy, (4, 4), "bi")
        assert v == Fraction(9, 16)

    def test_weak_opening_loses_ground(self):
        v = evaluate_pair(always_split_one, closed_form_strategy, (4, 4), "bi")
        assert v == Fraction(5, 16)

    def test_accepts_board_state(self, bi24):
        opt = table_strategy(bi24)
        assert evaluate_pair(opt, opt, BoardState(4, 4), "bi") == Fraction(9, 16)

    def test_illegal_decision_names_the_state(self):
        def bad(mode, n, m):
            return Split(n)

        with pytest.raises(StrategyFaultError, match=r"\(3, 3\)"):
            evaluate_pair(bad, always_guess, (3, 3), "bi")

    def test_mode_mismatch_is_a_fault(self, bi24):
        with pytest.raises(StrategyFaultError):
            evaluate_pair(ternary_candidate_strategy, always_guess, (5, 5), "bi")


class TestBestResponse:
    def test_punishes_always_guess(self):
        table = best_response(always_guess, 6, "bi")
        assert table.value(2, 5) == Fraction(4, 5)
        base = evaluate_pair(always_guess, always_guess, (2, 5), "bi")
        assert base == Fraction(1, 2)

    def test_dominates_fixed_play_everywhere(self):
        # the responder can mimic any strategy, so its table bounds them all
        for fixed in HANDWRITTEN:
            response = best_response(fixed, 8, "bi")
            for challenger in HANDWRITTEN:
                for n in range(1, 9):
                    for m in range(1, 9):
                        played = evaluate_pair(challenger, fixed, (n, m), "bi")
                        assert played <= response.value(n, m)

    def test_cannot_beat_optimal_play(self, bi24):
        opt = table_strategy(bi24)
        response = best_response(opt, 12, "bi")
        for n in range(1, 13):
            for m in range(1, 13):
                assert response.value(n, m) == bi24.value(n, m)

    def test_optimal_set_includes_table_moves(self, bi24):
        opt = table_strategy(bi24)
        response = best_response(opt, 10, "bi")
        for n in range(1, 11):
            for m in range(1, 11):
                assert set(bi24.optimal(n, m)) <= set(response.optimal(n, m))

    def test_rejects_empty_domain(self):
        with pytest.raises(ValueError):
            best_response(always_guess, 0, "bi")


class TestEquilibrium:
    def test_closed_form_is_unexploitable(self, bi24):
        report = verify_equilibrium(closed_form_strategy, 12, "bi", table=bi24)
        assert report.failures == []

    def test_table_strategy_is_unexploitable_in_tri(self, tri24):
        report = verify_equilibrium(table_strategy(tri24), 12, "tri", table=tri24)
        assert report.failures == []

    def test_ternary_candidate_is_exploitable(self, tri24):
        # the three-way policy misplays mid-band cells such as (11, 5); an
        # opponent one move earlier can steer the game into them, so the
        # leak shows up at the states feeding that band
        report = verify_equilibrium(ternary_candidate_strategy, 12, "tri", table=tri24)
        leaked = {(f["n"], f["m"]) for f in report.failures}
        assert leaked == {(11, 11), (11, 12), (12, 11), (12, 12)}


class TestSimulateMatch:
    def test_same_seed_same_report(self, bi24):
        opt = table_strategy(bi24)
        a = simulate_match(opt, opt, (6, 6), "bi", trials=400, seed=7)
        b = simulate_match(opt, opt, (6, 6), "bi", trials=400, seed=7)
        assert a == b

    def test_seed_actually_matters(self, bi24):
        opt = table_strategy(bi24)
        counts = {
            simulate_match(opt, opt, (24, 24), "bi", trials=400, seed=s).wins_a
            for s in range(5)
        }
        assert len(counts) > 1

    def test_certain_win(self, bi24):
        opt = table_strategy(bi24)
        report = simulate_match(opt, opt, (1, 9), "bi", trials=50, seed=3)
        assert report.wins_a == report.trials
        assert report.exact_value == 1

    def test_empirical_rate_tracks_exact_value(self, bi24):
        opt = table_strategy(bi24)
        report = simulate_match(opt, opt, (2, 1), "bi", trials=4000, seed=11)
        assert report.exact_value == Fraction(1, 2)
        assert abs(report.wins_a / report.trials - 0.5) < 3 * (0.25 / 4000) ** 0.5

    def test_payload_shape(self, bi24):
        opt = table_strategy(bi24)
        payload = simulate_match(opt, opt, (3, 3), "bi", trials=10, seed=0).to_payload()
        assert set(payload) == {"trials", "wins_a", "exact_value", "empirical_rate", "seed"}
        assert payload["exact_value"] == "5/9"
        assert payload["empirical_rate"].count(".") == 1

    def test_rejects_empty_match(self, bi24):
        opt = table_strategy(bi24)
        with pytest.raises(ValueError):
            simulate_match(opt, opt, (3, 3), "bi", trials=0, seed=1)

    def test_tri_mode_runs(self, tri24):
        opt = table_strategy(tri24)
        report = simulate_match(opt, opt, (5, 5), "tri", trials=200, seed=5)
        assert report.exact_value == tri24.value(5, 5)
        assert 0 <= report.wins_a <= report.trials
