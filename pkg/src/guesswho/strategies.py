"""Strategy evaluation: exact pair values, best responses, seeded matches.

A strategy is a pure total function (mode, n, m) -> Decision.  Everything
here is exact except the Monte Carlo match driver, whose randomness is a
named, portable generator (Mersenne Twister via random.Random) with
per-trial substreams derived from (seed, trial index).
"""

from __future__ import annotations

import dataclasses
import random
from fractions import Fraction
from typing import Callable, Optional

from .bipartite import closed_form_decision
from .core import (
    GUESS,
    Decision,
    Guess,
    Rational,
    Split,
    StrategyFaultError,
    decision_sort_key,
    format_rational,
    mixture_value,
    require_legal_decision,
    validate_mode,
)
from .tables import SolveTable, VerificationReport, load_or_solve
from .tripartite import candidate_decision, split3_candidates

Strategy = Callable[[str, int, int], Decision]


def closed_form_strategy(mode: str, n: int, m: int) -> Decision:
    """The exact optimal yes/no strategy; legal in either mode."""
    return closed_form_decision(n, m)


def ternary_candidate_strategy(mode: str, n: int, m: int) -> Decision:
    """The paradox-game closed-form candidate; tripartite only."""
    return candidate_decision(n, m)


def always_guess(mode: str, n: int, m: int) -> Decision:
    return GUESS


def always_split_one(mode: str, n: int, m: int) -> Decision:
    """Peel a single suspect whenever a question is possible."""
    return GUESS if n == 1 else Split(1)


def table_strategy(table: SolveTable) -> Strategy:
    """Deterministic optimal play backed by a solve table: the canonically
    first decision of the optimal set at each state."""

    def strategy(mode: str, n: int, m: int) -> Decision:
        if mode != table.mode:
            raise StrategyFaultError(
                f"table strategy for mode {table.mode!r} asked to play {mode!r}"
            )
        return min(table.optimal(n, m), key=decision_sort_key)

    return strategy


def evaluate_pair(
    strat_a: Strategy, strat_b: Strategy, start, mode: str
) -> Rational:
    """Exact win probability for the player to move at start when both
    sides play the given fixed strategies."""
    validate_mode(mode)
    n0, m0 = _start_counts(start)
    memo: dict = {}

    def value(side: int, n: int, m: int) -> Rational:
        key = (side, n, m)
        if key in memo:
            return memo[key]
        strategy = strat_a if side == 0 else strat_b
        decision = _checked(strategy, mode, n, m)
        if isinstance(decision, Guess):
            result = Fraction(1, n)
        else:
            reply = mixture_value(
                lambda mm, a: value(1 - side, mm, a), m, decision.parts(n)
            )
            result = 1 - reply
        memo[key] = result
        return result

    return value(0, n0, m0)


def best_response(fixed: Strategy, n_max: int, mode: str) -> SolveTable:
    """Optimize the mover against a fixed opponent.

    Interleaves two value functions: the responder picks the best legal
    decision assuming the opponent plays fixed forever after; the fixed
    side plays its own decision against the responder.  Both recursions
    are well-founded because every question strictly raises n + m
    knowledge (successor states (m, a) have a < n).
    """
    validate_mode(mode)
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    br_memo: dict = {}
    fx_memo: dict = {}

    def br_value(n: int, m: int):
        key = (n, m)
        if key in br_memo:
            return br_memo[key]
        best = Fraction(1, n)
        best_set = [GUESS]
        for decision in _decision_domain(n, mode):
            v = 1 - mixture_value(fx_value, m, decision.parts(n))
            if v > best:
                best, best_set = v, [decision]
            elif v == best:
                best_set.append(decision)
        result = (best, tuple(sorted(best_set, key=decision_sort_key)))
        br_memo[key] = result
        return result

    def fx_value(n: int, m: int) -> Rational:
        key = (n, m)
        if key in fx_memo:
            return fx_memo[key]
        decision = _checked(fixed, mode, n, m)
        if isinstance(decision, Guess):
            result = Fraction(1, n)
        else:
            result = 1 - mixture_value(
                lambda mm, a: br_value(mm, a)[0], m, decision.parts(n)
            )
        fx_memo[key] = result
        return result

    entries = {}
    for n in range(1, n_max + 1):
        for m in range(1, n_max + 1):
            entries[(n, m)] = br_value(n, m)
    return SolveTable(mode=mode, n_max=n_max, entries=entries)


def verify_equilibrium(
    strategy: Strategy,
    n_max: int,
    mode: str,
    table: Optional[SolveTable] = None,
) -> VerificationReport:
    """No profitable deviation: the best response against the strategy
    achieves exactly the game value at every state."""
    if table is None:
        table = load_or_solve(mode, n_max)
    if table.n_max < n_max:
        raise ValueError(f"table covers {table.n_max} < requested {n_max}")
    response = best_response(strategy, n_max, mode)
    report = VerificationReport(name=f"equilibrium ({mode})")
    for n, m in response.states():
        expected = table.value(n, m)
        achieved = response.value(n, m)
        if achieved != expected:
            report.failures.append(
                {"n": n, "m": m, "game_value": str(expected), "best_response": str(achieved)}
            )
    report.notes.append(f"checked {n_max * n_max} states")
    return report


@dataclasses.dataclass(frozen=True)
class MatchReport:
    """Outcome of a seeded Monte Carlo match between two fixed strategies."""

    trials: int
    wins_a: int
    exact_value: Rational
    seed: int

    @property
    def empirical_rate(self) -> str:
        return f"{self.wins_a / self.trials:.6f}"

    def to_payload(self) -> dict:
        return {
            "trials": self.trials,
            "wins_a": self.wins_a,
            "exact_value": format_rational(self.exact_value),
            "empirical_rate": self.empirical_rate,
            "seed": self.seed,
        }


def simulate_match(
    strat_a: Strategy,
    strat_b: Strategy,
    start,
    mode: str,
    trials: int,
    seed: int,
) -> MatchReport:
    """Play seeded independent games; same seed gives an identical report.

    Each trial draws from its own substream keyed by (seed, trial), so
    reports do not depend on scheduling or trial order.
    """
    validate_mode(mode)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    n0, m0 = _start_counts(start)
    wins_a = 0
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        if _play_once(strat_a, strat_b, n0, m0, mode, rng) == 0:
            wins_a += 1
    exact = evaluate_pair(strat_a, strat_b, (n0, m0), mode)
    return MatchReport(trials=trials, wins_a=wins_a, exact_value=exact, seed=seed)


def _play_once(
    strat_a: Strategy, strat_b: Strategy, n: int, m: int, mode: str, rng: random.Random
) -> int:
    """Returns the index (0 for strat_a) of the winning side."""
    side = 0
    strategies = (strat_a, strat_b)
    while True:
        decision = _checked(strategies[side], mode, n, m)
        if isinstance(decision, Guess):
            # uniform secret: the named suspect is right with chance 1/n
            return side if rng.randrange(n) == 0 else 1 - side
        parts = decision.parts(n)
        roll = rng.randrange(n)
        for a in parts:
            if roll < a:
                n, m, side = m, a, 1 - side
                break
            roll -= a


def _checked(strategy: Strategy, mode: str, n: int, m: int) -> Decision:
    decision = strategy(mode, n, m)
    try:
        require_legal_decision(decision, n, mode)
    except StrategyFaultError:
        raise StrategyFaultError(
            f"strategy returned illegal decision {decision!r} at state ({n}, {m})"
        ) from None
    return decision


def _decision_domain(n: int, mode: str):
    if mode == "bi":
        return [Split(k) for k in range(1, n // 2 + 1)]
    return list(split3_candidates(n))


def _start_counts(start) -> tuple:
    if hasattr(start, "n") and hasattr(start, "m"):
        n, m = start.n, start.m
    else:
        n, m = start
    if n < 1 or m < 1:
        raise ValueError(f"suspect counts must be >= 1, got ({n}, {m})")
    return int(n), int(m)
