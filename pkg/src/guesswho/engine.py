"""Playable game over a named 24-character roster.

The abstract (n, m) model becomes concrete here: questions name actual
suspects, answers flip faces down, and transcripts record every move as
one JSON line.  States are immutable; every transition returns a new
GameState, so replaying a transcript from the seed reproduces the final
state bit for bit.
"""

from __future__ import annotations

import dataclasses
import json
import random
import warnings
from typing import Iterable, Optional, Sequence

from .core import (
    Decision,
    Guess,
    InvalidQuestionError,
    RefereeIntegrityError,
    Split,
    Split3,
    require_legal_decision,
    validate_mode,
)

DEFAULT_ROSTER = (
    "Alex", "Alfred", "Anita", "Anne", "Bernard", "Bill",
    "Charles", "Claire", "David", "Eric", "Frans", "George",
    "Herman", "Joe", "Maria", "Max", "Paul", "Peter",
    "Philip", "Richard", "Robert", "Sam", "Susan", "Tom",
)

VARIANTS = ("slider", "card")

ANSWER_YES = "yes"
ANSWER_NO = "no"
ANSWER_EXPLODE = "explode"
ANSWERS = (ANSWER_YES, ANSWER_NO, ANSWER_EXPLODE)


def validate_roster(roster: Sequence[str]) -> tuple:
    roster = tuple(roster)
    if len(roster) != 24:
        raise ValueError(f"roster must have exactly 24 names, got {len(roster)}")
    if len(set(roster)) != 24:
        raise ValueError("roster names must be distinct")
    return roster


@dataclasses.dataclass(frozen=True)
class Question:
    """Named question: is your person in x, or in y and the answer is no?

    y empty gives the plain yes/no question; y nonempty embeds the
    paradox, making "explode" a possible answer.
    """

    x: tuple
    y: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "x", tuple(self.x))
        object.__setattr__(self, "y", tuple(self.y))


@dataclasses.dataclass(frozen=True)
class PlayerBoard:
    """One side of the table: own secret plus the faces still up, which
    are the candidates for the opponent's secret."""

    secret: str
    remaining: tuple

    def count(self) -> int:
        return len(self.remaining)


@dataclasses.dataclass(frozen=True)
class GameState:
    variant: str
    mode: str
    roster: tuple
    boards: tuple  # (PlayerBoard, PlayerBoard)
    turn: int
    outcome: Optional[int] = None  # None while ongoing, else winning seat

    def counts(self) -> tuple:
        return (self.boards[0].count(), self.boards[1].count())

    def ongoing(self) -> bool:
        return self.outcome is None


def new_game(
    variant: str,
    mode: str,
    seed: int,
    roster: Sequence[str] = DEFAULT_ROSTER,
    first_player: int = 0,
) -> GameState:
    """Deal secrets and set up both boards, deterministically under seed.

    slider: secrets drawn independently (they may coincide), both boards
    start with every face up.  card: secrets drawn without replacement
    and each player flips their own card, starting at 23.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown variant {variant!r}, expected one of {VARIANTS}")
    validate_mode(mode)
    if first_player not in (0, 1):
        raise ValueError(f"first_player must be 0 or 1, got {first_player}")
    roster = validate_roster(roster)
    rng = random.Random(f"deal:{seed}")
    if variant == "slider":
        secrets = (rng.choice(roster), rng.choice(roster))
        boards = tuple(
            PlayerBoard(secret=secrets[i], remaining=roster) for i in range(2)
        )
    else:
        first = rng.choice(roster)
        second = rng.choice(tuple(name for name in roster if name != first))
        secrets = (first, second)
        boards = tuple(
            PlayerBoard(
                secret=secrets[i],
                remaining=tuple(name for name in roster if name != secrets[i]),
            )
            for i in range(2)
        )
    return GameState(
        variant=variant,
        mode=mode,
        roster=roster,
        boards=boards,
        turn=first_player,
        outcome=None,
    )


def validate_question(state: GameState, asker: int, question: Question) -> Question:
    """Reject malformed or degenerate questions for the asker's board."""
    x, y = question.x, question.y
    if len(set(x)) != len(x) or len(set(y)) != len(y):
        raise InvalidQuestionError("duplicate names in question")
    if set(x) & set(y):
        raise InvalidQuestionError("x and y overlap")
    if state.mode == "bi" and y:
        raise InvalidQuestionError("paradox part y requires tripartite mode")
    remaining = set(state.boards[asker].remaining)
    if not set(x) <= remaining or not set(y) <= remaining:
        raise InvalidQuestionError("question names suspects not on the asker's board")
    if not x and not y:
        raise InvalidQuestionError("question must name at least one suspect")
    if len(x) + len(y) >= len(remaining):
        raise InvalidQuestionError(
            "degenerate question: x and y cover the whole board"
        )
    return question


def answer_question(secret: str, question: Question) -> str:
    """Truthful answer for a given secret: yes if in x, explode if in y,
    no otherwise."""
    if set(question.x) & set(question.y):
        raise InvalidQuestionError("x and y overlap")
    if secret in question.x:
        return ANSWER_YES
    if secret in question.y:
        return ANSWER_EXPLODE
    return ANSWER_NO


def apply_answer(state: GameState, asker: int, question: Question, answer: str) -> GameState:
    """Flip down the asker's faces outside the answered part; turn passes."""
    if not state.ongoing():
        raise ValueError("game over")
    if answer not in ANSWERS:
        raise ValueError(f"unknown answer {answer!r}")
    validate_question(state, asker, question)
    board = state.boards[asker]
    if answer == ANSWER_YES:
        kept = [name for name in board.remaining if name in set(question.x)]
    elif answer == ANSWER_EXPLODE:
        kept = [name for name in board.remaining if name in set(question.y)]
    else:
        dropped = set(question.x) | set(question.y)
        kept = [name for name in board.remaining if name not in dropped]
    if not kept:
        raise RefereeIntegrityError(
            f"answer {answer!r} is inconsistent with every remaining suspect"
        )
    boards = list(state.boards)
    boards[asker] = dataclasses.replace(board, remaining=tuple(kept))
    return dataclasses.replace(state, boards=tuple(boards), turn=1 - asker)


def realize_decision(state: GameState, decision: Decision) -> Question:
    """Turn an abstract split into a concrete question by taking the first
    part sizes in roster order over the asker's remaining faces."""
    asker = state.turn
    remaining = state.boards[asker].remaining
    require_legal_decision(decision, len(remaining), state.mode)
    if isinstance(decision, Guess):
        raise ValueError("a guess is played with guess(), not as a question")
    if isinstance(decision, Split):
        return Question(x=remaining[: decision.k])
    i, j, _ = decision.parts(len(remaining))
    return Question(x=remaining[:i], y=remaining[i : i + j])


def guess(state: GameState, player: int, character: str) -> GameState:
    """Name the opponent's secret; the game ends immediately either way."""
    if not state.ongoing():
        raise ValueError("game over")
    if player != state.turn:
        raise ValueError(f"seat {player} moved out of turn")
    if character not in state.roster:
        raise ValueError(f"{character!r} is not on the roster")
    if character not in state.boards[player].remaining:
        warnings.warn(
            f"irrational guess: {character!r} is already flipped down", stacklevel=2
        )
    correct = character == state.boards[1 - player].secret
    winner = player if correct else 1 - player
    return dataclasses.replace(state, outcome=winner, turn=player)


def is_irrational_guess(state: GameState, player: int, character: str) -> bool:
    return character not in state.boards[player].remaining


def play_game(
    strategies,
    variant: str = "slider",
    mode: str = "bi",
    seed: int = 0,
    roster: Sequence[str] = DEFAULT_ROSTER,
    first_player: int = 0,
):
    """Drive a full game between two strategies.

    Returns (final_state, events) where events is the transcript: one
    dict per move.  Guess targets beyond the forced single-candidate case
    are drawn from the seeded generator, so the whole game is a pure
    function of its arguments.
    """
    state = new_game(variant, mode, seed, roster=roster, first_player=first_player)
    rng = random.Random(f"moves:{seed}")
    events = []
    turn_no = 0
    while state.ongoing():
        mover = state.turn
        board = state.boards[mover]
        n, m = board.count(), state.boards[1 - mover].count()
        decision = strategies[mover](mode, n, m)
        if isinstance(decision, Guess):
            candidates = board.remaining
            target = candidates[0] if n == 1 else rng.choice(candidates)
            correct = target == state.boards[1 - mover].secret
            state = guess(state, mover, target)
            events.append(
                {
                    "turn": turn_no,
                    "player": mover,
                    "action": "guess",
                    "x": [target],
                    "y": [],
                    "answer": ANSWER_YES if correct else ANSWER_NO,
                    "counts_after": list(state.counts()),
                }
            )
        else:
            question = realize_decision(state, decision)
            answer = answer_question(state.boards[1 - mover].secret, question)
            state = apply_answer(state, mover, question, answer)
            events.append(
                {
                    "turn": turn_no,
                    "player": mover,
                    "action": "question",
                    "x": list(question.x),
                    "y": list(question.y),
                    "answer": answer,
                    "counts_after": list(state.counts()),
                }
            )
        turn_no += 1
    return state, events


def transcript_lines(events: Iterable[dict]) -> str:
    """Serialize transcript events as JSON lines."""
    return "\n".join(
        json.dumps(event, sort_keys=True, separators=(",", ":")) for event in events
    ) + "\n"


def parse_transcript(text: str) -> list:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def replay(
    variant: str,
    mode: str,
    seed: int,
    events: Iterable[dict],
    roster: Sequence[str] = DEFAULT_ROSTER,
    first_player: int = 0,
) -> GameState:
    """Rebuild the final state by applying recorded events to the seed's
    initial deal, checking recorded counts and answers along the way."""
    state = new_game(variant, mode, seed, roster=roster, first_player=first_player)
    for event in events:
        if not state.ongoing():
            raise RefereeIntegrityError("transcript continues after game end")
        mover = int(event["player"])
        if mover != state.turn:
            raise RefereeIntegrityError(
                f"transcript event out of turn: seat {mover} at turn {state.turn}"
            )
        if event["action"] == "guess":
            (target,) = event["x"]
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                state = guess(state, mover, target)
            recorded_correct = event["answer"] == ANSWER_YES
            if (state.outcome == mover) != recorded_correct:
                raise RefereeIntegrityError("recorded guess outcome does not replay")
        elif event["action"] == "question":
            question = Question(x=tuple(event["x"]), y=tuple(event["y"]))
            state = apply_answer(state, mover, question, event["answer"])
        else:
            raise ValueError(f"unknown transcript action {event['action']!r}")
        if list(state.counts()) != list(event["counts_after"]):
            raise RefereeIntegrityError(
                f"transcript counts diverge at turn {event['turn']}"
            )
    return state
