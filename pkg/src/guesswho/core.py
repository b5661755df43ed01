"""Exact arithmetic, decision types, and shared value formulas.

Everything on the solve path is a ``fractions.Fraction``.  Floats appear
only in rendering code (figures, decimal readouts) and never feed back
into game values.
"""

from __future__ import annotations

import dataclasses
import re
from fractions import Fraction
from typing import Callable, Iterable, Sequence, Union

Rational = Fraction

MODE_BIPARTITE = "bi"
MODE_TRIPARTITE = "tri"
MODES = (MODE_BIPARTITE, MODE_TRIPARTITE)


class GuessWhoError(Exception):
    """Base class for package errors."""


class InvalidMixtureError(GuessWhoError):
    """Raised for empty mixtures, negative parts, or a zero total."""


class InvalidQuestionError(GuessWhoError):
    """Raised when a question is malformed for the asker's board."""


class RefereeIntegrityError(GuessWhoError):
    """Raised when an answer is inconsistent with any remaining suspect."""


class StrategyFaultError(GuessWhoError):
    """Raised when a strategy returns an illegal decision for its state."""


def validate_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}, expected one of {MODES}")
    return mode


_RATIONAL_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def format_rational(value: Rational) -> str:
    """Render a rational as ``p/q`` in lowest terms, integers without ``/q``."""
    return str(Fraction(value))


def parse_rational(text: str) -> Rational:
    """Parse the ``p/q`` wire format.  Bit-exact inverse of format_rational.

    Rejects anything outside the integer-or-fraction grammar (in
    particular decimal strings), and zero denominators.
    """
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not a rational literal: {text!r}")
    body = text.strip()
    if "/" in body:
        num, den = body.split("/")
        if int(den) == 0:
            raise ValueError(f"zero denominator: {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(body))


@dataclasses.dataclass(frozen=True)
class BoardState:
    """A position between moves: the mover knows the opponent's secret is
    one of ``n`` suspects; the opponent is down to ``m`` on their side."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"suspect counts must be >= 1, got ({self.n}, {self.m})")


@dataclasses.dataclass(frozen=True)
class Guess:
    """Use the turn to name a suspect outright."""

    def parts(self, n: int) -> tuple[int, ...]:
        raise ValueError("a guess does not partition the suspects")

    def __repr__(self):
        return "Guess()"


@dataclasses.dataclass(frozen=True)
class Split:
    """Ask a yes/no question whose Yes-set covers k of the n suspects."""

    k: int

    def parts(self, n: int) -> tuple[int, ...]:
        return (self.k, n - self.k)


@dataclasses.dataclass(frozen=True)
class Split3:
    """Ask a paradox question splitting n suspects into No/Yes/Explode
    parts of sizes i <= j <= k (canonical order; i may be zero)."""

    i: int
    j: int
    k: int

    def parts(self, n: int) -> tuple[int, ...]:
        if self.i + self.j + self.k != n:
            raise ValueError(f"{self} does not partition n={n}")
        return (self.i, self.j, self.k)


Decision = Union[Guess, Split, Split3]

GUESS = Guess()


def decision_is_legal(decision: Decision, n: int, mode: str) -> bool:
    """True when the decision is playable at a state with n suspects."""
    validate_mode(mode)
    if n < 1:
        return False
    if isinstance(decision, Guess):
        return True
    if isinstance(decision, Split):
        # canonical domain: k and n-k interchangeable, so k stays <= n/2
        return 1 <= 2 * decision.k <= n
    if isinstance(decision, Split3):
        if mode != MODE_TRIPARTITE:
            return False
        i, j, k = decision.i, decision.j, decision.k
        # canonical sorted order, middle part nonempty, no-op (0,0,n) banned
        return 0 <= i <= j <= k and j >= 1 and i + j + k == n
    return False


def require_legal_decision(decision: Decision, n: int, mode: str) -> Decision:
    if not decision_is_legal(decision, n, mode):
        raise StrategyFaultError(f"illegal decision {decision!r} at n={n} in mode {mode!r}")
    return decision


def decision_sort_key(decision: Decision) -> tuple:
    """Canonical ordering: Guess, then two-way splits by k, then triples."""
    if isinstance(decision, Guess):
        return (0,)
    if isinstance(decision, Split):
        return (1, decision.k)
    return (2, decision.i, decision.j, decision.k)


def encode_decision(decision: Decision):
    """JSON encoding: 0 for Guess, k for Split(k), [i, j, k] for Split3."""
    if isinstance(decision, Guess):
        return 0
    if isinstance(decision, Split):
        return decision.k
    if isinstance(decision, Split3):
        return [decision.i, decision.j, decision.k]
    raise TypeError(f"not a decision: {decision!r}")


def decode_decision(raw) -> Decision:
    if isinstance(raw, bool):
        raise ValueError(f"not a decision encoding: {raw!r}")
    if isinstance(raw, int):
        if raw < 0:
            raise ValueError(f"negative split size: {raw}")
        return GUESS if raw == 0 else Split(raw)
    if isinstance(raw, (list, tuple)) and len(raw) == 3:
        i, j, k = raw
        return Split3(int(i), int(j), int(k))
    raise ValueError(f"not a decision encoding: {raw!r}")


ValueLookup = Callable[[int, int], Rational]


def mixture_value(lookup: ValueLookup, m: int, parts: Sequence[int]) -> Rational:
    """Opponent's expected value over the answer distribution of a split.

    The asker holds ``sum(parts)`` suspects; the answer lands in a part of
    size a with probability a / total, after which the opponent moves at
    state (m, a).  Zero-size parts are unreachable and contribute nothing.
    """
    parts = tuple(parts)
    if not parts:
        raise InvalidMixtureError("empty mixture")
    if any(a < 0 for a in parts):
        raise InvalidMixtureError(f"negative part in mixture {parts}")
    total = sum(parts)
    if total <= 0:
        raise InvalidMixtureError(f"mixture {parts} has zero total")
    acc = Fraction(0)
    for a in parts:
        if a:
            acc += Fraction(a, total) * lookup(m, a)
    return acc


def split_lower(n: int) -> int:
    """Size of the smaller side of the balanced-remainder split."""
    if n < 2:
        raise ValueError(f"split needs n >= 2, got {n}")
    if n == 2:
        return 1
    return n // 4 + (n + 1) // 4


def split_upper(n: int) -> int:
    """Complement of split_lower; the two sides always sum to n."""
    return n - split_lower(n)
