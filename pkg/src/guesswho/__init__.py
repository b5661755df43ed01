"""Exact solver, verifier, and playable engine for two-player Guess Who."""

from .core import (
    GUESS,
    BoardState,
    Decision,
    Guess,
    GuessWhoError,
    InvalidMixtureError,
    InvalidQuestionError,
    Rational,
    RefereeIntegrityError,
    Split,
    Split3,
    StrategyFaultError,
    decode_decision,
    encode_decision,
    format_rational,
    mixture_value,
    parse_rational,
    split_lower,
    split_upper,
)
from .tables import SolveTable, VerificationReport, load_or_solve

__version__ = "0.1.0"

__all__ = [
    "GUESS",
    "BoardState",
    "Decision",
    "Guess",
    "GuessWhoError",
    "InvalidMixtureError",
    "InvalidQuestionError",
    "Rational",
    "RefereeIntegrityError",
    "SolveTable",
    "Split",
    "Split3",
    "StrategyFaultError",
    "VerificationReport",
    "decode_decision",
    "encode_decision",
    "format_rational",
    "load_or_solve",
    "mixture_value",
    "parse_rational",
    "split_lower",
    "split_upper",
    "__version__",
]
