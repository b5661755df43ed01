"""Solve-table container, JSON/CSV export, and the verification report type."""

from __future__ import annotations

import dataclasses
import json
import os
from pathlib import Path
from typing import Iterator, Optional

from fractions import Fraction

from .core import (
    Decision,
    Guess,
    Rational,
    decision_sort_key,
    decode_decision,
    encode_decision,
    format_rational,
    mixture_value,
    parse_rational,
    validate_mode,
)

CACHE_ENV = "GW_TABLE_CACHE"


@dataclasses.dataclass
class SolveTable:
    """Exact game values and optimal decision sets for all 1 <= n, m <= n_max."""

    mode: str
    n_max: int
    entries: dict  # (n, m) -> (Rational, tuple[Decision, ...])

    def value(self, n: int, m: int) -> Rational:
        return self.require_state(n, m)[0]

    def optimal(self, n: int, m: int) -> tuple[Decision, ...]:
        return self.require_state(n, m)[1]

    def require_state(self, n: int, m: int):
        try:
            return self.entries[(n, m)]
        except KeyError:
            raise ValueError(
                f"state ({n}, {m}) outside table range 1..{self.n_max}"
            ) from None

    def states(self) -> Iterator[tuple[int, int]]:
        for n in range(1, self.n_max + 1):
            for m in range(1, self.n_max + 1):
                yield (n, m)

    def to_payload(self) -> dict:
        entries = []
        for n, m in self.states():
            p, decisions = self.entries[(n, m)]
            entries.append(
                {
                    "n": n,
                    "m": m,
                    "p": format_rational(p),
                    "optimal": [encode_decision(d) for d in decisions],
                }
            )
        return {"mode": self.mode, "n_max": self.n_max, "entries": entries}

    @classmethod
    def from_payload(cls, payload: dict) -> "SolveTable":
        mode = validate_mode(payload["mode"])
        n_max = int(payload["n_max"])
        entries = {}
        for row in payload["entries"]:
            n, m = int(row["n"]), int(row["m"])
            decisions = tuple(
                sorted((decode_decision(raw) for raw in row["optimal"]), key=decision_sort_key)
            )
            entries[(n, m)] = (parse_rational(row["p"]), decisions)
        table = cls(mode=mode, n_max=n_max, entries=entries)
        for state in table.states():
            if state not in entries:
                raise ValueError(f"payload missing state {state}")
        return table

    def csv_rows(self) -> list:
        rows = [["n", "m", "p", "optimal"]]
        for n, m in self.states():
            p, decisions = self.entries[(n, m)]
            encoded = json.dumps([encode_decision(d) for d in decisions], separators=(",", ":"))
            rows.append([str(n), str(m), format_rational(p), encoded])
        return rows

    def save_json(self, path) -> None:
        Path(path).write_text(dump_json(self.to_payload()) + "\n")

    @classmethod
    def load_json(cls, path) -> "SolveTable":
        return cls.from_payload(json.loads(Path(path).read_text()))


def dump_json(payload) -> str:
    """Stable serialization: sorted keys, fixed separators, no trailing spaces."""
    return json.dumps(payload, sort_keys=True, separators=(",", ": "), indent=1)


def decision_value(table: "SolveTable", n: int, m: int, decision: Decision) -> Rational:
    """Value attained by playing one decision at (n, m), optimal thereafter."""
    if isinstance(decision, Guess):
        return Fraction(1, n)
    return 1 - mixture_value(table.value, m, decision.parts(n))


def cache_path(cache_dir, mode: str, n_max: int) -> Path:
    return Path(cache_dir) / f"solve_{mode}_{n_max}.json"


def load_or_solve(mode: str, n_max: int, cache_dir: Optional[str] = None) -> SolveTable:
    """Fetch a solve table, reusing a cache file when one is configured.

    cache_dir defaults to the GW_TABLE_CACHE environment variable; with
    neither set the table is solved in process and not persisted.
    """
    validate_mode(mode)
    if cache_dir is None:
        cache_dir = os.environ.get(CACHE_ENV) or None
    if cache_dir:
        path = cache_path(cache_dir, mode, n_max)
        if path.exists():
            table = SolveTable.load_json(path)
            if table.mode == mode and table.n_max == n_max:
                return table
    table = _solve(mode, n_max)
    if cache_dir:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        table.save_json(cache_path(cache_dir, mode, n_max))
    return table


def _solve(mode: str, n_max: int) -> SolveTable:
    # local import keeps tables importable from the solver modules
    if mode == "bi":
        from .bipartite import solve_bipartite

        return solve_bipartite(n_max)
    from .tripartite import solve_tripartite

    return solve_tripartite(n_max)


@dataclasses.dataclass
class VerificationReport:
    """Outcome of one verification sweep.

    failures are hard contract breaks (expected empty); mismatches are
    known report-only findings that --strict promotes to fatal.
    """

    name: str
    failures: list = dataclasses.field(default_factory=list)
    mismatches: list = dataclasses.field(default_factory=list)
    notes: list = dataclasses.field(default_factory=list)
    details: dict = dataclasses.field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def passed_strict(self) -> bool:
        return not self.failures and not self.mismatches

    def to_payload(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "failures": self.failures,
            "mismatches": self.mismatches,
            "notes": self.notes,
            "details": self.details,
        }

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        parts = [f"{self.name}: {status}"]
        if self.failures:
            parts.append(f"{len(self.failures)} failure(s)")
        if self.mismatches:
            parts.append(f"{len(self.mismatches)} known mismatch(es)")
        return ", ".join(parts)
