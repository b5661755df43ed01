"""Independent full game-tree enumerator used to cross-check the DP solvers.

Deliberately self-contained: no memoization, no imports from the solver
modules, and its own inline part enumeration and averaging.  Keeping the
two routes disjoint is the point; do not refactor them together.
Exponential in n + m, so callers keep the counts small.
"""

from __future__ import annotations

from fractions import Fraction


def brute_force_value(n: int, m: int, mode: str) -> Fraction:
    """Exact win probability for the mover at (n, m) by exhaustive expansion."""
    if mode not in ("bi", "tri"):
        raise ValueError(f"unknown mode {mode!r}")
    if n < 1 or m < 1:
        raise ValueError(f"suspect counts must be >= 1, got ({n}, {m})")
    if mode == "bi":
        return _expand_bi(n, m)
    return _expand_tri(n, m)


def _expand_bi(n: int, m: int) -> Fraction:
    best = Fraction(1, n)
    for k in range(1, n // 2 + 1):
        reply = Fraction(k, n) * _expand_bi(m, k) + Fraction(n - k, n) * _expand_bi(m, n - k)
        value = 1 - reply
        if value > best:
            best = value
    return best


def _expand_tri(n: int, m: int) -> Fraction:
    best = Fraction(1, n)
    for i in range(0, n // 3 + 1):
        for j in range(max(i, 1), (n - i) // 2 + 1):
            k = n - i - j
            reply = Fraction(0)
            for part in (i, j, k):
                if part:
                    reply += Fraction(part, n) * _expand_tri(m, part)
            value = 1 - reply
            if value > best:
                best = value
    return best
