"""Yes/no game: exact DP solver, closed-form strategy, and its verifiers.

States are (n, m): the mover distinguishes n suspects, the opponent m.
A move either guesses (wins 1/n immediately) or asks a question whose
Yes-set covers k suspects, handing the opponent the move at (m, k) or
(m, n-k) with probabilities k/n and (n-k)/n.
"""

from __future__ import annotations

from fractions import Fraction

from .core import (
    GUESS,
    Decision,
    Rational,
    Split,
    decision_sort_key,
    mixture_value,
    split_lower,
    split_upper,
)
from .tables import SolveTable, VerificationReport, decision_value


def solve_bipartite(n_max: int) -> SolveTable:
    """Exact optimal values for every 1 <= n, m <= n_max.

    Walks diagonals of constant n+m so every lookup hits a finished cell:
    a split at (n, m) only references states (m, a) with a < n.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    values: dict = {}
    entries: dict = {}

    def lookup(mm: int, a: int) -> Rational:
        return values[(mm, a)]

    for total in range(2, 2 * n_max + 1):
        for n in range(max(1, total - n_max), min(n_max, total - 1) + 1):
            m = total - n
            best = Fraction(1, n)
            best_set = [GUESS]
            for k in range(1, n // 2 + 1):
                v = 1 - mixture_value(lookup, m, (k, n - k))
                if v > best:
                    best, best_set = v, [Split(k)]
                elif v == best:
                    best_set.append(Split(k))
            values[(n, m)] = best
            entries[(n, m)] = (best, tuple(sorted(best_set, key=decision_sort_key)))
    return SolveTable(mode="bi", n_max=n_max, entries=entries)


def closed_form_decision(n: int, m: int) -> Decision:
    """Optimal-by-construction move: guess on the base rows, otherwise
    split off the balanced lower part, with three fixed small-board
    exceptions where a leaner split is strictly better."""
    if n < 1 or m < 1:
        raise ValueError(f"suspect counts must be >= 1, got ({n}, {m})")
    if n == 1 or m == 1:
        return GUESS
    if (n, m) == (4, 4):
        return Split(1)
    if (n, m) == (6, 4):
        return Split(3)
    if (n, m) == (10, 4):
        return Split(5)
    return Split(split_lower(n))


def verify_closed_form(table: SolveTable) -> VerificationReport:
    """Check the closed-form move attains the exact DP value at every state.

    Also collects, separately, the states (n, m >= 2) where the generic
    balanced split is not value-optimal, and records which algebraic form
    matches the single-suspect-probe row at m = 3.
    """
    report = VerificationReport(name="closed-form attainment")
    exceptions = []
    for n, m in table.states():
        target = table.value(n, m)
        attained = decision_value(table, n, m, closed_form_decision(n, m))
        if attained != target:
            report.failures.append(
                {"n": n, "m": m, "attained": str(attained), "optimal": str(target)}
            )
        if n >= 2 and m >= 2:
            generic = decision_value(table, n, m, Split(split_lower(n)))
            if generic != target:
                exceptions.append([n, m])
    report.details["generic_split_exceptions"] = exceptions
    report.notes.append(
        f"generic balanced split suboptimal at {len(exceptions)} state(s): {exceptions}"
    )
    _note_probe_row_reading(table, report)
    return report


def _note_probe_row_reading(table: SolveTable, report: VerificationReport) -> None:
    # open reading of the m=3 row for the [1 : n-1] probe: denominator 3n or n
    checked = []
    for n in (11, 15, 20):
        if n > table.n_max:
            continue
        actual = mixture_value(table.value, 3, (1, n - 1))
        checked.append((n, actual == Fraction(3 * n - 7, 3 * n)))
    if checked and all(ok for _, ok in checked):
        report.notes.append(
            "m=3 probe row value equals (3n-7)/(3n); the /n variant exceeds 1"
        )
    elif checked:
        report.notes.append(f"m=3 probe row reading unclear: {checked}")


def remainder_split_formula(n: int, k: int) -> tuple:
    """Predicted balanced split of the remainder n-k after peeling a
    Yes-part of size k, selected by the residues of n and k mod 4.

    The k = 2 rows take precedence and use the modified convention
    k_< = k_> = 1.  The n = 2 mod 4, k = 2 row is implemented as
    (n_< - k_< + 1, n_> - k_> - 1); the originally printed signs fail
    every n = 2 mod 4 case while this form passes the exhaustive
    identity check below.  Defined for k >= 2 and n - k >= 2.
    """
    if k < 2:
        raise ValueError(f"formula needs k >= 2, got {k}")
    if n - k < 2:
        raise ValueError(f"remainder n-k must be >= 2, got {n - k}")
    n_lt, n_gt = split_lower(n), split_upper(n)
    if k == 2:
        k_lt = k_gt = 1
        if n == 4:
            return (n_lt - k_gt, n_gt - k_lt)
        if n % 4 == 0:
            return (n_lt - k_lt - 1, n_gt - k_gt + 1)
        if n % 4 == 2:
            return (n_lt - k_lt + 1, n_gt - k_gt - 1)
        # n odd
        return (n_lt - k_gt, n_gt - k_lt)
    k_lt, k_gt = split_lower(k), split_upper(k)
    r_n, r_k = n % 4, k % 4
    if r_n == 0:
        return (n_lt - k_gt, n_gt - k_lt)
    if r_n == 1:
        if r_k in (0, 1):
            return (n_lt - k_lt, n_gt - k_gt)
        return (n_lt - k_lt - 1, n_gt - k_gt + 1)
    if r_n == 2:
        return (n_lt - k_lt, n_gt - k_gt)
    if r_k in (0, 1):
        return (n_lt - k_gt, n_gt - k_lt)
    return (n_lt - k_gt + 1, n_gt - k_lt - 1)


def verify_remainder_formula(n_max: int = 200) -> VerificationReport:
    """Exhaustive identity check: the formula equals the direct balanced
    split of n-k for all 4 <= n <= n_max, 2 <= k <= n/2."""
    report = VerificationReport(name="remainder-split identity")
    count = 0
    for n in range(4, n_max + 1):
        for k in range(2, n // 2 + 1):
            if n - k < 2:
                continue
            predicted = remainder_split_formula(n, k)
            actual = (split_lower(n - k), split_upper(n - k))
            count += 1
            if predicted != actual:
                report.failures.append(
                    {"n": n, "k": k, "predicted": list(predicted), "actual": list(actual)}
                )
    report.notes.append(f"checked {count} (n, k) pairs up to n = {n_max}")
    return report


# states where peeling one suspect beats the balanced split, so the
# opponent-mixture minimality claim is allowed to fail
EQ1_EXCLUDED_STATES = ((4, 4), (6, 4), (10, 4))

# cells where the own-mixture maximality claim genuinely fails; both have
# k = 1, outside the k >= 2 range the closed-form argument relies on
KNOWN_OWN_MIXTURE_VIOLATIONS = ((4, 2, 1), (5, 2, 1))


def verify_split_inequalities(table: SolveTable) -> VerificationReport:
    """Sweep the two mixture inequalities behind the closed form.

    Opponent-mixture minimality: for the mover at (n, m), the balanced
    split minimizes the opponent's mixture value
    sum_a (a/n) * P(m, a) over all two-way splits [k : n-k], except at
    the three excluded states.

    Own-mixture maximality: distributing the mover's own count,
    sum_a (a/n) * P(a, m) is maximized by the balanced split.  The two
    known k = 1 cells are real counterexamples to the swept statement and
    are reported as known mismatches; any other hit is a hard failure.
    """
    report = VerificationReport(name="mixture inequalities")
    eq1_violations = []
    eq2_violations = []

    def own_lookup(mm: int, a: int) -> Rational:
        return table.value(a, mm)

    for n in range(2, table.n_max + 1):
        balanced = (split_lower(n), split_upper(n))
        for m in range(2, table.n_max + 1):
            opp_base = mixture_value(table.value, m, balanced)
            own_base = mixture_value(own_lookup, m, balanced)
            for k in range(1, n // 2 + 1):
                parts = (k, n - k)
                if mixture_value(table.value, m, parts) < opp_base and (
                    n,
                    m,
                ) not in EQ1_EXCLUDED_STATES:
                    eq1_violations.append({"n": n, "m": m, "k": k})
                if mixture_value(own_lookup, m, parts) > own_base:
                    cell = {"n": n, "m": m, "k": k}
                    if (n, m, k) in KNOWN_OWN_MIXTURE_VIOLATIONS:
                        report.mismatches.append(cell)
                    else:
                        eq2_violations.append(cell)
    report.failures.extend(eq1_violations)
    report.failures.extend(eq2_violations)
    report.details["eq1_violations"] = eq1_violations
    report.details["eq2_violations"] = eq2_violations
    _note_exclusions_respected(table, report)
    if report.mismatches:
        report.notes.append(
            "own-mixture maximality fails at the known k=1 cells "
            f"{[tuple(c.values()) for c in report.mismatches]}; "
            "the closed-form argument only uses k >= 2"
        )
    return report


def _note_exclusions_respected(table: SolveTable, report: VerificationReport) -> None:
    for n, m in EQ1_EXCLUDED_STATES:
        if n > table.n_max or m > table.n_max:
            continue
        balanced = mixture_value(table.value, m, (split_lower(n), split_upper(n)))
        best_k = min(
            range(1, n // 2 + 1),
            key=lambda k: mixture_value(table.value, m, (k, n - k)),
        )
        best = mixture_value(table.value, m, (best_k, n - best_k))
        if best < balanced:
            report.notes.append(
                f"exclusion ({n},{m}): k={best_k} strictly beats the balanced split"
            )
        else:
            report.failures.append(
                {"n": n, "m": m, "issue": "excluded state has no strictly better k"}
            )
