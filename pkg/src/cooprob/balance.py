"""Table balancing: verify payoff tables against design targets and nudge
them toward a target (p, mu) by greedy coordinate search."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import CooprobError, DomainError, InvalidTableError
from .estimators import balanced_p, expected_payoff2
from .nplayer import balanced_p3, expected_payoff3
from .tables import (
    DEFAULT_POLICY,
    GameClass,
    NumericPolicy,
    PayoffTable2,
    PayoffTable3,
    classify2,
)

__all__ = [
    "BalanceTarget",
    "VerificationReport",
    "SearchResult",
    "TableEntry",
    "verify_table",
    "balance_search",
    "load_table_entries",
]


@dataclass(frozen=True)
class BalanceTarget:
    """Design target: cooperation probability and expected payoff, each with
    an absolute tolerance."""

    p: float
    mu: float
    p_tol: float
    mu_tol: float

    def __post_init__(self) -> None:
        if not (0.0 <= self.p <= 1.0):
            raise DomainError(f"target p={self.p!r} outside [0, 1]")
        if not (math.isfinite(self.mu)):
            raise DomainError("target mu must be finite")
        if not (self.p_tol > 0 and self.mu_tol > 0):
            raise DomainError("tolerances must be positive")


@dataclass(frozen=True)
class VerificationReport:
    """Computed behavior of a table next to its target."""

    game_class: GameClass
    p_computed: float
    mu_computed: float
    delta_p: float
    delta_mu: float
    passed: bool


@dataclass(frozen=True)
class SearchResult:
    """Outcome of a greedy balance search.

    ``stalled`` is set when no class-preserving neighbor improved the
    objective before the target was met.
    """

    table: PayoffTable2
    report: VerificationReport
    met_target: bool
    stalled: bool
    iterations: int


def verify_table(
    table: PayoffTable2 | PayoffTable3,
    target: BalanceTarget,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> VerificationReport:
    """Compute (p, mu) for the table and compare against the target."""
    if isinstance(table, PayoffTable3):
        est = balanced_p3(table, policy)
        mu = expected_payoff3(table, est.p)
    else:
        est = balanced_p(table, policy)
        mu = expected_payoff2(table, est.p)
    dp = est.p - target.p
    dmu = mu - target.mu
    passed = abs(dp) <= target.p_tol and abs(dmu) <= target.mu_tol
    return VerificationReport(
        game_class=est.class_used,
        p_computed=est.p,
        mu_computed=mu,
        delta_p=dp,
        delta_mu=dmu,
        passed=passed,
    )


def _objective(report: VerificationReport, target: BalanceTarget) -> float:
    return (report.delta_p / target.p_tol) ** 2 + (report.delta_mu / target.mu_tol) ** 2


def balance_search(
    table: PayoffTable2,
    target: BalanceTarget,
    step: float = 0.5,
    max_iters: int = 200,
    integer_mode: bool = False,
    policy: NumericPolicy = DEFAULT_POLICY,
) -> SearchResult:
    """Greedily perturb payoffs toward the target without changing class.

    Each round tries +/- step on each of the four payoffs, discards
    neighbors whose class tag differs from the starting table's, and moves
    to the best neighbor that lowers the squared tolerance-normalized
    objective. Stops on target met, stall, or the iteration cap. In integer
    mode the step is snapped to a whole number (at least 1).
    """
    if step <= 0 or not math.isfinite(step):
        raise DomainError("step must be finite and positive")
    if max_iters < 1:
        raise DomainError("max_iters must be at least 1")
    if integer_mode:
        step = float(max(1, round(step)))
    tag0 = classify2(table).tag
    report = verify_table(table, target, policy)
    best_obj = _objective(report, target)
    iterations = 0
    while iterations < max_iters:
        if report.passed:
            return SearchResult(table, report, True, False, iterations)
        iterations += 1
        best_neighbor = None
        for field in ("a", "b", "c", "d"):
            for sign in (1.0, -1.0):
                values = table.to_dict()
                values[field] += sign * step
                try:
                    cand = PayoffTable2(**values)
                except CooprobError:
                    continue
                if classify2(cand).tag is not tag0:
                    continue
                try:
                    cand_report = verify_table(cand, target, policy)
                except CooprobError:
                    continue
                obj = _objective(cand_report, target)
                if obj < best_obj - 1e-15:
                    best_obj = obj
                    best_neighbor = (cand, cand_report)
        if best_neighbor is None:
            return SearchResult(table, report, report.passed, True, iterations)
        table, report = best_neighbor
    return SearchResult(table, report, report.passed, False, iterations)


@dataclass(frozen=True)
class TableEntry:
    """One record of a tables file: a named table plus its target."""

    name: str
    players: int
    table: PayoffTable2 | PayoffTable3
    target: BalanceTarget


def load_table_entries(source: str | Path) -> list[TableEntry]:
    """Parse a tables file: a JSON array of
    {"name", "players": 2|3, "table": {...}, "target": {p, mu, p_tol, mu_tol}}.
    """
    text = Path(source).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidTableError(f"tables file is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise InvalidTableError("tables file must hold a JSON array")
    entries: list[TableEntry] = []
    for pos, item in enumerate(data):
        if not isinstance(item, dict):
            raise InvalidTableError(f"entry {pos} is not an object")
        try:
            name = str(item["name"])
            players = int(item["players"])
            table_data = item["table"]
            target_data = item["target"]
        except KeyError as exc:
            raise InvalidTableError(f"entry {pos} missing key {exc.args[0]!r}") from exc
        if players == 2:
            table: PayoffTable2 | PayoffTable3 = PayoffTable2.from_dict(table_data)
        elif players == 3:
            table = PayoffTable3.from_dict(table_data)
        else:
            raise InvalidTableError(f"entry {pos}: players must be 2 or 3, got {players}")
        try:
            target = BalanceTarget(
                p=float(target_data["p"]),
                mu=float(target_data["mu"]),
                p_tol=float(target_data["p_tol"]),
                mu_tol=float(target_data["mu_tol"]),
            )
        except KeyError as exc:
            raise InvalidTableError(f"entry {pos} target missing {exc.args[0]!r}") from exc
        entries.append(TableEntry(name=name, players=players, table=table, target=target))
    return entries
