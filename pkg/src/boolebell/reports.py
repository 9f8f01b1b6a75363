"""Inequality reports: lists of checked clauses with a shared tolerance.

Every inequality family in this package reports its result as an
InequalityReport, a flat list of clauses ``lhs <= rhs`` with the slack
``rhs - lhs``.  A clause passes when its slack is at least -SLACK_TOL, so
exact boundary cases (slack 0) count as satisfied and floating-point dust
cannot produce false violations.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

SLACK_TOL = 1e-12


@dataclass(frozen=True)
class Clause:
    description: str
    lhs: float
    rhs: float
    satisfied: bool
    slack: float

    def to_dict(self) -> dict:
        return {
            "description": self.description,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "satisfied": self.satisfied,
            "slack": self.slack,
        }


@dataclass(frozen=True)
class InequalityReport:
    family: str
    clauses: tuple[Clause, ...]
    all_satisfied: bool

    def violated_clauses(self) -> tuple[Clause, ...]:
        return tuple(c for c in self.clauses if not c.satisfied)

    def worst_clause(self) -> Clause:
        return min(self.clauses, key=lambda c: c.slack)

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "clauses": [c.to_dict() for c in self.clauses],
            "all_satisfied": self.all_satisfied,
        }


def make_clause(description: str, lhs: float, rhs: float) -> Clause:
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs
    return Clause(description, lhs, rhs, slack >= -SLACK_TOL, slack)


def make_report(family: str, clauses: Iterable[Clause]) -> InequalityReport:
    clauses = tuple(clauses)
    return InequalityReport(family, clauses, all(c.satisfied for c in clauses))
