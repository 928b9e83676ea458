"""Checkers for the product bounds that constrain forcing probabilities.

Two-party form: P_A(i)* P_B(i)* >= P_i. Multi-party form over M parties
and N outcomes: the product of all parties' forcing probabilities for any
outcome is at least 1/N, which for a bias-symmetric protocol means each is
at least (1/N)^(1/M). Classical two-party dice rolling obeys the weaker
inequality (1 - Pbar_A(i))(1 - Pbar_B(j)) <= (N-2)/N + delta_ij / N.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Sequence

from .errors import DimensionMismatchError, ParameterRangeError

RATIONAL_TOL = 1e-12  # reports fed by exact arithmetic
OPTIMIZER_TOL = 1e-9  # reports fed by numeric optimization


@dataclass(frozen=True)
class BiasReport:
    """Per-party, per-outcome maximal forcing probabilities plus honest values."""

    n_outcomes: int
    n_parties: int
    force_probs: tuple[tuple[float, ...], ...]  # [party][outcome]
    honest_probs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "force_probs", tuple(tuple(float(x) for x in row) for row in self.force_probs)
        )
        object.__setattr__(self, "honest_probs", tuple(float(x) for x in self.honest_probs))
        if len(self.force_probs) != self.n_parties:
            raise DimensionMismatchError(
                f"expected {self.n_parties} force rows, got {len(self.force_probs)}"
            )
        if any(len(row) != self.n_outcomes for row in self.force_probs):
            raise DimensionMismatchError("every force row must have n_outcomes entries")
        if len(self.honest_probs) != self.n_outcomes:
            raise DimensionMismatchError(
                f"expected {self.n_outcomes} honest probabilities, got {len(self.honest_probs)}"
            )
        for row in self.force_probs:
            if any(not 0.0 <= x <= 1.0 for x in row):
                raise ParameterRangeError("forcing probabilities must lie in [0, 1]")
        if abs(sum(self.honest_probs) - 1.0) > RATIONAL_TOL:
            raise ParameterRangeError("honest probabilities must sum to 1")

    def to_json_dict(self) -> dict:
        return {
            "n_outcomes": self.n_outcomes,
            "n_parties": self.n_parties,
            "force_probs": [list(row) for row in self.force_probs],
            "honest_probs": list(self.honest_probs),
        }

    @classmethod
    def from_json_dict(cls, d: dict) -> "BiasReport":
        return cls(
            n_outcomes=int(d["n_outcomes"]),
            n_parties=int(d["n_parties"]),
            force_probs=tuple(tuple(row) for row in d["force_probs"]),
            honest_probs=tuple(d["honest_probs"]),
        )


def kitaev_two_party(report: BiasReport, tol: float = RATIONAL_TOL) -> list[bool]:
    """Per outcome: does P_A(i)* P_B(i)* >= P_i hold?"""
    if report.n_parties != 2:
        raise DimensionMismatchError(
            f"two-party check needs exactly 2 parties, got {report.n_parties}"
        )
    a, b = report.force_probs
    return [
        a[i] * b[i] >= report.honest_probs[i] - tol for i in range(report.n_outcomes)
    ]


def kitaev_multi(report: BiasReport, tol: float = RATIONAL_TOL) -> list[bool]:
    """Per outcome: does the all-party product reach 1/N?"""
    if report.n_parties < 2:
        raise DimensionMismatchError(f"need at least 2 parties, got {report.n_parties}")
    floor = 1.0 / report.n_outcomes
    return [
        prod(report.force_probs[j][i] for j in range(report.n_parties)) >= floor - tol
        for i in range(report.n_outcomes)
    ]


def symmetric_min(n_outcomes: int, n_parties: int) -> float:
    """Minimal symmetric forcing probability allowed by the product bound."""
    if n_outcomes < 2 or n_parties < 2:
        raise ParameterRangeError("need at least 2 outcomes and 2 parties")
    return (1.0 / n_outcomes) ** (1.0 / n_parties)


def classical_dr_check(
    pa: Sequence[float], pb: Sequence[float], n: int, tol: float = RATIONAL_TOL
) -> list[list[bool]]:
    """Entrywise check of the classical two-party constraint matrix.

    Entry (i, j) is True iff (1 - Pbar_A(i))(1 - Pbar_B(j)) stays below
    (N-2)/N + delta_ij / N. At N = 2 the off-diagonal bound is zero, so at
    least one party must force with certainty: the classical coin-flipping
    impossibility.
    """
    if len(pa) != n or len(pb) != n:
        raise DimensionMismatchError(f"expected two lists of length {n}")
    if any(not 0.0 <= x <= 1.0 for x in list(pa) + list(pb)):
        raise ParameterRangeError("forcing probabilities must lie in [0, 1]")
    base = (n - 2) / n
    return [
        [
            (1.0 - pa[i]) * (1.0 - pb[j]) <= base + (1.0 / n if i == j else 0.0) + tol
            for j in range(n)
        ]
        for i in range(n)
    ]
