"""Theory-versus-experiment consistency verdicts.

A theory/empirical pair is consistent when the theoretical quantity exceeds
the empirical one at every n and the two correlate above the threshold
(0.91 by default).  Three pairs are checked: average bound vs mean hitting
time, worst bound vs largest hitting time, and the empirical zero-gain
window vs the theoretical one (k_hat first, so this pair asks k_hat >
klow).  All orderings are reported per n so a user can see which direction
held even when a verdict is inconsistent.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from fhtlab.errors import ConfigError
from fhtlab.harness.experiment import SummaryRow
from fhtlab.harness.stats import pearson

R_MIN_DEFAULT = 0.91

CONSISTENT = "consistent"
INCONSISTENT = "inconsistent"


@dataclass(frozen=True)
class PairCheck:
    """One theory/empirical pair: correlation, per-n orderings, verdict."""

    name: str
    first: str
    second: str
    correlation: float
    ordering: tuple[tuple[int, bool], ...]  # (n, first > second)
    consistent: bool

    @property
    def verdict(self) -> str:
        return CONSISTENT if self.consistent else INCONSISTENT


@dataclass(frozen=True)
class ConsistencyReport:
    rows: tuple[SummaryRow, ...]
    avg: PairCheck
    worst: PairCheck
    k: PairCheck
    r_min: float

    @property
    def overall_consistent(self) -> bool:
        return self.avg.consistent and self.worst.consistent and self.k.consistent

    @property
    def pairs(self) -> tuple[PairCheck, PairCheck, PairCheck]:
        return (self.avg, self.worst, self.k)


def _pair(name: str, first_name: str, second_name: str, rows: Sequence[SummaryRow],
          first: Sequence[float], second: Sequence[float], r_min: float) -> PairCheck:
    r = pearson(first, second)
    ordering = tuple((row.n, a > b) for row, a, b in zip(rows, first, second))
    consistent = r > r_min and all(ok for _, ok in ordering)
    return PairCheck(name=name, first=first_name, second=second_name,
                     correlation=r, ordering=ordering, consistent=consistent)


def consistency_check(rows: Sequence[SummaryRow], r_min: float = R_MIN_DEFAULT) -> ConsistencyReport:
    """Row order does not matter; rows are sorted by n before checking."""
    if len(rows) < 2:
        raise ConfigError("consistency check needs at least two n-points")
    ordered = tuple(sorted(rows, key=lambda r: r.n))
    if len({r.n for r in ordered}) != len(ordered):
        raise ConfigError("duplicate n values in summary rows")
    avg = _pair("avg", "avg_bound", "t0_hat", ordered,
                [r.avg_bound for r in ordered], [r.t0_hat for r in ordered], r_min)
    worst = _pair("worst", "worst_bound", "t_max", ordered,
                  [r.worst_bound for r in ordered], [float(r.t_max) for r in ordered], r_min)
    k = _pair("k", "k_hat", "klow_theoretical", ordered,
              [r.k_hat for r in ordered], [r.klow_theoretical for r in ordered], r_min)
    return ConsistencyReport(rows=ordered, avg=avg, worst=worst, k=k, r_min=r_min)
