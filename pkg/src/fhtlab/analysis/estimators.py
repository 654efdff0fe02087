"""Batch estimators over gain traces.

Aggregation over a batch of N runs: mean hitting time, largest hitting
time, the mean longest zero-gain interval (the empirical stand-in for the
smallest window length with guaranteed expected progress), and the smallest
non-zero gain ever observed (the empirical minimum fitness gap).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from fhtlab.analysis.gains import GainTrace, longest_zero_gain_interval
from fhtlab.errors import EstimationError


@dataclass(frozen=True)
class EstimateSummary:
    t0_hat: float          # mean first hitting time
    t_max: int             # largest first hitting time
    k_hat: float           # mean longest zero-gain interval
    alpha_hat: int | None  # smallest non-zero gain, None when no gain was non-zero
    run_count: int
    censored_count: int


def estimate_summary(traces: Sequence[GainTrace], censored_count: int = 0) -> EstimateSummary:
    """Summary statistics over uncensored traces.

    Valid estimates require censored_count == 0; the count is carried so
    callers can surface partial batches explicitly.
    """
    if not traces:
        raise EstimationError("no uncensored traces to summarize")
    fhts = [t.fht for t in traces]
    intervals = [longest_zero_gain_interval(t) for t in traces]
    alpha_hat: int | None = None
    for t in traces:
        nz = t.gains[t.gains > 0]
        if nz.size:
            m = int(nz.min())
            alpha_hat = m if alpha_hat is None else min(alpha_hat, m)
    return EstimateSummary(
        t0_hat=float(np.mean(fhts)),
        t_max=int(max(fhts)),
        k_hat=float(np.mean(intervals)),
        alpha_hat=alpha_hat,
        run_count=len(traces),
        censored_count=int(censored_count),
    )


@dataclass(frozen=True)
class GainSample:
    """Empirical k-step potential drop at one potential level."""

    mean: float | None
    count: int
    std_error: float | None


def empirical_multiple_gain(traces: Iterable[GainTrace], k: int,
                            potential_value: int) -> GainSample:
    """Sample mean of potential drops over k generations at a given level.

    Every trace position t with potential equal to ``potential_value``
    contributes potentials[t] - potentials[t+k]; windows crossing the hit
    use potential 0 past it (the hit is absorbing, and discarding those
    windows would bias the estimate low near the optimum).
    """
    if k < 1:
        raise EstimationError(f"window length k must be >= 1, got {k}")
    samples: list[np.ndarray] = []
    for trace in traces:
        pot = trace.potentials
        idx = np.nonzero(pot == potential_value)[0]
        if not idx.size:
            continue
        target = idx + k
        future = np.where(target <= trace.fht, pot[np.minimum(target, trace.fht)], 0)
        samples.append((pot[idx] - future).astype(np.float64))
    if not samples:
        return GainSample(mean=None, count=0, std_error=None)
    data = np.concatenate(samples)
    count = int(data.size)
    mean = float(data.mean())
    std_error = float(data.std(ddof=1) / math.sqrt(count)) if count > 1 else None
    return GainSample(mean=mean, count=count, std_error=std_error)
