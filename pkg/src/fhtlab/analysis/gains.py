"""Gain traces: distance-to-optimum series and their one-step differences.

The potential of a generation is the best individual's distance to the
optimum: f(x_opt) - f(x_t) for maximization, plain f(x_t) for TSP-style
minimization with optimum 0.  Elitism makes every gain non-negative, and
the potential at the hitting generation is 0 by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fhtlab.ea.engine import RunOutcome
from fhtlab.errors import EstimationError


@dataclass(frozen=True)
class GainTrace:
    potentials: np.ndarray  # length fht+1, potentials[fht] == 0
    gains: np.ndarray       # length fht, gains[t] = potentials[t] - potentials[t+1]
    fht: int


def gain_trace(outcome: RunOutcome, optimum_fitness: int, maximize: bool) -> GainTrace:
    """Potentials and consecutive differences for t = 0..fht."""
    if outcome.fht is None:
        raise EstimationError("cannot build a gain trace from a censored run")
    best = np.array([ev.best_fitness for ev in outcome.events[:outcome.fht + 1]],
                    dtype=np.int64)
    potentials = optimum_fitness - best if maximize else best
    gains = potentials[:-1] - potentials[1:]
    potentials.setflags(write=False)
    gains.setflags(write=False)
    return GainTrace(potentials=potentials, gains=gains, fht=outcome.fht)


def longest_zero_gain_interval(trace: GainTrace) -> int:
    """Length of the longest run of consecutive zero gains (0 when none).

    Counts generations strictly between improvements; a leading interval
    before the first improvement and a trailing one before the final hit
    both qualify.
    """
    longest = 0
    current = 0
    for g in trace.gains:
        if g == 0:
            current += 1
            if current > longest:
                longest = current
        else:
            current = 0
    return longest
