"""Reachable-fitness-value spaces and their adjacent gaps."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fhtlab.errors import ConfigError
from fhtlab.problems.knapsack import ENUMERATION_CAP, KnapsackInstance, knapsack_value_space
from fhtlab.problems.maxsat import MaxSatInstance, maxsat_value_space
from fhtlab.problems.tsp import ConvexTspInstance, tsp_value_space


@dataclass(frozen=True)
class FitnessValueSpace:
    """Sorted distinct reachable fitness values with min/max adjacent gaps."""

    values: tuple[int, ...]
    alpha: int
    beta: int
    direction: str  # "maximize" | "minimize"

    def __post_init__(self):
        if len(self.values) < 2:
            raise ConfigError("fitness value space needs at least two reachable values")
        if self.direction not in ("maximize", "minimize"):
            raise ConfigError(f"unknown direction {self.direction!r}")


def _from_values(values: np.ndarray, direction: str) -> FitnessValueSpace:
    if values.size < 2:
        raise ConfigError("degenerate fitness space: fewer than two reachable values")
    gaps = np.diff(values)
    return FitnessValueSpace(
        values=tuple(int(v) for v in values),
        alpha=int(gaps.min()),
        beta=int(gaps.max()),
        direction=direction,
    )


def fitness_value_space(instance, cap: int = ENUMERATION_CAP) -> FitnessValueSpace:
    """Enumerated value space for knapsack/MAX-SAT, analytic for convex TSP."""
    if isinstance(instance, KnapsackInstance):
        return _from_values(knapsack_value_space(instance, cap), "maximize")
    if isinstance(instance, MaxSatInstance):
        return _from_values(maxsat_value_space(instance, cap), "maximize")
    if isinstance(instance, ConvexTspInstance):
        return _from_values(tsp_value_space(instance), "minimize")
    raise ConfigError(f"unknown instance type {type(instance).__name__}")
