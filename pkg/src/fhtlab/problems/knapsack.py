"""Knapsack instances with favorably correlated weights.

Maximize the total value of selected items subject to a weight capacity.
The derived quantities feed the runtime bound evaluators: they come from
exhaustive enumeration of all bit strings up to a configurable cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from fhtlab.core.types import BitString
from fhtlab.errors import ConfigError, EnumerationLimitError, ModelMismatchError, ShapeError

ENUMERATION_CAP = 24
_CHUNK_BITS = 16


@dataclass(frozen=True)
class KnapsackInstance:
    """Item values/weights and a capacity; fitness is the selected value.

    ``favorably_correlated`` records whether v_i >= v_j and w_i <= w_j holds
    for every i < j; it is computed at construction, and the derived-quantity
    enumerator requires it.
    """

    values: tuple[int, ...]
    weights: tuple[int, ...]
    capacity: int

    maximize = True
    genotype_kind = "bits"

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
        if len(self.values) != len(self.weights):
            raise ConfigError("values and weights must have equal length")
        if not self.values:
            raise ConfigError("instance needs at least one item")
        if any(v <= 0 for v in self.values) or any(w <= 0 for w in self.weights):
            raise ConfigError("item values and weights must be positive")
        if self.capacity <= 0:
            raise ConfigError("capacity must be positive")

    @property
    def n(self) -> int:
        return len(self.values)

    @cached_property
    def favorably_correlated(self) -> bool:
        v, w = self.values, self.weights
        return all(v[i] >= v[i + 1] for i in range(self.n - 1)) and \
            all(w[i] <= w[i + 1] for i in range(self.n - 1))

    @cached_property
    def _value_arr(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)

    @cached_property
    def _weight_arr(self) -> np.ndarray:
        return np.asarray(self.weights, dtype=np.int64)

    def fitness(self, x: BitString) -> int | None:
        """Total value if the selection fits the capacity, else None."""
        return knapsack_fitness(x, self)

    def fitness_batch(self, matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Vectorized fitness over rows: (values, feasible mask)."""
        vals = matrix @ self._value_arr
        feasible = (matrix @ self._weight_arr) <= self.capacity
        return vals, feasible


def knapsack_fitness(x: BitString, inst: KnapsackInstance) -> int | None:
    """Feasible selections return their value; infeasible ones return None."""
    if len(x) != inst.n:
        raise ShapeError(f"bit string length {len(x)} does not match n={inst.n}")
    bits = x.bits
    if int(bits @ inst._weight_arr) > inst.capacity:
        return None
    return int(bits @ inst._value_arr)


@dataclass(frozen=True)
class KnapsackDerived:
    """Enumerated quantities the knapsack bound formulas consume.

    p2 is the probability that a feasible solution has all zeros after the
    optimum's 1-prefix, (2^q - 1) / N; p1 is its complement.  d_min is the
    smallest positive difference between distinct item values (None when all
    values are equal) and v_min the smallest item value.
    """

    q: int
    feasible_count: int
    p1: float
    p2: float
    d_min: int | None
    v_min: int
    optimum_fitness: int


def _enumerate_feasible(inst: KnapsackInstance) -> tuple[int, int, np.ndarray]:
    """Scan all 2^n bit strings in chunks: (N, max value, distinct feasible values)."""
    n = inst.n
    total = 1 << n
    chunk = 1 << min(n, _CHUNK_BITS)
    shifts = np.arange(n, dtype=np.uint32)
    count = 0
    best = -1
    distinct: set[int] = set()
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = ((codes[:, None] >> shifts) & 1).astype(np.int64)
        vals, feasible = inst.fitness_batch(bits)
        vals = vals[feasible]
        count += int(feasible.sum())
        if vals.size:
            best = max(best, int(vals.max()))
            distinct.update(np.unique(vals).tolist())
    return count, best, np.array(sorted(distinct), dtype=np.int64)


def knapsack_derive(inst: KnapsackInstance, cap: int = ENUMERATION_CAP) -> KnapsackDerived:
    """Exhaustively derive q, N, p1, p2, d_min, v_min and the optimum.

    Requires the favorably-correlated property and an optimum of prefix form
    (1^q 0^(n-q)); anything else violates the bound model's assumptions.
    """
    if not inst.favorably_correlated:
        raise ConfigError("derivation requires favorably correlated values/weights")
    if inst.n > cap:
        raise EnumerationLimitError(
            f"n={inst.n} exceeds the enumeration cap {cap}; supply derived quantities explicitly")
    count, best, _ = _enumerate_feasible(inst)
    # Prefix selections (1^q 0^(n-q)) gain value while feasible, so the longest
    # feasible prefix is the best one; the model holds iff it attains the optimum.
    q = 0
    weight = 0
    value = 0
    for i in range(inst.n):
        weight += inst.weights[i]
        if weight > inst.capacity:
            break
        value += inst.values[i]
        q = i + 1
    if value != best:
        raise ModelMismatchError(
            f"no prefix-form optimum: best prefix value {value}, enumerated optimum {best}")
    uniq = sorted(set(inst.values))
    d_min = min(b - a for a, b in zip(uniq, uniq[1:])) if len(uniq) > 1 else None
    p2 = float(((1 << q) - 1) / count)
    return KnapsackDerived(
        q=q,
        feasible_count=count,
        p1=1.0 - p2,
        p2=p2,
        d_min=d_min,
        v_min=min(inst.values),
        optimum_fitness=best,
    )


def knapsack_value_space(inst: KnapsackInstance, cap: int = ENUMERATION_CAP) -> np.ndarray:
    """Sorted distinct fitness values over all feasible selections."""
    if inst.n > cap:
        raise EnumerationLimitError(
            f"n={inst.n} exceeds the enumeration cap {cap}; supply the value space explicitly")
    _, _, values = _enumerate_feasible(inst)
    return values
