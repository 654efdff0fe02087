"""Tours over cities in convex position, labeled 1..n along the hull.

With every city a hull vertex, tour length reduces to counting positions
whose successor is not a hull neighbor, so instances carry no coordinates:
the label order is the complete fitness model.  A position is in correct
order when the labels at it and its cyclic successor differ by 1, or form
the wrap-around pair {1, n}; the optimum value is 0 and, for n > 5, the
reachable fitness values are {0, 2, 3, ..., n}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fhtlab.core.types import Tour
from fhtlab.errors import ConfigError, ShapeError


@dataclass(frozen=True)
class ConvexTspInstance:
    n: int

    maximize = False
    genotype_kind = "tour"
    optimum_fitness = 0

    def __post_init__(self):
        if self.n <= 5:
            raise ConfigError(f"convex TSP model requires n > 5, got {self.n}")

    def fitness(self, t: Tour) -> int:
        return tsp_fitness(t, self)

    def fitness_batch(self, matrix: np.ndarray) -> np.ndarray:
        """Misorder counts for each row of an (m, n) matrix of tours."""
        n = self.n
        nxt = np.concatenate([matrix[:, 1:], matrix[:, :1]], axis=1)
        d = np.abs(matrix - nxt)
        ok = (d == 1) | (d == n - 1)
        return (n - ok.sum(axis=1)).astype(np.int64)


def tsp_fitness(t: Tour, inst: ConvexTspInstance) -> int:
    """Number of positions whose successor is not a neighbor on the hull."""
    n = inst.n
    if len(t) != n:
        raise ShapeError(f"tour length {len(t)} does not match n={n}")
    order = t.order
    d = np.abs(order - np.roll(order, -1))
    ok = (d == 1) | (d == n - 1)
    return int(n - ok.sum())


def two_opt_inversion(t: Tour, i: int, j: int) -> Tour:
    """Reverse tour positions i..j (1-based, i < j); an involution."""
    n = len(t)
    if not (1 <= i < j <= n):
        raise ConfigError(f"inversion needs 1 <= i < j <= n, got i={i}, j={j}, n={n}")
    order = t.order.copy()
    order[i - 1:j] = order[i - 1:j][::-1]
    return Tour._trusted(order)


def tsp_value_space(inst: ConvexTspInstance) -> np.ndarray:
    """Reachable fitness values {0, 2, 3, ..., n}; value 1 is unreachable."""
    return np.concatenate([[0], np.arange(2, inst.n + 1)]).astype(np.int64)
