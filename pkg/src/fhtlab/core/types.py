"""Genotypes, individuals, populations, and run configuration.

All types here are immutable after construction (genotype arrays are made
read-only), so they can be shared freely between concurrent runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from fhtlab.errors import ConfigError, ShapeError
from fhtlab.core.rng import RandomStream


class BitString:
    """Fixed-length vector of 0/1 genes."""

    __slots__ = ("_bits",)

    def __init__(self, bits):
        arr = np.asarray(bits)
        if arr.ndim != 1:
            raise ShapeError("bit string must be one-dimensional")
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ShapeError("every gene must be 0 or 1")
        arr = arr.astype(np.uint8)
        arr.setflags(write=False)
        self._bits = arr

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "BitString":
        # Engine-internal constructor: caller guarantees a fresh uint8 0/1 array.
        obj = object.__new__(cls)
        arr.setflags(write=False)
        obj._bits = arr
        return obj

    @property
    def bits(self) -> np.ndarray:
        return self._bits

    def __len__(self) -> int:
        return self._bits.size

    def __eq__(self, other) -> bool:
        return isinstance(other, BitString) and np.array_equal(self._bits, other._bits)

    def __hash__(self) -> int:
        return hash(self._bits.tobytes())

    def __repr__(self) -> str:
        s = "".join(map(str, self._bits.tolist()))
        if len(s) > 40:
            s = s[:37] + "..."
        return f"BitString({s})"


class Tour:
    """Permutation of city labels 1..n."""

    __slots__ = ("_order",)

    def __init__(self, order):
        arr = np.asarray(order, dtype=np.int64)
        if arr.ndim != 1:
            raise ShapeError("tour must be one-dimensional")
        n = arr.size
        if n == 0 or not np.array_equal(np.sort(arr), np.arange(1, n + 1)):
            raise ShapeError("tour must be a permutation of 1..n")
        arr = arr.copy()
        arr.setflags(write=False)
        self._order = arr

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "Tour":
        obj = object.__new__(cls)
        arr.setflags(write=False)
        obj._order = arr
        return obj

    @property
    def order(self) -> np.ndarray:
        return self._order

    def __len__(self) -> int:
        return self._order.size

    def __eq__(self, other) -> bool:
        return isinstance(other, Tour) and np.array_equal(self._order, other._order)

    def __hash__(self) -> int:
        return hash(self._order.tobytes())

    def __repr__(self) -> str:
        return f"Tour({tuple(self._order.tolist())})"


Genotype = BitString | Tour


@dataclass(frozen=True)
class Individual:
    """A genotype together with its cached exact fitness."""

    genotype: Genotype
    fitness: int


class Population:
    """Exactly mu individuals plus cached best-fitness statistics.

    ``best_count`` is the number of members whose fitness equals
    ``best_fitness`` under the problem's optimization direction.
    """

    __slots__ = ("members", "best_fitness", "best_count", "_matrix", "_fitness")

    def __init__(self, members: tuple[Individual, ...], best_fitness: int,
                 best_count: int, _matrix: np.ndarray | None = None,
                 _fitness: np.ndarray | None = None):
        self.members = members
        self.best_fitness = best_fitness
        self.best_count = best_count
        self._matrix = _matrix
        self._fitness = _fitness

    @classmethod
    def from_members(cls, members: tuple[Individual, ...], maximize: bool) -> "Population":
        if not members:
            raise ConfigError("population must contain at least one individual")
        fits = np.array([m.fitness for m in members], dtype=np.int64)
        best = int(fits.max() if maximize else fits.min())
        count = int((fits == best).sum())
        return cls(members, best, count, _fitness=fits)

    def genotype_matrix(self) -> np.ndarray:
        """Stacked genotype rows; cached because the engine reads it every step."""
        if self._matrix is None:
            rows = [m.genotype.bits if isinstance(m.genotype, BitString) else m.genotype.order
                    for m in self.members]
            self._matrix = np.stack(rows)
        return self._matrix

    def fitness_vector(self) -> np.ndarray:
        if self._fitness is None:
            self._fitness = np.array([m.fitness for m in self.members], dtype=np.int64)
        return self._fitness

    def __len__(self) -> int:
        return len(self.members)

    def __repr__(self) -> str:
        return (f"Population(mu={len(self.members)}, best_fitness={self.best_fitness}, "
                f"best_count={self.best_count})")


class Variant(str, Enum):
    """Which generation-stepping rule a run uses."""

    KNAPSACK1 = "knapsack1"   # bit-flip p=1/n, non-best-parent rejection
    MAXSAT2 = "maxsat2"       # bit-flip p=1/2, no rejection
    TSP3 = "tsp3"             # Poisson 2-opt, non-best-parent rejection


UNIFORM_RANDOM = "uniform-random"


@dataclass(frozen=True)
class EaConfig:
    """Algorithm variant plus every knob a single run needs."""

    variant: Variant
    mu: int
    lambda_: int
    seed: int
    max_generations: int
    poisson_lambda: float | None = None
    initial_population: tuple[Genotype, ...] | str = UNIFORM_RANDOM

    def __post_init__(self):
        if self.mu < 1:
            raise ConfigError(f"mu must be >= 1, got {self.mu}")
        if self.lambda_ < 1:
            raise ConfigError(f"lambda must be >= 1, got {self.lambda_}")
        if self.max_generations < 1:
            raise ConfigError(f"max_generations must be >= 1, got {self.max_generations}")
        if int(self.seed) < 0:
            raise ConfigError(f"seed must be non-negative, got {self.seed}")
        if self.variant is Variant.TSP3:
            if self.poisson_lambda is None or self.poisson_lambda <= 0:
                raise ConfigError("tsp3 requires a positive poisson_lambda")
        elif self.poisson_lambda is not None:
            raise ConfigError(f"poisson_lambda is only meaningful for tsp3, got variant {self.variant.value}")
        if not isinstance(self.initial_population, str):
            object.__setattr__(self, "initial_population", tuple(self.initial_population))
        elif self.initial_population != UNIFORM_RANDOM:
            raise ConfigError(f"initial_population must be explicit genotypes or {UNIFORM_RANDOM!r}")


# Cap on rejection-sampling attempts when drawing a uniform feasible knapsack
# genotype; instances with a tiny feasible fraction need an explicit start.
_UNIFORM_FEASIBLE_ATTEMPTS = 100_000


def population_init(config: EaConfig, instance, rng: RandomStream) -> Population:
    """Build the generation-0 population from the config's initial spec.

    Explicit genotypes are validated against the instance; the uniform
    option draws uniform bit strings (resampled until feasible for the
    knapsack) or uniform random permutations via unbiased shuffle.
    """
    n = instance.n
    members = []
    if isinstance(config.initial_population, tuple):
        if len(config.initial_population) != config.mu:
            raise ConfigError(
                f"explicit initial population has {len(config.initial_population)} genotypes, expected mu={config.mu}")
        for g in config.initial_population:
            if len(g) != n:
                raise ConfigError(f"initial genotype length {len(g)} does not match n={n}")
            fitness = instance.fitness(g)
            if fitness is None:
                raise ConfigError("initial knapsack genotype is infeasible")
            members.append(Individual(g, int(fitness)))
    elif config.variant is Variant.TSP3:
        for _ in range(config.mu):
            order = np.arange(1, n + 1, dtype=np.int64)
            rng.shuffle(order)
            tour = Tour._trusted(order)
            members.append(Individual(tour, int(instance.fitness(tour))))
    else:
        for _ in range(config.mu):
            for _ in range(_UNIFORM_FEASIBLE_ATTEMPTS):
                bits = BitString._trusted(rng.bernoulli_mask(n, 0.5).astype(np.uint8))
                fitness = instance.fitness(bits)
                if fitness is not None:
                    break
            else:
                raise ConfigError(
                    "could not draw a feasible uniform genotype; supply an explicit initial population")
            members.append(Individual(bits, int(fitness)))
    return Population.from_members(tuple(members), instance.maximize)
