"""Width-k MAX-SAT instances: maximize the number of satisfied clauses.

Literals are signed 1-based variable indices (+i for x_i, -i for its
negation).  The clause width is validated but the fitness oracle itself is
width-agnostic.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from fhtlab.core.types import BitString
from fhtlab.errors import ConfigError, EnumerationLimitError, ShapeError

ENUMERATION_CAP = 24
_CHUNK_BITS = 16


@dataclass(frozen=True)
class MaxSatInstance:
    n: int
    clause_width: int
    clauses: tuple[tuple[int, ...], ...]

    maximize = True
    genotype_kind = "bits"

    def __post_init__(self):
        object.__setattr__(self, "clauses", tuple(tuple(int(l) for l in c) for c in self.clauses))
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.clause_width < 1:
            raise ConfigError("clause width must be >= 1")
        for c in self.clauses:
            if len(c) != self.clause_width:
                raise ConfigError(f"clause {c} does not have width {self.clause_width}")
            for lit in c:
                if lit == 0 or abs(lit) > self.n:
                    raise ConfigError(f"literal {lit} out of range for n={self.n}")

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    @cached_property
    def _literal_tables(self) -> tuple[np.ndarray, np.ndarray]:
        # (s, k) variable positions and the gene value that satisfies each literal.
        arr = np.asarray(self.clauses, dtype=np.int64).reshape(len(self.clauses), self.clause_width)
        return np.abs(arr) - 1, (arr > 0).astype(np.uint8)

    def fitness(self, x: BitString) -> int:
        return maxsat_fitness(x, self)

    def fitness_batch(self, matrix: np.ndarray) -> np.ndarray:
        """Satisfied-clause counts for each row of an (m, n) gene matrix."""
        if not self.clauses:
            return np.zeros(matrix.shape[0], dtype=np.int64)
        var, want = self._literal_tables
        satisfied = (matrix[:, var] == want).any(axis=2)
        return satisfied.sum(axis=1).astype(np.int64)


def maxsat_fitness(x: BitString, inst: MaxSatInstance) -> int:
    """Number of clauses with at least one true literal under x."""
    if len(x) != inst.n:
        raise ShapeError(f"bit string length {len(x)} does not match n={inst.n}")
    if not inst.clauses:
        return 0
    var, want = inst._literal_tables
    return int((x.bits[var] == want).any(axis=1).sum())


@dataclass(frozen=True)
class MaxSatDerived:
    """Globally optimal assignment count and the optimal clause count."""

    optimum_count: int
    optimum_fitness: int


def maxsat_derive(inst: MaxSatInstance, cap: int = ENUMERATION_CAP) -> MaxSatDerived:
    """Scan all 2^n assignments for the maximum fitness and its multiplicity."""
    if inst.n > cap:
        raise EnumerationLimitError(
            f"n={inst.n} exceeds the enumeration cap {cap}; supply the optimum count explicitly")
    shifts = np.arange(inst.n, dtype=np.uint32)
    total = 1 << inst.n
    chunk = 1 << min(inst.n, _CHUNK_BITS)
    best = -1
    count = 0
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = ((codes[:, None] >> shifts) & 1).astype(np.uint8)
        fits = inst.fitness_batch(bits)
        m = int(fits.max())
        if m > best:
            best = m
            count = int((fits == m).sum())
        elif m == best:
            count += int((fits == m).sum())
    return MaxSatDerived(optimum_count=count, optimum_fitness=best)


def maxsat_value_space(inst: MaxSatInstance, cap: int = ENUMERATION_CAP) -> np.ndarray:
    """Sorted distinct satisfied-clause counts over all assignments."""
    if inst.n > cap:
        raise EnumerationLimitError(
            f"n={inst.n} exceeds the enumeration cap {cap}; supply the value space explicitly")
    shifts = np.arange(inst.n, dtype=np.uint32)
    total = 1 << inst.n
    chunk = 1 << min(inst.n, _CHUNK_BITS)
    distinct: set[int] = set()
    for start in range(0, total, chunk):
        codes = np.arange(start, min(start + chunk, total), dtype=np.uint64)
        bits = ((codes[:, None] >> shifts) & 1).astype(np.uint8)
        distinct.update(np.unique(inst.fitness_batch(bits)).tolist())
    return np.array(sorted(distinct), dtype=np.int64)
