"""Generation stepping and full runs for the three elitist (mu+lambda) variants.

Every variant draws each offspring's parent uniformly from the population,
mutates it, and then keeps the best mu of the mu+lambda pool, deleting the
lambda worst with uniformly random tie-breaking among the equal-worst group.

Variant-specific rules:

* knapsack1 - bit flips with probability 1/n.  Infeasible mutants revert to
  the chosen parent's copy (the bound model counts feasible solutions only,
  and reversion keeps the pool size at mu+lambda without distorting
  fitness).  An offspring that strictly improves on the generation-start
  best fitness is also reverted when its parent was not a best individual.
* maxsat2 - bit flips with probability 1/2, no rejection rule.
* tsp3 - s+1 uniform 2-opt inversions with s ~ Poisson(lambda_p), and the
  same non-best-parent rejection rule as knapsack1 (minimization).

"Best individual" in the rejection rule means fitness equality with the
generation-start best: duplicates of the best genotype are interchangeable,
so the test uses fitness, not object identity.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from fhtlab.core.rng import RandomStream, rng_create
from fhtlab.core.types import (
    BitString,
    EaConfig,
    Individual,
    Population,
    Tour,
    Variant,
    population_init,
)
from fhtlab.ea.mutation import unrank_pairs
from fhtlab.errors import ConfigError, ModelMismatchError
from fhtlab.problems.knapsack import KnapsackInstance
from fhtlab.problems.maxsat import MaxSatInstance
from fhtlab.problems.tsp import ConvexTspInstance

_VARIANT_INSTANCE = {
    Variant.KNAPSACK1: KnapsackInstance,
    Variant.MAXSAT2: MaxSatInstance,
    Variant.TSP3: ConvexTspInstance,
}


@dataclass(frozen=True)
class GenerationEvent:
    """Post-selection population statistics for one generation."""

    generation: int
    best_fitness: int
    best_count: int
    hit_optimum: bool


@dataclass(frozen=True)
class RunOutcome:
    """Per-generation events plus the first hitting time of one run.

    ``fht`` is the first generation whose population contains an optimum, or
    None when the run was censored at the generation cap.  ``evaluations``
    reports lambda * fht for readers who count fitness evaluations instead
    of generations.
    """

    events: tuple[GenerationEvent, ...]
    fht: int | None
    seed: int
    lambda_: int

    @property
    def censored(self) -> bool:
        return self.fht is None

    @property
    def evaluations(self) -> int | None:
        return None if self.fht is None else self.fht * self.lambda_


def _check_shapes(instance, config: EaConfig) -> None:
    expected = _VARIANT_INSTANCE[config.variant]
    if not isinstance(instance, expected):
        raise ConfigError(
            f"variant {config.variant.value} runs on {expected.__name__}, got {type(instance).__name__}")


def _make_event(best: int, count: int, generation: int, optimum: int, maximize: bool) -> GenerationEvent:
    if (maximize and best > optimum) or (not maximize and best < optimum):
        raise ModelMismatchError(
            f"population fitness {best} passed the declared optimum {optimum}")
    return GenerationEvent(generation, best, count, best == optimum)


def _tsp_offspring(instance: ConvexTspInstance, parents: np.ndarray, lambda_p: float,
                   rng: RandomStream) -> tuple[np.ndarray, np.ndarray]:
    lam, n = parents.shape
    counts = rng.poissons(lambda_p, lam) + 1
    ms = rng.randints(0, n * (n - 1) // 2, int(counts.sum()))
    i_arr, j_arr = unrank_pairs(ms, n)
    off = parents.copy()
    pos = 0
    for o in range(lam):
        row = off[o]
        for _ in range(counts[o]):
            i = i_arr[pos]
            j = j_arr[pos]
            pos += 1
            row[i - 1:j] = row[i - 1:j][::-1]
    return off, instance.fitness_batch(off)


def step_generation(pop: Population, instance, config: EaConfig, rng: RandomStream, *,
                    optimum_fitness: int, generation: int,
                    debug: bool = False) -> tuple[Population, GenerationEvent]:
    """Produce lambda offspring, apply variant rules, select mu survivors."""
    mu, lam = config.mu, config.lambda_
    maximize = instance.maximize
    n = instance.n
    best0 = pop.best_fitness
    matrix = pop.genotype_matrix()
    fits = pop.fitness_vector()

    parent_idx = rng.randints(0, mu, lam)
    parents = matrix[parent_idx]
    parent_fits = fits[parent_idx]

    if config.variant is Variant.TSP3:
        off, off_fit = _tsp_offspring(instance, parents, config.poisson_lambda, rng)
    else:
        p = 0.5 if config.variant is Variant.MAXSAT2 else 1.0 / n
        flips = rng.bernoulli_mask((lam, n), p)
        off = parents ^ flips
        if config.variant is Variant.KNAPSACK1:
            off_fit, feasible = instance.fitness_batch(off)
            bad = ~feasible
            if bad.any():
                off[bad] = parents[bad]
                off_fit[bad] = parent_fits[bad]
        else:
            off_fit = instance.fitness_batch(off)

    if config.variant is not Variant.MAXSAT2:
        improved = off_fit > best0 if maximize else off_fit < best0
        reject = improved & (parent_fits != best0)
        if reject.any():
            off[reject] = parents[reject]
            off_fit[reject] = parent_fits[reject]

    pool = np.concatenate([matrix, off])
    pool_fit = np.concatenate([fits, off_fit])
    tie = rng.uniforms(mu + lam)
    order = np.lexsort((tie, -pool_fit if maximize else pool_fit))
    keep = order[:mu]
    new_matrix = pool[keep]
    new_fits = pool_fit[keep]
    best = int(new_fits[0])
    best_count = int((new_fits == best).sum())

    if debug:
        ranked = np.sort(pool_fit)
        expected = ranked[lam:] if maximize else ranked[:mu]
        assert np.array_equal(np.sort(new_fits), expected), "selection lost a best member"
        if (best > best0) if maximize else (best < best0):
            accepted = (off_fit > best0 if maximize else off_fit < best0)
            assert (parent_fits[accepted] == best0).all(), \
                "improvement produced by a non-best parent slipped past rejection"

    wrap = Tour._trusted if config.variant is Variant.TSP3 else BitString._trusted
    members = tuple(Individual(wrap(row.copy()), int(f)) for row, f in zip(new_matrix, new_fits))
    new_matrix.setflags(write=False)
    new_pop = Population(members, best, best_count, _matrix=new_matrix, _fitness=new_fits)
    event = _make_event(best, best_count, generation, optimum_fitness, maximize)
    return new_pop, event


def run_ea(instance, config: EaConfig, *, optimum_fitness: int | None = None,
           debug: bool = False) -> RunOutcome:
    """Iterate generations until an optimum appears or the cap is reached.

    Generation 0 is the initial population; fht is the first generation
    whose population contains an optimum (0 when the start already does).
    A capped run comes back censored (fht None), never as a silent hit.
    """
    _check_shapes(instance, config)
    if optimum_fitness is None:
        optimum_fitness = getattr(instance, "optimum_fitness", None)
    if optimum_fitness is None:
        raise ConfigError("optimum_fitness is required (derive it or supply it explicitly)")
    optimum_fitness = int(optimum_fitness)

    rng = rng_create(config.seed)
    pop = population_init(config, instance, rng)
    event = _make_event(pop.best_fitness, pop.best_count, 0, optimum_fitness, instance.maximize)
    events = [event]
    fht: int | None = 0 if event.hit_optimum else None
    if fht is None:
        for t in range(1, config.max_generations + 1):
            pop, event = step_generation(pop, instance, config, rng,
                                         optimum_fitness=optimum_fitness, generation=t,
                                         debug=debug)
            events.append(event)
            if event.hit_optimum:
                fht = t
                break
    return RunOutcome(tuple(events), fht, config.seed, config.lambda_)
