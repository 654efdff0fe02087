import numpy as np
import pytest

from fhtlab.core import (
    BitString,
    EaConfig,
    Individual,
    Population,
    Tour,
    UNIFORM_RANDOM,
    Variant,
    population_init,
    rng_create,
)
from fhtlab.errors import ConfigError, ShapeError
from fhtlab.problems import paper_setup


def test_bitstring_validation():
    assert len(BitString([0, 1, 1])) == 3
    with pytest.raises(ShapeError):
        BitString([0, 2])
    with pytest.raises(ShapeError):
        BitString([[0, 1]])


def test_bitstring_equality_and_hash():
    assert BitString([1, 0]) == BitString([1, 0])
    assert BitString([1, 0]) != BitString([0, 1])
    assert hash(BitString([1, 0])) == hash(BitString([1, 0]))


def test_tour_validation():
    assert len(Tour([2, 1, 3])) == 3
    with pytest.raises(ShapeError):
        Tour([1, 1, 2])
    with pytest.raises(ShapeError):
        Tour([0, 1, 2])


def test_genotypes_are_read_only():
    b = BitString([0, 1])
    with pytest.raises(ValueError):
        b.bits[0] = 1
    t = Tour([2, 1])
    with pytest.raises(ValueError):
        t.order[0] = 1


def test_eaconfig_invariants():
    with pytest.raises(ConfigError):
        EaConfig(variant=Variant.KNAPSACK1, mu=0, lambda_=1, seed=1, max_generations=10)
    with pytest.raises(ConfigError):
        EaConfig(variant=Variant.KNAPSACK1, mu=1, lambda_=1, seed=1, max_generations=10,
                 poisson_lambda=1.0)
    with pytest.raises(ConfigError):
        EaConfig(variant=Variant.TSP3, mu=1, lambda_=1, seed=1, max_generations=10)
    cfg = EaConfig(variant=Variant.TSP3, mu=1, lambda_=1, seed=1, max_generations=10,
                   poisson_lambda=1.0)
    assert cfg.initial_population == UNIFORM_RANDOM


def test_population_init_explicit_all_zeros_knapsack():
    setup = paper_setup("knapsack", 6)
    cfg = EaConfig(variant=Variant.KNAPSACK1, mu=2, lambda_=10, seed=1, max_generations=10,
                   initial_population=setup.initial_population(2))
    pop = population_init(cfg, setup.instance, rng_create(1))
    assert [m.fitness for m in pop.members] == [0, 0]
    assert pop.best_fitness == 0 and pop.best_count == 2


def test_population_init_uniform_bitstrings_shape():
    setup = paper_setup("maxsat", 8)
    cfg = EaConfig(variant=Variant.MAXSAT2, mu=3, lambda_=10, seed=5, max_generations=10)
    pop = population_init(cfg, setup.instance, rng_create(5))
    assert len(pop.members) == 3
    for m in pop.members:
        assert len(m.genotype) == 8
        assert set(m.genotype.bits.tolist()) <= {0, 1}
        assert m.fitness == setup.instance.fitness(m.genotype)


def test_population_init_uniform_knapsack_stays_feasible():
    setup = paper_setup("knapsack", 8)
    cfg = EaConfig(variant=Variant.KNAPSACK1, mu=5, lambda_=10, seed=9, max_generations=10)
    pop = population_init(cfg, setup.instance, rng_create(9))
    for m in pop.members:
        assert setup.instance.fitness(m.genotype) == m.fitness


def test_population_init_paper_tsp_tour():
    setup = paper_setup("tsp", 6)
    cfg = EaConfig(variant=Variant.TSP3, mu=2, lambda_=10, seed=1, max_generations=10,
                   poisson_lambda=1.0, initial_population=setup.initial_population(2))
    pop = population_init(cfg, setup.instance, rng_create(1))
    assert all(m.genotype == Tour([1, 3, 5, 2, 6, 4]) for m in pop.members)


def test_population_init_uniform_tours_are_permutations():
    setup = paper_setup("tsp", 9)
    cfg = EaConfig(variant=Variant.TSP3, mu=4, lambda_=10, seed=2, max_generations=10,
                   poisson_lambda=1.0)
    pop = population_init(cfg, setup.instance, rng_create(2))
    for m in pop.members:
        assert sorted(m.genotype.order.tolist()) == list(range(1, 10))


def test_population_init_rejects_wrong_length():
    setup = paper_setup("knapsack", 6)
    cfg = EaConfig(variant=Variant.KNAPSACK1, mu=1, lambda_=10, seed=1, max_generations=10,
                   initial_population=(BitString([0] * 5),))
    with pytest.raises(ConfigError):
        population_init(cfg, setup.instance, rng_create(1))


def test_population_init_rejects_infeasible_start():
    setup = paper_setup("knapsack", 6)
    heavy = BitString([1, 1, 1, 1, 1, 1])  # weight far above capacity
    cfg = EaConfig(variant=Variant.KNAPSACK1, mu=1, lambda_=10, seed=1, max_generations=10,
                   initial_population=(heavy,))
    with pytest.raises(ConfigError):
        population_init(cfg, setup.instance, rng_create(1))


def test_population_init_wrong_count():
    setup = paper_setup("knapsack", 6)
    cfg = EaConfig(variant=Variant.KNAPSACK1, mu=2, lambda_=10, seed=1, max_generations=10,
                   initial_population=(BitString([0] * 6),))
    with pytest.raises(ConfigError):
        population_init(cfg, setup.instance, rng_create(1))


def test_population_init_deterministic():
    setup = paper_setup("maxsat", 7)
    cfg = EaConfig(variant=Variant.MAXSAT2, mu=4, lambda_=10, seed=13, max_generations=10)
    a = population_init(cfg, setup.instance, rng_create(13))
    b = population_init(cfg, setup.instance, rng_create(13))
    assert [m.genotype for m in a.members] == [m.genotype for m in b.members]


def test_best_count_matches_recount():
    setup = paper_setup("maxsat", 6)
    cfg = EaConfig(variant=Variant.MAXSAT2, mu=6, lambda_=10, seed=3, max_generations=10)
    pop = population_init(cfg, setup.instance, rng_create(3))
    recount = sum(1 for m in pop.members if m.fitness == pop.best_fitness)
    assert pop.best_count == recount
    assert pop.best_fitness == max(m.fitness for m in pop.members)


def test_population_from_members_direction():
    setup = paper_setup("tsp", 7)
    tours = [Tour(np.roll(np.arange(1, 8), k).tolist()) for k in range(3)]
    members = tuple(Individual(t, setup.instance.fitness(t)) for t in tours)
    pop = Population.from_members(members, maximize=False)
    assert pop.best_fitness == 0
    assert pop.best_count == 3
