import math

import numpy as np
import pytest

from fhtlab.core import derive_seed, rng_create
from fhtlab.errors import ConfigError


def test_equal_seeds_give_identical_draws():
    a = rng_create(42)
    b = rng_create(42)
    assert [a.uniform() for _ in range(1000)] == [b.uniform() for _ in range(1000)]


def test_different_seeds_differ():
    assert rng_create(1).uniform() != rng_create(2).uniform()


def test_bernoulli_degenerate_probabilities():
    rng = rng_create(3)
    assert not any(rng.bernoulli(0.0) for _ in range(200))
    assert all(rng.bernoulli(1.0) for _ in range(200))


def test_poisson_mean_matches_distribution():
    # law-of-large-numbers check: mean of 10^6 Poisson(1) draws is 1.0 +- 0.01
    rng = rng_create(123)
    draws = rng.poissons(1.0, 1_000_000)
    assert abs(float(draws.mean()) - 1.0) < 0.01


def test_poisson_scalar_and_vector_paths_agree():
    a = rng_create(9)
    b = rng_create(9)
    scalar = [a.poisson(1.0) for _ in range(500)]
    vector = b.poissons(1.0, 500).tolist()
    assert scalar == vector


def test_poisson_zero_probability_mass():
    rng = rng_create(77)
    draws = rng.poissons(1.0, 1_000_000)
    assert abs(float((draws == 0).mean()) - math.exp(-1)) < 0.003


def test_poisson_requires_positive_parameter():
    with pytest.raises(ConfigError):
        rng_create(0).poisson(0.0)


def test_randint_range_and_determinism():
    rng = rng_create(5)
    draws = rng.randints(0, 7, 2000)
    assert draws.min() >= 0 and draws.max() < 7
    assert set(draws.tolist()) == set(range(7))


def test_shuffle_is_a_permutation_and_unbiased_enough():
    rng = rng_create(11)
    counts = {}
    for _ in range(6000):
        arr = np.array([1, 2, 3])
        rng.shuffle(arr)
        counts[tuple(arr.tolist())] = counts.get(tuple(arr.tolist()), 0) + 1
    assert len(counts) == 6
    for c in counts.values():
        assert 800 < c < 1200  # each of the 6 orders near 1000


def test_negative_seed_rejected():
    with pytest.raises(ConfigError):
        rng_create(-1)


def test_derive_seed_deterministic_and_distinct():
    assert derive_seed(7, 20, 3) == derive_seed(7, 20, 3)
    seeds = {derive_seed(7, n, i) for n in range(5) for i in range(50)}
    assert len(seeds) == 250
    assert derive_seed(7, 1, 2) != derive_seed(7, 2, 1)
