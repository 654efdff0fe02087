from fhtlab.core.rng import RandomStream, derive_seed, rng_create
from fhtlab.core.types import (
    BitString,
    EaConfig,
    Genotype,
    Individual,
    Population,
    Tour,
    UNIFORM_RANDOM,
    Variant,
    population_init,
)

__all__ = [
    "BitString", "EaConfig", "Genotype", "Individual", "Population", "Tour",
    "UNIFORM_RANDOM", "Variant", "RandomStream", "derive_seed", "rng_create",
    "population_init",
]
