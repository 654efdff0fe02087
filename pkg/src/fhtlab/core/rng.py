"""Deterministic randomness used by every stochastic operation.

A ``RandomStream`` is an explicit value threaded through all sampling code;
nothing in the package touches global RNG state.  Two streams built from the
same seed produce bit-identical draw sequences, which is what makes whole
runs and whole experiment batches reproducible.
"""

from __future__ import annotations

import math

import numpy as np

from fhtlab.errors import ConfigError

# Poisson CDF tables, keyed by the distribution parameter.  Built once with
# the sequential-search recurrence and reused by scalar and vector draws so
# both paths invert the exact same table.
_POISSON_CDFS: dict[float, np.ndarray] = {}


def _poisson_cdf(lam: float) -> np.ndarray:
    if lam <= 0.0:
        raise ConfigError(f"Poisson parameter must be positive, got {lam}")
    cdf = _POISSON_CDFS.get(lam)
    if cdf is None:
        terms = []
        p = math.exp(-lam)
        total = p
        terms.append(total)
        k = 0
        while total < 1.0 and p > 0.0 and k < 100_000:
            k += 1
            p *= lam / k
            total += p
            terms.append(total)
        cdf = np.asarray(terms)
        _POISSON_CDFS[lam] = cdf
    return cdf


class RandomStream:
    """Seeded random source backed by a PCG64 generator.

    Poisson draws use CDF inversion by sequential search (exact for the
    small parameters used here, e.g. 1.0), consuming one uniform per draw.
    """

    __slots__ = ("seed", "_gen")

    def __init__(self, seed: int):
        seed = int(seed)
        if seed < 0:
            raise ConfigError(f"seed must be non-negative, got {seed}")
        self.seed = seed
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))

    def uniform(self) -> float:
        return float(self._gen.random())

    def uniforms(self, size) -> np.ndarray:
        return self._gen.random(size)

    def randint(self, low: int, high: int) -> int:
        """Uniform integer in the half-open range [low, high)."""
        return int(self._gen.integers(low, high))

    def randints(self, low: int, high: int, size) -> np.ndarray:
        return self._gen.integers(low, high, size=size)

    def bernoulli(self, p: float) -> bool:
        return bool(self._gen.random() < p)

    def bernoulli_mask(self, shape, p: float) -> np.ndarray:
        """Boolean array with independent True entries of probability p."""
        return self._gen.random(shape) < p

    def poisson(self, lam: float) -> int:
        return int(np.searchsorted(_poisson_cdf(lam), self._gen.random(), side="left"))

    def poissons(self, lam: float, size) -> np.ndarray:
        return np.searchsorted(_poisson_cdf(lam), self._gen.random(size), side="left")

    def shuffle(self, values: np.ndarray) -> None:
        """In-place Fisher-Yates shuffle (unbiased uniform permutation)."""
        for i in range(len(values) - 1, 0, -1):
            j = int(self._gen.integers(0, i + 1))
            values[i], values[j] = values[j], values[i]

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed})"


def rng_create(seed: int) -> RandomStream:
    """Create a deterministic stream; equal seeds yield equal sequences."""
    return RandomStream(seed)


def derive_seed(base_seed: int, *parts: int) -> int:
    """Derive a child seed from a base seed and an index path.

    Used to give each run of a batch its own independent stream, keyed by
    (base_seed, n, run_index).  Distinct paths yield statistically
    independent streams; the derivation itself is deterministic.
    """
    key = tuple(int(p) for p in parts)
    if any(p < 0 for p in key):
        raise ConfigError(f"seed derivation path must be non-negative, got {key}")
    ss = np.random.SeedSequence(entropy=int(base_seed), spawn_key=key)
    return int(ss.generate_state(1, np.uint64)[0])
