"""Mutation operators: independent bit flips and Poisson-many 2-opt inversions."""

from __future__ import annotations

import numpy as np

from fhtlab.core.rng import RandomStream
from fhtlab.core.types import BitString, Tour
from fhtlab.errors import ConfigError

_PAIR_OFFSETS: dict[int, np.ndarray] = {}


def _pair_offsets(n: int) -> np.ndarray:
    # offsets[r] = number of ordered pairs (i, j), i < j, with i <= r (1-based rows).
    table = _PAIR_OFFSETS.get(n)
    if table is None:
        counts = np.arange(n - 1, 0, -1, dtype=np.int64)
        table = np.concatenate([[0], np.cumsum(counts)[:-1]])
        _PAIR_OFFSETS[n] = table
    return table


def unrank_pair(m: int, n: int) -> tuple[int, int]:
    """Map m in [0, n(n-1)/2) to the m-th pair (i, j), 1 <= i < j <= n, in lex order."""
    offsets = _pair_offsets(n)
    r = int(np.searchsorted(offsets, m, side="right")) - 1
    return r + 1, m - int(offsets[r]) + r + 2


def unrank_pairs(ms: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    offsets = _pair_offsets(n)
    r = np.searchsorted(offsets, ms, side="right") - 1
    return r + 1, ms - offsets[r] + r + 2


def mutate_bitflip(x: BitString, p: float, rng: RandomStream) -> BitString:
    """Flip each gene independently with probability p; the input is untouched."""
    if not 0.0 <= p <= 1.0:
        raise ConfigError(f"flip probability must be in [0, 1], got {p}")
    mask = rng.bernoulli_mask(len(x), p)
    return BitString._trusted(x.bits ^ mask)


def mutate_poisson_2opt(t: Tour, lambda_p: float, rng: RandomStream) -> Tour:
    """Apply s+1 uniform random segment reversals, s drawn Poisson(lambda_p).

    Each reversal picks one of the C(n, 2) position pairs equiprobably, so at
    least one inversion is always applied.
    """
    n = len(t)
    if n < 2:
        raise ConfigError(f"2-opt mutation needs a tour of length >= 2, got {n}")
    s = rng.poisson(lambda_p)
    order = t.order.copy()
    pairs = n * (n - 1) // 2
    for _ in range(s + 1):
        i, j = unrank_pair(rng.randint(0, pairs), n)
        order[i - 1:j] = order[i - 1:j][::-1]
    return Tour._trusted(order)
