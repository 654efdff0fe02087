"""Pearson correlation in the product-moment form used by the reports."""

from __future__ import annotations

import math
from typing import Sequence

from fhtlab.errors import ConfigError, CorrelationUndefinedError


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """r(x, y) = (n*Sxy - Sx*Sy) / sqrt((n*Sxx - Sx^2) * (n*Syy - Sy^2)).

    Sums are compensated (fsum) and the two variance terms are multiplied
    before the square root, so pearson(x, x) is exactly 1.0 for any
    non-constant x.  Constant sequences have no defined correlation.
    """
    xs = [float(v) for v in x]
    ys = [float(v) for v in y]
    n = len(xs)
    if n != len(ys):
        raise ConfigError(f"sequences differ in length: {n} vs {len(ys)}")
    if n < 2:
        raise ConfigError("correlation needs at least two points")
    sx = math.fsum(xs)
    sy = math.fsum(ys)
    sxx = n * math.fsum(v * v for v in xs) - sx * sx
    syy = n * math.fsum(v * v for v in ys) - sy * sy
    sxy = n * math.fsum(a * b for a, b in zip(xs, ys)) - sx * sy
    if sxx <= 0.0 or syy <= 0.0:
        raise CorrelationUndefinedError("correlation of a constant sequence is undefined")
    r = sxy / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))
