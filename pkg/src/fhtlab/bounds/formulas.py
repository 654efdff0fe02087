"""Closed-form expected-first-hitting-time bounds for the three variants.

Each problem family has an average-case bound, a theoretical smallest
guaranteed-progress window (klow), and a worst-case bound of the shared
form k * (Y0 - r0) / alpha, where k is either the theoretical klow or an
empirical estimate from run data.  All evaluation is double precision;
1 - e^(-x) terms use expm1 so tiny rates (e.g. lambda * N_opt / 2^n at
larger n) keep full relative accuracy.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from fhtlab.errors import ConfigError


def harmonic(s: int) -> float:
    """Partial harmonic sum 1 + 1/2 + ... + 1/s (0 for s = 0)."""
    if s < 0:
        raise ConfigError(f"harmonic sum needs s >= 0, got {s}")
    return math.fsum(1.0 / x for x in range(1, s + 1))


@dataclass(frozen=True)
class BoundInputs:
    """Everything the bound evaluators consume for one configuration.

    ``y0`` is the starting potential (f(x_opt) - f(x0) for maximization,
    f(x0) for the minimizing TSP) and ``r0`` the smallest reachable
    potential (0 for all three families).  Problem-specific scalars are
    left None when they do not apply.
    """

    n: int
    mu: int
    lambda_: int
    y0: float
    r0: float = 0.0
    alpha: float | None = None
    beta: float | None = None
    poisson_lambda: float | None = None
    # knapsack
    p1: float | None = None
    p2: float | None = None
    d_min: float | None = None
    v_min: float | None = None
    # max-sat
    clause_count: int | None = None
    optimum_count: int | None = None

    def __post_init__(self):
        if self.n < 1 or self.mu < 1 or self.lambda_ < 1:
            raise ConfigError("n, mu, and lambda must all be >= 1")
        if self.y0 < 0:
            raise ConfigError(f"initial potential must be >= 0, got {self.y0}")
        for name in ("p1", "p2"):
            p = getattr(self, name)
            if p is not None and not 0.0 <= p <= 1.0:
                raise ConfigError(f"{name} must lie in [0, 1], got {p}")
        if self.alpha is not None and self.beta is not None and self.alpha > self.beta:
            raise ConfigError(f"alpha {self.alpha} exceeds beta {self.beta}")


def _one_minus_exp_neg(x: float) -> float:
    return -math.expm1(-x)


def _knapsack_denominator(inp: BoundInputs) -> float:
    if inp.p1 is None or inp.p2 is None or inp.v_min is None:
        raise ConfigError("knapsack bounds need p1, p2 and v_min")
    if inp.p1 > 0.0 and inp.d_min is None:
        raise ConfigError("knapsack bounds need d_min when p1 > 0")
    d_min = inp.d_min if inp.d_min is not None else 0.0
    n = inp.n
    rate = inp.lambda_ * (inp.p1 + n * (1.0 - inp.p1)) / (inp.mu * n * n * math.e)
    denom = _one_minus_exp_neg(rate) * (inp.p1 * d_min + inp.p2 * inp.v_min)
    if denom <= 0.0:
        raise ConfigError("degenerate knapsack bound: zero progress rate")
    return denom


def knapsack_avg_bound(inp: BoundInputs) -> float:
    """Average-case bound (Y0 - r0) over the one-step drift floor."""
    return (inp.y0 - inp.r0) / _knapsack_denominator(inp)


def knapsack_klow(inp: BoundInputs) -> float:
    """Smallest window length guaranteeing an expected gain of beta."""
    if inp.beta is None:
        raise ConfigError("klow needs beta")
    return inp.beta / _knapsack_denominator(inp)


def _worst_from_k(inp: BoundInputs, k: float) -> float:
    if inp.alpha is None or inp.alpha <= 0.0:
        raise ConfigError(f"worst-case bound needs alpha > 0, got {inp.alpha}")
    if k < 0.0:
        # k = 0 is a legitimate empirical estimate (no stagnation observed)
        raise ConfigError(f"worst-case bound needs k >= 0, got {k}")
    return k * (inp.y0 - inp.r0) / inp.alpha


def knapsack_worst_bound(inp: BoundInputs, k: float) -> float:
    """k * (Y0 - r0) / alpha with k theoretical (klow) or empirical (k-hat)."""
    return _worst_from_k(inp, k)


def _maxsat_rate(inp: BoundInputs) -> float:
    if inp.optimum_count is None or inp.optimum_count < 1:
        raise ConfigError("max-sat bounds need the number of global optima (>= 1)")
    # lambda * N_opt / 2^n computed via ldexp so huge n cannot overflow 2**n.
    return _one_minus_exp_neg(math.ldexp(float(inp.lambda_ * inp.optimum_count), -inp.n))


def maxsat_avg_bound(inp: BoundInputs) -> float:
    if inp.clause_count is None or inp.clause_count < 0:
        raise ConfigError("max-sat average bound needs the clause count")
    return harmonic(inp.clause_count) / _maxsat_rate(inp)


def maxsat_klow(inp: BoundInputs) -> float:
    if inp.beta is None:
        raise ConfigError("klow needs beta")
    return inp.beta / _maxsat_rate(inp)


def maxsat_worst_bound(inp: BoundInputs, k: float) -> float:
    return _worst_from_k(inp, k)


def tsp_g(n: int) -> float:
    """Expected-gain correction term; positive and vanishing as n grows."""
    if n <= 5:
        raise ConfigError(f"the convex TSP model needs n > 5, got {n}")
    num = -(n - 2) * (n - 5) + 2 * (n - 3) * (n - 4)
    den = (n - 2) * (n - 2) * (n - 3)
    return num / den


def _tsp_pressure(inp: BoundInputs) -> float:
    # mu * e^(lambda_p) * C(n, 2) / (lambda * lambda_p): expected work per fix.
    if inp.poisson_lambda is None or inp.poisson_lambda <= 0.0:
        raise ConfigError("TSP bounds need a positive poisson_lambda")
    pairs = inp.n * (inp.n - 1) // 2
    return inp.mu * math.exp(inp.poisson_lambda) * pairs / (inp.lambda_ * inp.poisson_lambda)


def tsp_avg_bound(inp: BoundInputs) -> float:
    """(2 / (1+g)) * (L + pressure * H_L) with L the starting misorder count."""
    L = inp.y0 - inp.r0
    if L != int(L) or L < 0:
        raise ConfigError(f"TSP starting potential must be a non-negative integer, got {L}")
    if L > inp.n:
        raise ConfigError(f"TSP starting potential {L} cannot exceed n={inp.n}")
    L = int(L)
    g = tsp_g(inp.n)
    return (2.0 / (1.0 + g)) * (L + _tsp_pressure(inp) * harmonic(L))


def tsp_klow(inp: BoundInputs) -> float:
    if inp.beta is None:
        raise ConfigError("klow needs beta")
    return inp.beta * (1.0 + _tsp_pressure(inp)) / (1.0 + tsp_g(inp.n))


def tsp_worst_bound(inp: BoundInputs, k: float) -> float:
    return _worst_from_k(inp, k)


@dataclass(frozen=True)
class BoundReport:
    """Evaluated bounds for one configuration, with evaluator provenance."""

    avg_bound: float
    klow_theoretical: float
    worst_bound: float
    formula_ids: tuple[str, str, str]


_EVALUATORS = {
    "knapsack": (knapsack_avg_bound, knapsack_klow, knapsack_worst_bound),
    "maxsat": (maxsat_avg_bound, maxsat_klow, maxsat_worst_bound),
    "tsp": (tsp_avg_bound, tsp_klow, tsp_worst_bound),
}


def bound_report(problem: str, inp: BoundInputs, k: float | None = None) -> BoundReport:
    """Evaluate all three bounds; k None means the theoretical klow path."""
    if problem not in _EVALUATORS:
        raise ConfigError(f"no bound evaluators for problem {problem!r}")
    avg_fn, klow_fn, worst_fn = _EVALUATORS[problem]
    avg = avg_fn(inp)
    klow = klow_fn(inp)
    k_used = klow if k is None else float(k)
    worst = worst_fn(inp, k_used)
    k_tag = "theoretical-k" if k is None else "empirical-k"
    return BoundReport(
        avg_bound=avg,
        klow_theoretical=klow,
        worst_bound=worst,
        formula_ids=(f"{problem}-average", f"{problem}-klow", f"{problem}-worst[{k_tag}]"),
    )
