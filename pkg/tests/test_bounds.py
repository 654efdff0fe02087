import math
from fractions import Fraction

import pytest

from fhtlab.bounds import (
    BoundInputs,
    bound_report,
    harmonic,
    knapsack_avg_bound,
    knapsack_klow,
    knapsack_worst_bound,
    maxsat_avg_bound,
    maxsat_klow,
    maxsat_worst_bound,
    tsp_avg_bound,
    tsp_g,
    tsp_klow,
    tsp_worst_bound,
)
from fhtlab.errors import ConfigError
from tests.oracles import fraction_tsp_g

# Frozen reference values computed with an independent 50-digit evaluator;
# the acceptance suite re-derives them at run time.
KNAP_N5 = BoundInputs(n=5, mu=2, lambda_=10, y0=7.0, alpha=1.0, beta=1.0,
                      p1=9 / 16, p2=7 / 16, d_min=2, v_min=1)
KNAP_AVG_N5 = 24.457127496876410
KNAP_KLOW_N5_BETA1 = 3.4938753566966300

MAXSAT_N3 = BoundInputs(n=3, mu=2, lambda_=10, y0=4.0, alpha=1.0, beta=1.0,
                        clause_count=4, optimum_count=2)
MAXSAT_AVG_N3 = 2.2696364371538584
MAXSAT_KLOW_N3 = 1.0894254898338520

TSP_N20 = BoundInputs(n=20, mu=2, lambda_=10, y0=20.0, alpha=1.0, beta=2.0,
                      poisson_lambda=1.0)
TSP_AVG_N20 = 746.13770995893696
TSP_KLOW_N20 = 198.70469035758976

REL = 1e-10


def test_harmonic_values():
    assert harmonic(0) == 0.0
    assert harmonic(1) == 1.0
    assert harmonic(4) == pytest.approx(25 / 12, rel=1e-15)
    with pytest.raises(ConfigError):
        harmonic(-1)


def test_harmonic_against_fractions():
    for s in (2, 7, 50, 200):
        exact = sum(Fraction(1, x) for x in range(1, s + 1))
        assert harmonic(s) == pytest.approx(float(exact), rel=1e-13)


def test_harmonic_log_bound():
    for s in (1, 4, 10, 100, 1000):
        assert harmonic(s) <= math.log(s) + 1.0


def test_knapsack_avg_bound_frozen():
    assert knapsack_avg_bound(KNAP_N5) == pytest.approx(KNAP_AVG_N5, rel=REL)


def test_knapsack_klow_frozen():
    assert knapsack_klow(KNAP_N5) == pytest.approx(KNAP_KLOW_N5_BETA1, rel=REL)


def test_knapsack_klow_identity_with_avg():
    # klow = beta * avg / (y0 - r0)
    expected = KNAP_N5.beta * knapsack_avg_bound(KNAP_N5) / (KNAP_N5.y0 - KNAP_N5.r0)
    assert knapsack_klow(KNAP_N5) == pytest.approx(expected, rel=1e-12)


def test_knapsack_beta_linearity():
    double = BoundInputs(n=5, mu=2, lambda_=10, y0=7.0, alpha=1.0, beta=2.0,
                         p1=9 / 16, p2=7 / 16, d_min=2, v_min=1)
    assert knapsack_klow(double) == pytest.approx(2 * knapsack_klow(KNAP_N5), rel=1e-12)


def test_knapsack_worst_bound_forms():
    # substituting the theoretical klow reproduces the closed worst-case form
    k = knapsack_klow(KNAP_N5)
    closed = KNAP_N5.beta * (KNAP_N5.y0 - KNAP_N5.r0) / (
        KNAP_N5.alpha * (KNAP_N5.y0 - KNAP_N5.r0) / knapsack_avg_bound(KNAP_N5))
    assert knapsack_worst_bound(KNAP_N5, k) == pytest.approx(closed, rel=1e-12)
    assert knapsack_worst_bound(KNAP_N5, 1.0) == pytest.approx(7.0)  # k=1, alpha=1
    zero_start = BoundInputs(n=5, mu=2, lambda_=10, y0=0.0, alpha=1.0, beta=1.0,
                             p1=9 / 16, p2=7 / 16, d_min=2, v_min=1)
    assert knapsack_avg_bound(zero_start) == 0.0
    assert knapsack_worst_bound(zero_start, 5.0) == 0.0


def test_maxsat_avg_bound_frozen():
    assert maxsat_avg_bound(MAXSAT_N3) == pytest.approx(MAXSAT_AVG_N3, rel=REL)
    single = BoundInputs(n=3, mu=2, lambda_=10, y0=1.0, alpha=1.0, beta=1.0,
                         clause_count=1, optimum_count=2)
    assert maxsat_avg_bound(single) == pytest.approx(
        1.0 / -math.expm1(-10 * 2 / 8), rel=1e-12)


def test_maxsat_klow_frozen():
    assert maxsat_klow(MAXSAT_N3) == pytest.approx(MAXSAT_KLOW_N3, rel=REL)


def test_maxsat_klow_limits():
    big_lambda = BoundInputs(n=3, mu=2, lambda_=10**6, y0=4.0, alpha=1.0, beta=1.0,
                             clause_count=4, optimum_count=2)
    assert maxsat_klow(big_lambda) == pytest.approx(1.0, rel=1e-9)


def test_maxsat_expm1_stability_for_tiny_rates():
    # rate = lambda * N_opt / 2^n ~ 1.8e-11 at n = 40; the stable form keeps
    # full precision where 1 - exp(-x) would lose most digits
    inp = BoundInputs(n=40, mu=2, lambda_=10, y0=39.0, alpha=1.0, beta=1.0,
                      clause_count=78, optimum_count=2)
    rate = 10 * 2 / 2**40
    expected = 1.0 / (rate * (1 - rate / 2 + rate**2 / 6))
    assert maxsat_klow(inp) == pytest.approx(expected, rel=1e-10)


def test_maxsat_worst_bound_substitution():
    k = maxsat_klow(MAXSAT_N3)
    closed = MAXSAT_N3.beta * (MAXSAT_N3.y0 - MAXSAT_N3.r0) / (
        MAXSAT_N3.alpha * -math.expm1(-10 * 2 / 8))
    assert maxsat_worst_bound(MAXSAT_N3, k) == pytest.approx(closed, rel=1e-12)
    at_optimum = BoundInputs(n=3, mu=2, lambda_=10, y0=0.0, alpha=1.0, beta=1.0,
                             clause_count=4, optimum_count=2)
    assert maxsat_worst_bound(at_optimum, k) == 0.0


def test_tsp_g_values():
    assert tsp_g(20) == pytest.approx(274 / 5508, rel=1e-15)
    assert tsp_g(6) == pytest.approx(8 / 48, rel=1e-15)
    with pytest.raises(ConfigError):
        tsp_g(5)


def test_tsp_g_matches_rational_evaluation():
    for n in range(6, 1001):
        assert tsp_g(n) == pytest.approx(float(fraction_tsp_g(n)), rel=1e-14)


def test_tsp_g_vanishes_asymptotically():
    values = [tsp_g(n) for n in (10, 100, 1000, 10**6)]
    assert all(a > b > 0 for a, b in zip(values, values[1:]))
    assert 1.0 + tsp_g(10**6) == pytest.approx(1.0, abs=1e-5)


def test_tsp_avg_bound_frozen():
    assert tsp_avg_bound(TSP_N20) == pytest.approx(TSP_AVG_N20, rel=REL)
    at_opt = BoundInputs(n=20, mu=2, lambda_=10, y0=0.0, alpha=1.0, beta=2.0,
                         poisson_lambda=1.0)
    assert tsp_avg_bound(at_opt) == 0.0


def test_tsp_avg_bound_mu_scaling():
    # doubling mu scales only the pair-pressure term, not the L term
    mu4 = BoundInputs(n=20, mu=4, lambda_=10, y0=20.0, alpha=1.0, beta=2.0,
                      poisson_lambda=1.0)
    g = tsp_g(20)
    l_term = (2 / (1 + g)) * 20.0
    assert mu4.y0 == TSP_N20.y0
    assert (tsp_avg_bound(mu4) - l_term) == pytest.approx(
        2 * (tsp_avg_bound(TSP_N20) - l_term), rel=1e-12)


def test_tsp_klow_frozen():
    assert tsp_klow(TSP_N20) == pytest.approx(TSP_KLOW_N20, rel=REL)


def test_tsp_klow_monotonic_in_mu_and_linear_in_beta():
    mu4 = BoundInputs(n=20, mu=4, lambda_=10, y0=20.0, alpha=1.0, beta=2.0,
                      poisson_lambda=1.0)
    assert tsp_klow(mu4) > tsp_klow(TSP_N20)
    beta1 = BoundInputs(n=20, mu=2, lambda_=10, y0=20.0, alpha=1.0, beta=1.0,
                        poisson_lambda=1.0)
    assert tsp_klow(TSP_N20) == pytest.approx(2 * tsp_klow(beta1), rel=1e-12)


def test_tsp_worst_bound_substitution():
    k = tsp_klow(TSP_N20)
    g = tsp_g(20)
    pressure = 2 * math.exp(1.0) * 190 / 10
    closed = 2.0 * 20.0 * (1 + pressure) / (1.0 * (1 + g))
    assert tsp_worst_bound(TSP_N20, k) == pytest.approx(closed, rel=1e-12)
    assert tsp_worst_bound(TSP_N20, 0.0) == 0.0


def test_bounds_monotone_in_initial_potential():
    for y0a, y0b in ((3.0, 5.0), (5.0, 7.0)):
        a = BoundInputs(n=5, mu=2, lambda_=10, y0=y0a, alpha=1.0, beta=1.0,
                        p1=9 / 16, p2=7 / 16, d_min=2, v_min=1)
        b = BoundInputs(n=5, mu=2, lambda_=10, y0=y0b, alpha=1.0, beta=1.0,
                        p1=9 / 16, p2=7 / 16, d_min=2, v_min=1)
        assert knapsack_avg_bound(a) < knapsack_avg_bound(b)


def test_bounds_never_increase_with_lambda():
    lambdas = (1, 2, 5, 10, 20, 100)
    knap = [knapsack_avg_bound(BoundInputs(n=8, mu=2, lambda_=lam, y0=7.0, alpha=1.0,
                                           beta=2.0, p1=0.75, p2=0.25, d_min=2, v_min=1))
            for lam in lambdas]
    sat = [maxsat_avg_bound(BoundInputs(n=8, mu=2, lambda_=lam, y0=7.0, alpha=1.0,
                                        beta=1.0, clause_count=14, optimum_count=2))
           for lam in lambdas]
    tsp = [tsp_avg_bound(BoundInputs(n=8, mu=2, lambda_=lam, y0=8.0, alpha=1.0,
                                     beta=2.0, poisson_lambda=1.0))
           for lam in lambdas]
    for series in (knap, sat, tsp):
        assert all(a >= b for a, b in zip(series, series[1:]))
        assert all(v > 0 for v in series)


def test_bound_error_paths():
    with pytest.raises(ConfigError):
        BoundInputs(n=5, mu=2, lambda_=10, y0=-1.0)
    with pytest.raises(ConfigError):
        BoundInputs(n=5, mu=2, lambda_=10, y0=1.0, p1=1.5)
    with pytest.raises(ConfigError):
        BoundInputs(n=5, mu=2, lambda_=10, y0=1.0, alpha=2.0, beta=1.0)
    no_alpha = BoundInputs(n=5, mu=2, lambda_=10, y0=7.0, beta=1.0,
                           p1=9 / 16, p2=7 / 16, d_min=2, v_min=1)
    with pytest.raises(ConfigError):
        knapsack_worst_bound(no_alpha, 2.0)
    with pytest.raises(ConfigError):
        maxsat_avg_bound(BoundInputs(n=3, mu=2, lambda_=10, y0=4.0, alpha=1.0, beta=1.0,
                                     clause_count=4, optimum_count=0))
    with pytest.raises(ConfigError):
        tsp_avg_bound(BoundInputs(n=20, mu=2, lambda_=10, y0=20.0, alpha=1.0, beta=2.0))
    with pytest.raises(ConfigError):
        tsp_avg_bound(BoundInputs(n=20, mu=2, lambda_=10, y0=21.5, alpha=1.0, beta=2.0,
                                  poisson_lambda=1.0))


def test_bound_report_paths():
    rep = bound_report("knapsack", KNAP_N5)
    assert rep.worst_bound == pytest.approx(
        knapsack_worst_bound(KNAP_N5, rep.klow_theoretical), rel=1e-15)
    assert rep.formula_ids[2].endswith("[theoretical-k]")
    rep_emp = bound_report("knapsack", KNAP_N5, k=12.5)
    assert rep_emp.worst_bound == pytest.approx(12.5 * 7.0, rel=1e-15)
    assert rep_emp.formula_ids[2].endswith("[empirical-k]")
    with pytest.raises(ConfigError):
        bound_report("vertex-cover", KNAP_N5)
