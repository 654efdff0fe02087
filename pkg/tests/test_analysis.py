import numpy as np
import pytest

from fhtlab.analysis import (
    GainTrace,
    empirical_multiple_gain,
    estimate_summary,
    gain_trace,
    longest_zero_gain_interval,
)
from fhtlab.core import EaConfig, derive_seed
from fhtlab.ea import GenerationEvent, RunOutcome, run_ea
from fhtlab.errors import EstimationError
from fhtlab.problems import paper_setup


def _outcome_from_best(best_series, optimum, seed=0):
    events = tuple(
        GenerationEvent(t, b, 1, b == optimum) for t, b in enumerate(best_series))
    fht = next((t for t, b in enumerate(best_series) if b == optimum), None)
    return RunOutcome(events, fht, seed, 10)


def _trace(potentials):
    pot = np.asarray(potentials, dtype=np.int64)
    return GainTrace(potentials=pot, gains=pot[:-1] - pot[1:], fht=len(pot) - 1)


def test_gain_trace_immediate_hit():
    out = _outcome_from_best([7], optimum=7)
    tr = gain_trace(out, 7, maximize=True)
    assert tr.potentials.tolist() == [0]
    assert tr.gains.size == 0


def test_gain_trace_differences():
    # potentials (3, 3, 1, 0) -> gains (0, 2, 1)
    out = _outcome_from_best([4, 4, 6, 7], optimum=7)
    tr = gain_trace(out, 7, maximize=True)
    assert tr.potentials.tolist() == [3, 3, 1, 0]
    assert tr.gains.tolist() == [0, 2, 1]


def test_gain_trace_minimization_direction():
    out = _outcome_from_best([5, 2, 0], optimum=0)
    tr = gain_trace(out, 0, maximize=False)
    assert tr.potentials.tolist() == [5, 2, 0]
    assert tr.gains.tolist() == [3, 2]


def test_gain_trace_censored_rejected():
    out = RunOutcome((GenerationEvent(0, 1, 1, False),), None, 0, 10)
    with pytest.raises(EstimationError):
        gain_trace(out, 7, maximize=True)


def test_gains_telescope_to_initial_potential():
    setup = paper_setup("knapsack", 9)
    for seed in range(5):
        cfg = EaConfig(variant=setup.variant, mu=2, lambda_=10, seed=seed,
                       max_generations=10**6, initial_population=setup.initial_population(2))
        out = run_ea(setup.instance, cfg, optimum_fitness=setup.optimum_fitness)
        tr = gain_trace(out, setup.optimum_fitness, True)
        assert int(tr.gains.sum()) == int(tr.potentials[0])
        assert (tr.gains >= 0).all()
        assert tr.potentials[-1] == 0


def test_longest_zero_gain_interval_examples():
    assert longest_zero_gain_interval(_trace([3, 3, 3, 1, 1, 0])) == 2
    assert longest_zero_gain_interval(_trace([3, 2, 1, 0])) == 0
    assert longest_zero_gain_interval(_trace([4, 3, 3, 3, 3, 0])) == 3
    assert longest_zero_gain_interval(_trace([5])) == 0


def test_longest_zero_gain_interval_gain_patterns():
    # gains (0,0,2,0,1) and (1,0,0,0)
    assert longest_zero_gain_interval(_trace([3, 3, 3, 1, 1, 0])) == 2
    assert longest_zero_gain_interval(_trace([4, 3, 3, 3, 3, 0])) == 3


def test_estimate_summary_singleton():
    tr = _trace([3, 3, 3, 2, 1, 0])  # fht 5, longest zero run 2, min gain 1
    s = estimate_summary([tr])
    assert (s.t0_hat, s.t_max, s.k_hat, s.alpha_hat) == (5.0, 5, 2.0, 1)
    assert s.run_count == 1 and s.censored_count == 0


def test_estimate_summary_mean_and_max():
    a = _trace([2, 1, 1, 1, 0])   # fht 4
    b = _trace([3, 2, 2, 1, 1, 1, 0])  # fht 6
    s = estimate_summary([a, b])
    assert s.t0_hat == 5.0 and s.t_max == 6


def test_estimate_summary_run_order_invariant():
    traces = [_trace([2, 1, 0]), _trace([4, 4, 1, 0]), _trace([3, 0])]
    assert estimate_summary(traces) == estimate_summary(traces[::-1])


def test_estimate_summary_empty_and_alpha_undefined():
    with pytest.raises(EstimationError):
        estimate_summary([])
    s = estimate_summary([_trace([0])])  # immediate hit: no gains at all
    assert s.alpha_hat is None


def test_alpha_hat_never_undershoots_true_alpha():
    setup = paper_setup("knapsack", 10)
    traces = []
    for i in range(40):
        cfg = EaConfig(variant=setup.variant, mu=2, lambda_=10,
                       seed=derive_seed(3, 10, i), max_generations=10**6,
                       initial_population=setup.initial_population(2))
        out = run_ea(setup.instance, cfg, optimum_fitness=setup.optimum_fitness)
        traces.append(gain_trace(out, setup.optimum_fitness, True))
    s = estimate_summary(traces)
    assert s.alpha_hat >= setup.space.alpha
    assert s.alpha_hat == setup.space.alpha  # 40 runs see a unit gain with certainty


def test_empirical_multiple_gain_window_past_hit():
    tr = _trace([3, 3, 1, 0])
    sample = empirical_multiple_gain([tr], k=10, potential_value=3)
    assert sample.count == 2 and sample.mean == 3.0


def test_empirical_multiple_gain_zero_level():
    tr = _trace([3, 3, 3, 0])
    sample = empirical_multiple_gain([tr], k=1, potential_value=3)
    assert sample.count == 3
    assert sample.mean == pytest.approx(1.0)  # two zero gains, one gain of 3


def test_empirical_multiple_gain_empty_sample():
    tr = _trace([3, 1, 0])
    sample = empirical_multiple_gain([tr], k=1, potential_value=9)
    assert sample.count == 0 and sample.mean is None and sample.std_error is None
    with pytest.raises(EstimationError):
        empirical_multiple_gain([tr], k=0, potential_value=3)


def test_empirical_multiple_gain_telescopes():
    traces = [_trace([4, 4, 2, 1, 0]), _trace([3, 1, 1, 0]), _trace([5, 0])]
    levels = sorted({int(v) for tr in traces for v in tr.potentials})
    total = 0.0
    for level in levels:
        s = empirical_multiple_gain(traces, k=1, potential_value=level)
        if s.count:
            total += s.mean * s.count
    assert total == pytest.approx(sum(float(tr.potentials[0]) for tr in traces))
