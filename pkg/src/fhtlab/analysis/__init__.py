from fhtlab.analysis.estimators import (
    EstimateSummary,
    GainSample,
    empirical_multiple_gain,
    estimate_summary,
)
from fhtlab.analysis.gains import GainTrace, gain_trace, longest_zero_gain_interval

__all__ = [
    "EstimateSummary", "GainSample", "empirical_multiple_gain", "estimate_summary",
    "GainTrace", "gain_trace", "longest_zero_gain_interval",
]
