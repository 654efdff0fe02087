"""fhtlab: a simulation-and-analysis lab for elitist (mu+lambda) EAs.

Runs three algorithm/problem pairs (knapsack, width-k MAX-SAT, convex-hull
TSP), records gain traces, estimates first-hitting-time statistics, and
evaluates closed-form expected-first-hitting-time bounds for comparison.
"""

__version__ = "0.1.0"
