from fhtlab.bounds.formulas import (
    BoundInputs,
    BoundReport,
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

__all__ = [
    "BoundInputs", "BoundReport", "bound_report", "harmonic",
    "knapsack_avg_bound", "knapsack_klow", "knapsack_worst_bound",
    "maxsat_avg_bound", "maxsat_klow", "maxsat_worst_bound",
    "tsp_avg_bound", "tsp_g", "tsp_klow", "tsp_worst_bound",
]
