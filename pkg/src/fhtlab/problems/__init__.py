from fhtlab.problems.catalog import (
    NAMED_PROBLEMS,
    ProblemSetup,
    build_experiment_instance,
    paper_setup,
    resolve_setup,
    setup_from_spec,
)
from fhtlab.problems.knapsack import (
    ENUMERATION_CAP,
    KnapsackDerived,
    KnapsackInstance,
    knapsack_derive,
    knapsack_fitness,
)
from fhtlab.problems.maxsat import MaxSatDerived, MaxSatInstance, maxsat_derive, maxsat_fitness
from fhtlab.problems.tsp import ConvexTspInstance, tsp_fitness, two_opt_inversion
from fhtlab.problems.value_space import FitnessValueSpace, fitness_value_space

__all__ = [
    "NAMED_PROBLEMS", "ProblemSetup", "build_experiment_instance", "paper_setup",
    "resolve_setup", "setup_from_spec", "ENUMERATION_CAP", "KnapsackDerived",
    "KnapsackInstance", "knapsack_derive", "knapsack_fitness", "MaxSatDerived",
    "MaxSatInstance", "maxsat_derive", "maxsat_fitness", "ConvexTspInstance",
    "tsp_fitness", "two_opt_inversion", "FitnessValueSpace", "fitness_value_space",
]
