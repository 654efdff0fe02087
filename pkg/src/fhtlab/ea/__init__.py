from fhtlab.ea.engine import GenerationEvent, RunOutcome, run_ea, step_generation
from fhtlab.ea.mutation import mutate_bitflip, mutate_poisson_2opt, unrank_pair, unrank_pairs

__all__ = [
    "GenerationEvent", "RunOutcome", "run_ea", "step_generation",
    "mutate_bitflip", "mutate_poisson_2opt", "unrank_pair", "unrank_pairs",
]
