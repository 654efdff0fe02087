"""Experiment instance constructions and instance-file loading.

The three named families ("paper-knapsack", "paper-maxsat", "paper-tsp")
are the self-constructed benchmark instances the harness reproduces.  Their
derived quantities have closed forms in n, so setups stay exact far beyond
the brute-force enumeration cap; the test suite checks the closed forms
against enumeration on small n.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from fhtlab.core.types import BitString, Genotype, Tour, UNIFORM_RANDOM, Variant
from fhtlab.errors import ConfigError
from fhtlab.problems.knapsack import (
    ENUMERATION_CAP,
    KnapsackDerived,
    KnapsackInstance,
    knapsack_derive,
)
from fhtlab.problems.maxsat import MaxSatDerived, MaxSatInstance, maxsat_derive
from fhtlab.problems.tsp import ConvexTspInstance
from fhtlab.problems.value_space import FitnessValueSpace, fitness_value_space

PAPER_KNAPSACK = "paper-knapsack"
PAPER_MAXSAT = "paper-maxsat"
PAPER_TSP = "paper-tsp"
NAMED_PROBLEMS = {PAPER_KNAPSACK: "knapsack", PAPER_MAXSAT: "maxsat", PAPER_TSP: "tsp"}

_VARIANTS = {"knapsack": Variant.KNAPSACK1, "maxsat": Variant.MAXSAT2, "tsp": Variant.TSP3}

Instance = KnapsackInstance | MaxSatInstance | ConvexTspInstance


def build_experiment_instance(problem: str, n: int) -> tuple[Instance, Genotype]:
    """Construct one benchmark instance plus its fixed starting genotype.

    knapsack (n >= 4): capacity 3, items valued (3, 3, 1, 1, ..., 1) with
    weights (1, 1, 1, 2, ..., 2), start all-zeros.
    maxsat (n >= 2): width-2 clauses (x1 or not-xj) and (not-x1 or xj) for
    j = 2..n, start (0, 1, ..., 1).
    tsp (n > 5): odd-labels-then-even-labels start tour, parity-dependent.
    """
    if problem == "knapsack":
        if n < 4:
            raise ConfigError(f"knapsack construction needs n >= 4, got {n}")
        inst = KnapsackInstance(
            values=(3, 3, 1) + (1,) * (n - 3),
            weights=(1, 1, 1) + (2,) * (n - 3),
            capacity=3,
        )
        return inst, BitString([0] * n)
    if problem == "maxsat":
        if n < 2:
            raise ConfigError(f"maxsat construction needs n >= 2, got {n}")
        clauses = tuple((1, -j) for j in range(2, n + 1)) + tuple((-1, j) for j in range(2, n + 1))
        inst = MaxSatInstance(n=n, clause_width=2, clauses=clauses)
        return inst, BitString([0] + [1] * (n - 1))
    if problem == "tsp":
        inst = ConvexTspInstance(n=n)
        if n % 2 == 0:
            order = list(range(1, n, 2)) + list(range(2, n - 3, 2)) + [n, n - 2]
        else:
            order = list(range(1, n + 1, 2)) + list(range(2, n - 4, 2)) + [n - 1, n - 3]
        return inst, Tour(order)
    raise ConfigError(f"unknown experiment problem {problem!r}")


@dataclass(frozen=True)
class ProblemSetup:
    """An instance bundled with everything a batch point needs.

    ``x0`` (when set) is replicated mu times to form the initial population;
    ``initial_list`` is an exact population instead.  Derived quantities are
    exact: analytic for the named families, enumerated for file instances.
    """

    problem: str
    variant: Variant
    instance: Instance
    optimum_fitness: int
    space: FitnessValueSpace
    x0: Genotype | None = None
    initial_list: tuple[Genotype, ...] | None = None
    knapsack_derived: KnapsackDerived | None = None
    maxsat_derived: MaxSatDerived | None = None

    @property
    def n(self) -> int:
        return self.instance.n

    def initial_population(self, mu: int):
        if self.initial_list is not None:
            if len(self.initial_list) != mu:
                raise ConfigError(
                    f"instance supplies {len(self.initial_list)} initial genotypes, run needs mu={mu}")
            return self.initial_list
        if self.x0 is not None:
            return (self.x0,) * mu
        return UNIFORM_RANDOM

    def initial_fitness(self) -> int:
        """Fitness of the fixed starting genotype (best of the start population)."""
        if self.x0 is not None:
            f = self.instance.fitness(self.x0)
        elif self.initial_list:
            fits = [self.instance.fitness(g) for g in self.initial_list]
            if any(f is None for f in fits):
                raise ConfigError("initial population contains an infeasible genotype")
            f = max(fits) if self.instance.maximize else min(fits)
        else:
            raise ConfigError("uniform-random start has no fixed initial fitness")
        if f is None:
            raise ConfigError("initial genotype is infeasible")
        return int(f)


def paper_setup(family: str, n: int) -> ProblemSetup:
    """Named-family setup with closed-form derived quantities."""
    instance, x0 = build_experiment_instance(family, n)
    if family == "knapsack":
        feasible = 4 * (n - 1)  # 8 light subsets + 4(n-3) single-heavy combos
        p2 = 7.0 / feasible
        derived = KnapsackDerived(
            q=3, feasible_count=feasible, p1=1.0 - p2, p2=p2,
            d_min=2, v_min=1, optimum_fitness=7,
        )
        space = FitnessValueSpace(values=(0, 1, 2, 3, 4, 6, 7), alpha=1, beta=2,
                                  direction="maximize")
        return ProblemSetup(problem=family, variant=Variant.KNAPSACK1, instance=instance,
                            optimum_fitness=7, space=space, x0=x0, knapsack_derived=derived)
    if family == "maxsat":
        s = 2 * (n - 1)
        derived = MaxSatDerived(optimum_count=2, optimum_fitness=s)
        space = FitnessValueSpace(values=tuple(range(n - 1, 2 * n - 1)), alpha=1, beta=1,
                                  direction="maximize")
        return ProblemSetup(problem=family, variant=Variant.MAXSAT2, instance=instance,
                            optimum_fitness=s, space=space, x0=x0, maxsat_derived=derived)
    if family == "tsp":
        space = fitness_value_space(instance)
        return ProblemSetup(problem=family, variant=Variant.TSP3, instance=instance,
                            optimum_fitness=0, space=space, x0=x0)
    raise ConfigError(f"unknown experiment family {family!r}")


def setup_from_spec(spec: dict, cap: int = ENUMERATION_CAP) -> ProblemSetup:
    """Build a setup from the JSON-compatible instance schema.

    Fields: problem, n, values?, weights?, capacity?, clauses?,
    initial_population? (genotype list or "uniform-random"; a single
    genotype is replicated to the run's mu).  Derived quantities come from
    enumeration, so n must stay within the cap for knapsack/MAX-SAT.
    """
    problem = spec.get("problem")
    n = spec.get("n")
    if problem not in _VARIANTS:
        raise ConfigError(f"instance problem must be one of {sorted(_VARIANTS)}, got {problem!r}")
    if not isinstance(n, int) or n < 1:
        raise ConfigError(f"instance needs a positive integer n, got {n!r}")

    if problem == "knapsack":
        for key in ("values", "weights", "capacity"):
            if key not in spec:
                raise ConfigError(f"knapsack instance missing {key!r}")
        instance = KnapsackInstance(values=tuple(spec["values"]), weights=tuple(spec["weights"]),
                                    capacity=int(spec["capacity"]))
        if instance.n != n:
            raise ConfigError(f"n={n} does not match {instance.n} items")
        derived = knapsack_derive(instance, cap)
        optimum = derived.optimum_fitness
    elif problem == "maxsat":
        clauses = spec.get("clauses")
        if not clauses:
            raise ConfigError("maxsat instance missing 'clauses'")
        width = len(clauses[0])
        instance = MaxSatInstance(n=n, clause_width=width,
                                  clauses=tuple(tuple(c) for c in clauses))
        derived = maxsat_derive(instance, cap)
        optimum = derived.optimum_fitness
    else:
        instance = ConvexTspInstance(n=n)
        derived = None
        optimum = 0

    x0 = None
    initial_list = None
    init = spec.get("initial_population", UNIFORM_RANDOM)
    if init != UNIFORM_RANDOM:
        wrap = Tour if problem == "tsp" else BitString
        genotypes = tuple(wrap(g) for g in init)
        if len(genotypes) == 1:
            x0 = genotypes[0]
        else:
            initial_list = genotypes

    return ProblemSetup(
        problem=problem,
        variant=_VARIANTS[problem],
        instance=instance,
        optimum_fitness=optimum,
        space=fitness_value_space(instance, cap),
        x0=x0,
        initial_list=initial_list,
        knapsack_derived=derived if problem == "knapsack" else None,
        maxsat_derived=derived if problem == "maxsat" else None,
    )


def resolve_setup(problem: str | dict, n: int | None = None,
                  cap: int = ENUMERATION_CAP) -> ProblemSetup:
    """Resolve a named family (needs n), an instance dict, or a JSON file path."""
    if isinstance(problem, dict):
        return setup_from_spec(problem, cap)
    if problem in NAMED_PROBLEMS:
        if n is None:
            raise ConfigError(f"named problem {problem!r} needs an encoding length n")
        return paper_setup(NAMED_PROBLEMS[problem], n)
    path = Path(problem)
    if path.suffix == ".json" or path.exists():
        try:
            spec = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read instance file {problem!r}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ConfigError(f"instance file {problem!r} is not valid JSON: {exc}") from exc
        setup = setup_from_spec(spec, cap)
        if n is not None and setup.n != n:
            raise ConfigError(f"instance file has n={setup.n}, run asked for n={n}")
        return setup
    raise ConfigError(
        f"unknown problem {problem!r}: expected one of {sorted(NAMED_PROBLEMS)} or an instance file")
