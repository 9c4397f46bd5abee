"""Toolkit for the one-to-one pickup-and-delivery traveling salesman problem.

A single vehicle must visit 2n+1 locations: a depot (visit 0), n pickups
(visits 1..n) and n deliveries (visits n+1..2n), where pickup x is matched
with delivery x+n and must precede it. The package provides the data model
and file formats, a tour representation, six precedence-aware improvement
neighborhoods, a two-phase local search, ruin-and-recreate and hybrid
genetic metaheuristics, an exact enumeration solver for small instances,
and a command line front end.
"""

from .instance import (
    FormatError,
    Instance,
    build_cost_matrix,
    generate_pairs,
    parse_instance,
    parse_solution,
    render_instance,
    render_solution,
)
from .tour import MoveDelta, Tour, apply_move, check_precedence, tour_cost
from .neighborhoods import (
    SearchParams,
    bs_best,
    four_opt_best,
    or_opt_scan,
    relocate_pair_best,
    two_k_opt_best,
    two_opt_scan,
)
from .search import local_search
from .metaheuristics import (
    HgsParams,
    RrParams,
    biased_fitness,
    greedy_construct,
    hgs_run,
    lox_crossover,
    mutate_and_repair,
    rr_run,
)
from .oracle import OracleResult, brute_force_optimal

__version__ = "0.1.0"

__all__ = [
    "FormatError",
    "Instance",
    "build_cost_matrix",
    "generate_pairs",
    "parse_instance",
    "parse_solution",
    "render_instance",
    "render_solution",
    "MoveDelta",
    "Tour",
    "apply_move",
    "check_precedence",
    "tour_cost",
    "SearchParams",
    "relocate_pair_best",
    "two_opt_scan",
    "or_opt_scan",
    "two_k_opt_best",
    "four_opt_best",
    "bs_best",
    "local_search",
    "HgsParams",
    "RrParams",
    "biased_fitness",
    "greedy_construct",
    "hgs_run",
    "lox_crossover",
    "mutate_and_repair",
    "rr_run",
    "OracleResult",
    "brute_force_optimal",
    "__version__",
]
