"""Two-phase local search over the six neighborhoods.

Each round shuffles the pairs and, for every pair, applies the best
improving move among relocating that pair, the 2-opt scans anchored at
its two positions, and the or-opt scans anchored there. When large
neighborhoods are enabled the round then applies the single best
improving move among the nested-2-opt program, the restricted 4-opt and
the Balas-Simonetti graph, and the whole cycle repeats until one full
round leaves the tour untouched.

Whether a descent gets the large phase is decided once per descent,
with probability ``p_large`` unless the caller forces it either way.
"""

from __future__ import annotations

import random

from .instance import Instance
from .neighborhoods import (
    SearchParams,
    bs_best,
    four_opt_best,
    or_opt_scan,
    relocate_pair_best,
    two_k_opt_best,
    two_opt_scan,
)
from .tour import Tour, apply_move


def pair_step(inst: Instance, tour: Tour, x: int, k_or: int):
    """Best small-neighborhood move for one pair; ties keep the earliest scan."""
    best = relocate_pair_best(inst, tour, x)
    for anchor in (x, x + inst.n_pairs):
        i = tour.pos[anchor]
        m = two_opt_scan(inst, tour, i)
        if m.feasible and (not best.feasible or m.delta < best.delta):
            best = m
        m = or_opt_scan(inst, tour, i, k_or)
        if m.feasible and (not best.feasible or m.delta < best.delta):
            best = m
    return best


def phase_one_sweep(
    inst: Instance,
    tour: Tour,
    order,
    k_or: int,
    *,
    apply_moves: bool = True,
) -> bool:
    """One pass over ``order``; with apply_moves False it only scans,
    which is what the scaling benchmark times."""
    eps = inst.eps
    improved = False
    for x in order:
        best = pair_step(inst, tour, x, k_or)
        if best.improves(eps):
            improved = True
            if apply_moves:
                apply_move(inst, tour, best)
    return improved


def large_step(inst: Instance, tour: Tour, k_bs: int) -> bool:
    """Applies the best improving large-neighborhood move, if any."""
    eps = inst.eps
    best = two_k_opt_best(inst, tour)
    m = four_opt_best(inst, tour)
    if m.feasible and (not best.feasible or m.delta < best.delta):
        best = m
    m = bs_best(inst, tour, k_bs)
    if m.feasible and (not best.feasible or m.delta < best.delta):
        best = m
    if best.improves(eps):
        apply_move(inst, tour, best)
        return True
    return False


def local_search(
    inst: Instance,
    tour: Tour,
    params: SearchParams,
    rng: random.Random,
    use_large: bool | None = None,
) -> Tour:
    """Runs the tour to a local optimum in place and returns it."""
    if use_large is None:
        use_large = rng.random() < params.p_large
    n = inst.n_pairs
    pairs = list(range(1, n + 1))
    improved = True
    while improved:
        rng.shuffle(pairs)
        improved = phase_one_sweep(inst, tour, pairs, params.k_or)
        if use_large and large_step(inst, tour, params.k_bs):
            improved = True
    return tour
