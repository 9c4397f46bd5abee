"""Exhaustive solver: leaf counts, pruning safety, tiny cross-checks."""

import itertools
import math
import random

import pytest

from pdtsp_kit.oracle import MAX_PAIRS, OracleResult, brute_force_optimal
from pdtsp_kit.search import local_search
from pdtsp_kit.neighborhoods import SearchParams
from pdtsp_kit.metaheuristics import greedy_construct
from pdtsp_kit.tour import Tour, tour_cost
from helpers import euclid_instance, float_instance, random_feasible_tour


def feasible_leaves(n):
    return math.factorial(2 * n) // 2**n


def enumerate_optimum(inst):
    n = inst.n_pairs
    best = None
    for perm in itertools.permutations(range(1, 2 * n + 1)):
        at = {v: t for t, v in enumerate(perm)}
        if any(at[x] > at[x + n] for x in range(1, n + 1)):
            continue
        cost = tour_cost(inst, [0, *perm, inst.end])
        if best is None or cost < best:
            best = cost
    return best


def test_unpruned_walk_touches_every_feasible_leaf():
    rng = random.Random(110)
    for n in (2, 3, 4):
        inst = euclid_instance(rng, n)
        res = brute_force_optimal(inst, prune=False)
        assert res.examined == feasible_leaves(n)
    inst = euclid_instance(rng, 2, mode="open")
    assert brute_force_optimal(inst, prune=False).examined == feasible_leaves(2)


def test_pruning_keeps_the_optimum():
    rng = random.Random(111)
    for n in (2, 3, 4, 5):
        for mode in ("closed", "open"):
            inst = euclid_instance(rng, n, mode=mode)
            full = brute_force_optimal(inst, prune=False)
            cut = brute_force_optimal(inst)
            assert cut.cost == full.cost
            assert cut.examined <= full.examined
            assert cut.tour.is_feasible()
            assert cut.cost == tour_cost(inst, cut.tour.seq)


def test_matches_permutation_enumeration():
    rng = random.Random(112)
    for mode in ("closed", "open"):
        inst = euclid_instance(rng, 3, mode=mode)
        assert brute_force_optimal(inst).cost == enumerate_optimum(inst)
    finst = float_instance(rng, 3)
    assert brute_force_optimal(finst).cost == pytest.approx(
        enumerate_optimum(finst), rel=1e-9
    )


def test_integral_instances_stay_integral():
    inst = euclid_instance(random.Random(113), 4)
    res = brute_force_optimal(inst)
    assert isinstance(res.cost, int)


def test_seed_incumbent_is_safe():
    rng = random.Random(114)
    inst = euclid_instance(rng, 5)
    plain = brute_force_optimal(inst)

    # A mediocre seed must not change the answer.
    seeded = brute_force_optimal(inst, seed=random_feasible_tour(rng, inst))
    assert seeded.cost == plain.cost

    # Seeding with the optimum itself prunes everything else away.
    tight = brute_force_optimal(inst, seed=plain.tour)
    assert tight.cost == plain.cost
    assert tight.tour.seq == plain.tour.seq
    assert tight.examined <= plain.examined

    # A warmed-up heuristic seed is the intended use.
    warm = greedy_construct(inst, rng)
    local_search(inst, warm, SearchParams(), rng, use_large=True)
    assert brute_force_optimal(inst, seed=warm).cost == plain.cost


def test_oracle_never_beaten_by_heuristic_tours():
    rng = random.Random(115)
    inst = euclid_instance(rng, 4)
    opt = brute_force_optimal(inst).cost
    for _ in range(30):
        assert random_feasible_tour(rng, inst).cost >= opt


def test_pair_guard():
    inst = euclid_instance(random.Random(116), MAX_PAIRS + 1)
    with pytest.raises(ValueError):
        brute_force_optimal(inst)


def test_result_shape():
    inst = euclid_instance(random.Random(117), 2)
    res = brute_force_optimal(inst)
    assert isinstance(res, OracleResult)
    assert isinstance(res.tour, Tour)
    assert res.examined >= 1
