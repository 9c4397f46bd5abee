"""Nested 2-opt dynamic program against full enumeration."""

import random

import pytest

from pdtsp_kit.neighborhoods import two_k_opt_best
from pdtsp_kit.neighborhoods.oracles import two_k_opt_oracle
from pdtsp_kit.tour import apply_move, tour_cost
from helpers import euclid_instance, float_instance, random_feasible_tour


def test_matches_enumeration_small():
    rng = random.Random(50)
    for n in (2, 3, 4):
        for _ in range(4):
            inst = euclid_instance(rng, n)
            for _ in range(5):
                tour = random_feasible_tour(rng, inst)
                mv = two_k_opt_best(inst, tour)
                ref = two_k_opt_oracle(inst, tour)
                assert mv.delta == ref.delta
                assert mv.seq_after == ref.seq_after
                assert mv.indices == ref.indices


def test_root_never_positive_and_apply_consistent():
    rng = random.Random(51)
    for mode in ("closed", "open"):
        inst = euclid_instance(rng, 6, mode=mode)
        for _ in range(10):
            tour = random_feasible_tour(rng, inst)
            mv = two_k_opt_best(inst, tour)
            assert mv.delta <= 0
            trial = tour.copy()
            apply_move(inst, trial, mv)
            assert trial.is_feasible()
            assert trial.cost == tour_cost(inst, trial.seq)
            assert trial.cost == tour.cost + mv.delta


def test_float_costs():
    rng = random.Random(52)
    inst = float_instance(rng, 3)
    for _ in range(8):
        tour = random_feasible_tour(rng, inst)
        mv = two_k_opt_best(inst, tour)
        ref = two_k_opt_oracle(inst, tour)
        assert mv.delta == pytest.approx(ref.delta, rel=1e-9, abs=1e-7)
        assert mv.seq_after == ref.seq_after
        trial = tour.copy()
        apply_move(inst, trial, mv)
        assert trial.cost == pytest.approx(tour_cost(inst, trial.seq), rel=1e-9)


def test_identity_when_tour_already_good():
    # A line of points in visiting order cannot be improved.
    pts = [(i * 10, 0) for i in range(7)]
    from pdtsp_kit.instance import generate_pairs

    inst = generate_pairs(pts, "C", random.Random(1), name="line")
    from pdtsp_kit.tour import Tour

    seq = [0] + sorted(
        range(1, 7), key=lambda v: inst.coords[v][0]
    ) + [0]
    tour = Tour(inst, seq)
    mv = two_k_opt_best(inst, tour)
    assert mv.delta == 0
    assert list(mv.seq_after) == seq
    assert mv.indices == ()
