"""Shared builders for the test suite."""

from __future__ import annotations

import random

from pdtsp_kit.instance import Instance, generate_pairs
from pdtsp_kit.tour import Tour


def euclid_instance(rng, n, *, mode="closed", rounding="nearest", group="C", span=100):
    pts = [(rng.randint(0, span), rng.randint(0, span)) for _ in range(2 * n + 1)]
    return generate_pairs(pts, group, rng, mode=mode, rounding=rounding, name=f"t{n}")


def float_instance(rng, n, *, mode="closed", span=100.0):
    pts = [(rng.uniform(0, span), rng.uniform(0, span)) for _ in range(2 * n + 1)]
    return generate_pairs(pts, "C", rng, mode=mode, rounding="none", name=f"f{n}")


def random_feasible_seq(rng, inst: Instance) -> list:
    n = inst.n_pairs
    placed = set()
    seq = [0]
    while len(seq) < inst.n_visits:
        ready = [x for x in range(1, n + 1) if x not in placed]
        ready += [
            x + n for x in range(1, n + 1) if x in placed and x + n not in placed
        ]
        v = ready[rng.randrange(len(ready))]
        placed.add(v)
        seq.append(v)
    seq.append(inst.end)
    return seq


def random_feasible_tour(rng, inst: Instance) -> Tour:
    return Tour(inst, random_feasible_seq(rng, inst))
