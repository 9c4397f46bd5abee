"""Exact solver by depth-first enumeration with precedence pruning.

A partial tour only ever extends with an unvisited pickup or with a
delivery whose pickup is already placed, so precedence violations are
never generated at all; the feasible leaf count is (2n)!/2^n. Cost
pruning adds an admissible bound: every remaining visit, and the
terminal, still needs an incoming edge, each worth at least its
cheapest incident cost. Guarded to 8 pairs, beyond which enumeration is
hopeless anyway.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instance import Instance
from .tour import Tour


@dataclass
class OracleResult:
    cost: float
    tour: Tour
    examined: int  # complete feasible sequences reached


MAX_PAIRS = 8


def brute_force_optimal(
    inst: Instance,
    *,
    prune: bool = True,
    seed: Tour | None = None,
) -> OracleResult:
    """Optimal tour by branch and bound.

    ``prune=False`` walks every feasible leaf, which the counting tests
    rely on. ``seed`` installs a heuristic tour as the incumbent, so
    branches matching its cost are cut without risk of losing the
    optimum.
    """
    n = inst.n_pairs
    if n > MAX_PAIRS:
        raise ValueError(f"enumeration is limited to {MAX_PAIRS} pairs, got {n}")
    w = inst.work_cost()
    end = inst.end
    nv = inst.n_visits

    min_in = [0.0] * nv
    for v in range(1, nv):
        min_in[v] = min(w[u][v] for u in range(nv) if u != v)
    if inst.mode == "closed":
        min_in_end = min(w[u][end] for u in range(1, nv))
    else:
        min_in_end = 0.0

    visited = [False] * nv
    visited[0] = True
    seq = [0]
    state = {
        "best_cost": float("inf") if seed is None else seed.cost,
        "best_seq": None if seed is None else list(seed.seq),
        "examined": 0,
    }

    def descend(cost, bound):
        # bound covers the incoming edges of everything still unplaced.
        if len(seq) == nv:
            total = cost + w[seq[-1]][end]
            state["examined"] += 1
            if total < state["best_cost"]:
                state["best_cost"] = total
                state["best_seq"] = seq + [end]
            return
        last = seq[-1]
        options = []
        for v in range(1, nv):
            if visited[v]:
                continue
            if v > n and not visited[v - n]:
                continue
            options.append((w[last][v], v))
        options.sort()
        for step, v in options:
            nbound = bound - min_in[v]
            if prune and cost + step + nbound >= state["best_cost"]:
                continue
            visited[v] = True
            seq.append(v)
            descend(cost + step, nbound)
            seq.pop()
            visited[v] = False

    zero = 0 if inst.integral else 0.0
    descend(zero, sum(min_in[1:]) + min_in_end)
    if state["best_seq"] is None:
        raise ValueError("search ended with no tour; seed was not a valid incumbent")
    best = Tour(inst, state["best_seq"])
    return OracleResult(best.cost, best, state["examined"])
