"""Precedence-aware 2-opt scan from a fixed left edge.

A 2-opt on (i, j) drops edges (seq[i], seq[i+1]) and (seq[j-1], seq[j])
and reverses the span in between. The reversal is infeasible exactly
when the span contains a complete pair, and once that happens for some
j it stays true for every larger j, so the scan walks j upward from the
anchor and stops at the first delivery whose pickup sits inside the
span. That truncation is what keeps the scan cheap on tours where pairs
sit close together.
"""

from __future__ import annotations

from ..instance import Instance
from ..tour import MoveDelta, Tour


def two_opt_delta(w, seq, i: int, j: int):
    return (
        w[seq[i]][seq[j - 1]]
        + w[seq[i + 1]][seq[j]]
        - w[seq[i]][seq[i + 1]]
        - w[seq[j - 1]][seq[j]]
    )


def two_opt_scan(inst: Instance, tour: Tour, i: int) -> MoveDelta:
    """Best 2-opt whose left edge starts at position i, or an empty move.

    j = i+2 reverses a single visit and is skipped as the identity; the
    scan starts at j = i+3 and truncates at the first span that would
    swallow a whole pair.
    """
    seq = tour.seq
    pos = tour.pos
    n = inst.n_pairs
    w = inst.work_cost()
    top = len(seq) - 1
    best = MoveDelta("2opt", (i, i + 2), 0, False)
    wi = w[seq[i]]
    ci = w[seq[i]][seq[i + 1]] if i + 1 <= top else 0
    for j in range(i + 3, top + 1):
        v = seq[j - 1]
        if v > n and pos[v - n] > i:
            break
        d = wi[v] + w[seq[i + 1]][seq[j]] - ci - w[v][seq[j]]
        if not best.feasible or d < best.delta:
            best = MoveDelta("2opt", (i, j), d, True)
    return best
