"""Or-opt: relocate a short segment, optionally reversed.

Segments start at a fixed anchor position and grow up to k_or visits.
For each length the removal gain is constant, so the scan walks the
candidate slots of the remaining sequence once. Feasible slots form a
contiguous range: the segment must land after the last outside pickup
serving a delivery it contains, and before the first outside delivery
served by a pickup it contains. Reversal is allowed unless the segment
holds a complete pair, whose order the flip would break.
"""

from __future__ import annotations

from ..instance import Instance
from ..tour import MoveDelta, Tour


def or_opt_scan(inst: Instance, tour: Tour, a: int, k_or: int) -> MoveDelta:
    """Best segment move among lengths 1..k_or starting at position a.

    Slot t means insertion between rho[t] and rho[t+1] of the sequence
    with the segment removed. Putting the segment back where it came
    from unreversed is the identity and is excluded; reinserting it
    reversed in place is a real candidate.
    """
    seq = tour.seq
    pos = tour.pos
    n = inst.n_pairs
    n2 = 2 * n
    w = inst.work_cost()
    best = MoveDelta("or-opt", (a, 0, 0, False), 0, False)

    max_len = min(k_or, n2 - a + 1)
    for length in range(1, max_len + 1):
        head = seq[a]
        tail = seq[a + length - 1]
        prev = seq[a - 1]
        nxt = seq[a + length]
        d_rem = w[prev][nxt] - w[prev][head] - w[tail][nxt]

        seg = seq[a : a + length]
        inside = set(seg)
        lo = 0
        hi = n2 - length
        whole_pair = False
        for v in seg:
            if v > n:
                p = v - n
                if p in inside:
                    whole_pair = True
                else:
                    # Outside pickup: always earlier than the anchor.
                    if pos[p] > lo:
                        lo = pos[p]
            else:
                d = v + n
                if d not in inside and pos[d] - length - 1 < hi:
                    hi = pos[d] - length - 1
        can_rev = length > 1 and not whole_pair

        rho = seq[:a] + seq[a + length :]
        wh = w[head]
        wt = w[tail]
        for t in range(lo, hi + 1):
            u, v = rho[t], rho[t + 1]
            base = w[u][v]
            if t != a - 1:
                d = d_rem + wh[u] + wt[v] - base
                if not best.feasible or d < best.delta:
                    best = MoveDelta("or-opt", (a, length, t, False), d, True)
            if can_rev:
                d = d_rem + w[u][tail] + wh[v] - base
                if not best.feasible or d < best.delta:
                    best = MoveDelta("or-opt", (a, length, t, True), d, True)
    return best
