"""Balas-Simonetti reordering within a sliding window of width k.

The neighborhood contains every reordering of the current sequence in
which a visit may overtake at most k-1 positions: whenever two
positions are k or more apart, their relative order is preserved.
Pickups also stay ahead of their deliveries. All such reorderings embed
in a layered graph whose nodes record, after t placements, the original
position of the visit just placed (r), the smallest original position
still unplaced (m), and which of the at most k-1 positions above m are
already placed (a bitmask). Layer widths are therefore bounded by a
constant in k times 1, independent of n, and a shortest path through
the graph is the cheapest reordering.

Precedence pruning happens at construction: a delivery may only be
placed once its pickup is, so forbidden states never enter a layer.
"""

from __future__ import annotations

from ..instance import Instance
from ..tour import MoveDelta, Tour, tour_cost


def bs_optimize(inst: Instance, seq, k: int):
    """Shortest path through the window-k reordering graph of ``seq``.

    Returns (best_seq, best_cost, stats) where stats reports the widest
    layer, both as raw node count and as count of distinct (m, mask)
    placement shapes. k = 1 fixes every position, returning the input.
    """
    if not 1 <= k <= 12:
        raise ValueError("k must be between 1 and 12")
    n = inst.n_pairs
    w = inst.work_cost()
    last = len(seq) - 1  # terminal slot; positions 1..last-1 get reordered
    stats = {"max_nodes": 1, "max_set_pairs": 1}
    if k == 1 or last <= 2:
        return list(seq), tour_cost(inst, seq), stats

    pos_of = [0] * (2 * n + 2)
    for t, v in enumerate(seq[:-1]):
        pos_of[v] = t

    # State: (r, m, mask). parent map per layer for path recovery.
    start = (0, 1, 0)
    layer = {start: (0 if inst.integral else 0.0, None, 0)}
    layers = [layer]
    for t in range(1, last):
        nxt = {}
        for state, (cost, _, _) in layer.items():
            r, m, mask = state
            wr = w[seq[r]]
            for off in range(k):
                q = m + off
                if q >= last:
                    break
                if off and (mask >> (off - 1)) & 1:
                    continue
                u = seq[q]
                if u > n:
                    pp = pos_of[u - n]
                    # Pickup must already be placed: below m or flagged.
                    if pp >= m and not (pp > m and (mask >> (pp - m - 1)) & 1):
                        continue
                if off == 0:
                    nm = m + 1
                    nmask = mask
                    while nmask & 1:
                        nmask >>= 1
                        nm += 1
                    nmask >>= 1
                else:
                    nm = m
                    nmask = mask | (1 << (off - 1))
                nstate = (q, nm, nmask)
                ncost = cost + wr[u]
                known = nxt.get(nstate)
                if known is None or ncost < known[0]:
                    nxt[nstate] = (ncost, state, q)
        layer = nxt
        layers.append(layer)
        if len(layer) > stats["max_nodes"]:
            stats["max_nodes"] = len(layer)
        shapes = len({(m, mask) for (_, m, mask) in layer})
        if shapes > stats["max_set_pairs"]:
            stats["max_set_pairs"] = shapes

    end_visit = seq[last]
    best_state = None
    best_cost = None
    for state, (cost, _, _) in layer.items():
        total = cost + w[seq[state[0]]][end_visit]
        if best_cost is None or total < best_cost:
            best_cost = total
            best_state = state

    order = []
    state = best_state
    for t in range(last - 1, 0, -1):
        cost, parent, q = layers[t][state]
        order.append(q)
        state = parent
    order.reverse()
    best_seq = [seq[0]] + [seq[q] for q in order] + [seq[last]]
    return best_seq, best_cost, stats


def bs_best(inst: Instance, tour: Tour, k: int) -> MoveDelta:
    """Wraps the graph search as a move against the current tour cost."""
    seq, cost, _ = bs_optimize(inst, tour.seq, k)
    return MoveDelta("bs", (k,), cost - tour.cost, True, tuple(seq))
