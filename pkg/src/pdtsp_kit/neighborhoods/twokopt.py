"""Best combination of nested, non-crossing 2-opt moves.

Two recurrences over tour intervals: F(i, j) is the best gain
obtainable inside [i, j] while keeping seq[i] and seq[j] pointing the
same way, and R(i, j) the best gain when the whole interval additionally
gets reversed by an enclosing 2-opt. Each either fixes an endpoint and
recurses, or pays one 2-opt on (i, j) and flips the interior. R is
infinite whenever the enclosing reversal would drag seq[i] past a
delivery it serves or seq[j] past its pickup; nested flips cannot undo
that. The root F over the full tour is never positive because shrinking
to the empty interval gains zero.

Decoding walks the chosen cases back into an explicit sequence, so one
call yields both the gain and the reordered tour.
"""

from __future__ import annotations

import math

from ..instance import Instance
from ..tour import MoveDelta, Tour
from .twoopt import two_opt_delta


def two_k_opt_best(inst: Instance, tour: Tour) -> MoveDelta:
    """Evaluates the full nested-2-opt family in O(n^2) and decodes the best."""
    seq = tour.seq
    pos = tour.pos
    n = inst.n_pairs
    top = len(seq) - 1
    w = inst.work_cost()

    size = top + 1
    F = [[0] * size for _ in range(size)]
    FC = [[0] * size for _ in range(size)]
    R = [[0] * size for _ in range(size)]
    RC = [[0] * size for _ in range(size)]
    blocked = [[False] * size for _ in range(size)]

    # R's guard depends only on the interval ends.
    for i in range(1, top):
        vi = seq[i]
        pick_i = vi <= n
        for j in range(i, top):
            vj = seq[j]
            if (pick_i and pos[vi + n] <= j) or (vj > n and pos[vj - n] >= i):
                blocked[i][j] = True

    for span in range(2, top + 1):
        for i in range(0, top - span + 1):
            j = i + span
            d2 = two_opt_delta(w, seq, i, j)
            best = F[i + 1][j]
            case = 1
            alt = F[i][j - 1]
            if alt < best:
                best, case = alt, 2
            if 1 <= i + 1 and j - 1 <= top - 1 and not blocked[i + 1][j - 1]:
                alt = d2 + R[i + 1][j - 1]
                if alt < best:
                    best, case = alt, 3
            F[i][j] = best
            FC[i][j] = case

            if 1 <= i and j <= top - 1 and not blocked[i][j]:
                best = R[i + 1][j] if not blocked[i + 1][j] else math.inf
                case = 1
                alt = R[i][j - 1] if not blocked[i][j - 1] else math.inf
                if alt < best:
                    best, case = alt, 2
                alt = d2 + F[i + 1][j - 1]
                if alt < best:
                    best, case = alt, 3
                R[i][j] = best
                RC[i][j] = case

    delta = F[0][top]
    out = []
    flips = []
    stack = [("F", 0, top)]
    while stack:
        item = stack.pop()
        if item[0] == "emit":
            out.append(item[1])
            continue
        kind, i, j = item
        if kind == "F":
            if j <= i + 1:
                out.append(seq[i])
                if j == i + 1:
                    out.append(seq[j])
                continue
            case = FC[i][j]
            if case == 1:
                stack.append(("F", i + 1, j))
                stack.append(("emit", seq[i]))
            elif case == 2:
                stack.append(("emit", seq[j]))
                stack.append(("F", i, j - 1))
            else:
                flips.append((i, j))
                stack.append(("emit", seq[j]))
                stack.append(("R", i + 1, j - 1))
                stack.append(("emit", seq[i]))
        else:
            if j <= i + 1:
                out.append(seq[j])
                if j == i + 1:
                    out.append(seq[i])
                continue
            case = RC[i][j]
            if case == 1:
                stack.append(("emit", seq[i]))
                stack.append(("R", i + 1, j))
            elif case == 2:
                stack.append(("R", i, j - 1))
                stack.append(("emit", seq[j]))
            else:
                flips.append((i, j))
                stack.append(("emit", seq[i]))
                stack.append(("F", i + 1, j - 1))
                stack.append(("emit", seq[j]))

    return MoveDelta("2k-opt", tuple(sorted(flips)), delta, True, tuple(out))
