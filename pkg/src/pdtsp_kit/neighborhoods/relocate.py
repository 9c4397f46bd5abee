"""Relocation of one pickup-delivery pair to its best joint position.

Removing pair (x, x+n) from a tour leaves a shorter sequence rho; the
pair can go back either consecutively into one slot or split across two
slots with x first. Enumerating split placements naively costs O(n^2)
per pair, but the cheapest completion for the delivery only depends on
where the pickup went, so a backward suffix-minimum over delivery slots
brings the whole evaluation down to O(n). The naive enumeration is kept
both as a correctness reference and as the slow evaluator the
ruin-and-recreate comparison runs use.

Slots are named by the rho element they follow: inserting "at t" places
a visit between rho[t] and rho[t+1]. The last slot is len(rho)-2 since
nothing may follow the terminal.
"""

from __future__ import annotations

import math

from ..instance import Instance
from ..tour import MoveDelta, Tour


def best_insertion(w, rho, x: int, nx: int):
    """Cheapest joint insertion of x then nx into rho, in O(len(rho)).

    Returns (delta, ip, jp) where ip == jp marks consecutive insertion.
    Ties prefer consecutive placements, then smaller ip, then smaller
    jp, matching the naive scan order.
    """
    last = len(rho) - 2
    wx = w[x]
    wnx = w[nx]

    best_c = math.inf
    best_ct = -1
    for t in range(last + 1):
        u, v = rho[t], rho[t + 1]
        d = wx[u] + wx[nx] + wnx[v] - w[u][v]
        if d < best_c:
            best_c = d
            best_ct = t

    # Split insertion: A(t) inserts x at t, phi(t) is the cheapest
    # delivery slot strictly after t.
    best_s = math.inf
    best_si = best_sj = -1
    if last >= 1:
        b = [0.0] * (last + 1)
        for t in range(1, last + 1):
            u, v = rho[t], rho[t + 1]
            b[t] = wnx[u] + wnx[v] - w[u][v]
        phi = [0.0] * last
        phi_arg = [0] * last
        phi[last - 1] = b[last]
        phi_arg[last - 1] = last
        for t in range(last - 2, -1, -1):
            if b[t + 1] <= phi[t + 1]:
                phi[t] = b[t + 1]
                phi_arg[t] = t + 1
            else:
                phi[t] = phi[t + 1]
                phi_arg[t] = phi_arg[t + 1]
        for t in range(last):
            u, v = rho[t], rho[t + 1]
            d = wx[u] + wx[v] - w[u][v] + phi[t]
            if d < best_s:
                best_s = d
                best_si = t
                best_sj = phi_arg[t]

    if best_c <= best_s:
        return best_c, best_ct, best_ct
    return best_s, best_si, best_sj


def best_insertion_naive(w, rho, x: int, nx: int):
    """Reference insertion by full enumeration; same tie order as the fast one."""
    last = len(rho) - 2
    wx = w[x]
    wnx = w[nx]
    best = math.inf
    best_i = best_j = -1
    for t in range(last + 1):
        u, v = rho[t], rho[t + 1]
        d = wx[u] + wx[nx] + wnx[v] - w[u][v]
        if d < best:
            best, best_i, best_j = d, t, t
    for t in range(last):
        u, v = rho[t], rho[t + 1]
        da = wx[u] + wx[v] - w[u][v]
        for t2 in range(t + 1, last + 1):
            u2, v2 = rho[t2], rho[t2 + 1]
            d = da + wnx[u2] + wnx[v2] - w[u2][v2]
            if d < best:
                best, best_i, best_j = d, t, t2
    return best, best_i, best_j


def removal_delta(w, seq, i: int, j: int):
    # i < j are the positions of the pair being taken out.
    x, nx = seq[i], seq[j]
    if j == i + 1:
        a, b = seq[i - 1], seq[j + 1]
        return w[a][b] - w[a][x] - w[x][nx] - w[nx][b]
    return (
        w[seq[i - 1]][seq[i + 1]]
        - w[seq[i - 1]][x]
        - w[x][seq[i + 1]]
        + w[seq[j - 1]][seq[j + 1]]
        - w[seq[j - 1]][nx]
        - w[nx][seq[j + 1]]
    )


def _relocate(inst: Instance, tour: Tour, x: int, evaluator) -> MoveDelta:
    nx = x + inst.n_pairs
    i, j = tour.pos[x], tour.pos[nx]
    seq = tour.seq
    w = inst.work_cost()
    d_rem = removal_delta(w, seq, i, j)
    rho = seq[:i] + seq[i + 1 : j] + seq[j + 1 :]
    d_ins, ip, jp = evaluator(w, rho, x, nx)
    return MoveDelta("relocate-pair", (x, ip, jp), d_rem + d_ins, True)


def relocate_pair_best(inst: Instance, tour: Tour, x: int) -> MoveDelta:
    """Best relocation of pair (x, x+n); never positive since staying put
    is one of the candidates."""
    return _relocate(inst, tour, x, best_insertion)


def relocate_pair_best_naive(inst: Instance, tour: Tour, x: int) -> MoveDelta:
    return _relocate(inst, tour, x, best_insertion_naive)


def insert_pair(seq, x: int, nx: int, ip: int, jp: int) -> None:
    """Splices x and nx into a bare sequence at slots chosen by an evaluator."""
    if ip == jp:
        seq[ip + 1 : ip + 1] = (x, nx)
    else:
        seq[jp + 1 : jp + 1] = (nx,)
        seq[ip + 1 : ip + 1] = (x,)
