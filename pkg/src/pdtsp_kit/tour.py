"""Tour representation, feasibility checks and move application.

A tour is stored as a sequence of 2n+2 visit ids: the depot at slot 0,
the 2n customers, and a closing terminal. Closed tours end with the depot
again; open tours end with a virtual terminal (id 2n+1) whose travel
costs are all zero, which lets every move formula treat both modes
identically. A tour is feasible when each pickup appears before its
delivery.
"""

from __future__ import annotations

from dataclasses import dataclass

from .instance import Instance


@dataclass
class MoveDelta:
    """One candidate move: its family, parameters, and exact cost change.

    ``indices`` is interpreted per kind (positions, pair ids, slot ids).
    Scans that found nothing report ``feasible=False`` with a zero delta.
    Kinds that rebuild the whole sequence (2k-opt, bs) carry it in
    ``seq_after``.
    """

    kind: str
    indices: tuple
    delta: float
    feasible: bool
    seq_after: tuple | None = None

    def improves(self, eps: float) -> bool:
        return self.feasible and self.delta < -eps


def tour_cost(inst: Instance, seq) -> float:
    w = inst.work_cost()
    return sum(w[seq[t]][seq[t + 1]] for t in range(len(seq) - 1))


def check_precedence(inst: Instance, seq) -> list:
    """Pickups whose delivery comes first in ``seq``, in pickup id order."""
    n = inst.n_pairs
    pos = [0] * (2 * n + 2)
    for t, v in enumerate(seq):
        pos[v] = t
    pos[seq[0]] = 0
    return [x for x in range(1, n + 1) if pos[x + n] < pos[x]]


class Tour:
    """A visit sequence with cached positions and cost.

    The constructor accepts the full internal sequence (terminal
    included) and does not require precedence feasibility, so repair
    procedures can hold violating tours. Structural validity (a
    permutation bracketed by depot and terminal) is always enforced.
    """

    __slots__ = ("inst", "seq", "pos", "cost")

    def __init__(self, inst: Instance, seq):
        self.inst = inst
        self.seq = list(seq)
        nv = inst.n_visits
        if len(self.seq) != nv + 1:
            raise ValueError(f"tour needs {nv + 1} slots, got {len(self.seq)}")
        if self.seq[0] != 0 or self.seq[-1] != inst.end:
            raise ValueError("tour must start at the depot and end at the terminal")
        if sorted(self.seq[1:nv]) != list(range(1, nv)):
            raise ValueError("tour must visit every customer exactly once")
        self.pos = [0] * (nv + 1)
        self._reindex()
        self.cost = tour_cost(inst, self.seq)

    def _reindex(self):
        for t in range(len(self.seq) - 1):
            self.pos[self.seq[t]] = t
        self.pos[self.seq[-1]] = len(self.seq) - 1
        self.pos[0] = 0

    @classmethod
    def from_visits(cls, inst: Instance, visits) -> "Tour":
        """Builds a tour from solution-file order.

        Closed tours list the depot twice (first and last); open tours
        list it only first, the virtual terminal being implicit.
        """
        seq = list(visits)
        if inst.mode == "open":
            seq = seq + [inst.end]
        return cls(inst, seq)

    def to_visits(self) -> list:
        if self.inst.mode == "open":
            return self.seq[:-1]
        return list(self.seq)

    @classmethod
    def identity(cls, inst: Instance) -> "Tour":
        return cls(inst, list(range(inst.n_visits)) + [inst.end])

    def copy(self) -> "Tour":
        dup = object.__new__(Tour)
        dup.inst = self.inst
        dup.seq = list(self.seq)
        dup.pos = list(self.pos)
        dup.cost = self.cost
        return dup

    def violations(self) -> list:
        return check_precedence(self.inst, self.seq)

    def is_feasible(self) -> bool:
        return not self.violations()

    def recost(self) -> float:
        self.cost = tour_cost(self.inst, self.seq)
        return self.cost

    def __repr__(self):
        return f"Tour(cost={self.cost}, seq={self.seq})"


def _rev(chunk):
    return chunk[::-1]


def apply_move(inst: Instance, tour: Tour, move: MoveDelta) -> None:
    """Applies a MoveDelta in place, updating sequence, positions and cost.

    Deltas are trusted: the cached cost is advanced by ``move.delta``
    rather than recomputed, which keeps integer instances exact.
    """
    if not move.feasible:
        raise ValueError("cannot apply a move from an empty scan")
    seq = tour.seq
    kind = move.kind

    if kind == "2opt":
        i, j = move.indices
        if j > i + 2:
            seq[i + 1 : j] = seq[j - 1 : i : -1]
    elif kind == "relocate-pair":
        x, ip, jp = move.indices
        nx = inst.partner(x)
        i, j = tour.pos[x], tour.pos[nx]
        if i > j:
            i, j = j, i
            x, nx = nx, x
        del seq[j]
        del seq[i]
        if ip == jp:
            seq[ip + 1 : ip + 1] = [x, nx]
        else:
            seq[jp + 1 : jp + 1] = [nx]
            seq[ip + 1 : ip + 1] = [x]
    elif kind == "or-opt":
        a, L, t, rev = move.indices
        chunk = seq[a : a + L]
        if rev:
            chunk.reverse()
        del seq[a : a + L]
        seq[t + 1 : t + 1] = chunk
    elif kind in ("2k-opt", "bs"):
        tour.seq = seq = list(move.seq_after)
    elif kind == "4opt-type1":
        i1, i2, j1, j2 = move.indices
        tour.seq = seq = (
            seq[: i1 + 1]
            + seq[j1 + 1 : j2 + 1]
            + seq[i2 + 1 : j1 + 1]
            + seq[i1 + 1 : i2 + 1]
            + seq[j2 + 1 :]
        )
    elif kind == "4opt-type2a":
        i1, i2, j1, j2 = move.indices
        tour.seq = seq = (
            seq[: i1 + 1]
            + _rev(seq[i2 + 1 : j1 + 1])
            + _rev(seq[j1 + 1 : j2 + 1])
            + seq[i1 + 1 : i2 + 1]
            + seq[j2 + 1 :]
        )
    elif kind == "4opt-type2b":
        i1, i2, j1, j2 = move.indices
        tour.seq = seq = (
            seq[: i1 + 1]
            + seq[j1 + 1 : j2 + 1]
            + _rev(seq[i1 + 1 : i2 + 1])
            + _rev(seq[i2 + 1 : j1 + 1])
            + seq[j2 + 1 :]
        )
    else:
        raise ValueError(f"unknown move kind {kind!r}")

    tour._reindex()
    tour.cost += move.delta
