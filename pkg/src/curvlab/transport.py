"""Exact min-cost transportation and Wasserstein-1 distance on graphs.

Everything is integer or :class:`fractions.Fraction`; no floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Hashable, Mapping

from .graph import UNREACHABLE, DistanceMatrix


class TransportError(ValueError):
    """Contract violation in a transportation instance or measure."""


@dataclass(frozen=True)
class TransportInstance:
    supplies: tuple[tuple[Hashable, int], ...]
    demands: tuple[tuple[Hashable, int], ...]
    cost: tuple[tuple[int, ...], ...]  # cost[i][j] between supplies[i] and demands[j]

    def __post_init__(self):
        if len(self.cost) != len(self.supplies) or any(
            len(row) != len(self.demands) for row in self.cost
        ):
            raise TransportError("cost matrix shape does not match supplies x demands")
        for _, a in self.supplies + self.demands:
            if not isinstance(a, int) or a < 0:
                raise TransportError(f"mass {a!r} is not a nonnegative integer")
        for row in self.cost:
            for c in row:
                if c is UNREACHABLE or not isinstance(c, int) or c < 0:
                    raise TransportError(f"cost {c!r} is not a finite nonnegative integer")
        total_s = sum(a for _, a in self.supplies)
        total_d = sum(b for _, b in self.demands)
        if total_s != total_d:
            raise TransportError(f"unbalanced instance: supply {total_s} != demand {total_d}")

    @classmethod
    def from_masses(cls, supply: Mapping, demand: Mapping, dist: DistanceMatrix) -> "TransportInstance":
        """Instance between two vertex-indexed integer mass maps, priced by graph distance."""
        sup = tuple(sorted((u, a) for u, a in supply.items() if a))
        dem = tuple(sorted((v, b) for v, b in demand.items() if b))
        cost = tuple(tuple(dist[u, v] for v, _ in dem) for u, _ in sup)
        return cls(sup, dem, cost)

    @property
    def total(self) -> int:
        return sum(a for _, a in self.supplies)


def coupling_cost(inst: TransportInstance, coupling: Mapping) -> int:
    index_s = {s: i for i, (s, _) in enumerate(inst.supplies)}
    index_d = {t: j for j, (t, _) in enumerate(inst.demands)}
    return sum(amount * inst.cost[index_s[s]][index_d[t]] for (s, t), amount in coupling.items())


def check_coupling(inst: TransportInstance, coupling: Mapping) -> None:
    """Raise :class:`TransportError` unless ``coupling`` has the instance marginals."""
    rows = {s: 0 for s, _ in inst.supplies}
    cols = {t: 0 for t, _ in inst.demands}
    for (s, t), amount in coupling.items():
        if amount < 0:
            raise TransportError(f"negative coupling entry at ({s}, {t})")
        if amount == 0:
            continue
        if s not in rows or t not in cols:
            raise TransportError(f"coupling entry ({s}, {t}) outside the instance support")
        rows[s] += amount
        cols[t] += amount
    for s, a in inst.supplies:
        if rows[s] != a:
            raise TransportError(f"row sum at {s} is {rows[s]}, expected {a}")
    for t, b in inst.demands:
        if cols[t] != b:
            raise TransportError(f"column sum at {t} is {cols[t]}, expected {b}")


def solve_transportation(inst: TransportInstance) -> tuple[int, dict]:
    """Minimum-cost integer coupling by successive shortest augmenting paths.

    Returns ``(min_cost, witness)`` where the witness maps
    ``(supply id, demand id)`` to a positive integer amount. Shortest paths use
    Bellman-Ford on the residual network, so negative reverse arcs need no
    potentials.
    """
    sup = [(s, a) for s, a in inst.supplies if a > 0]
    keep_rows = [i for i, (_, a) in enumerate(inst.supplies) if a > 0]
    dem = [(t, b) for t, b in inst.demands if b > 0]
    keep_cols = [j for j, (_, b) in enumerate(inst.demands) if b > 0]
    m, k = len(sup), len(dem)
    if m == 0:
        return 0, {}
    source, sink = m + k, m + k + 1
    # arc arrays: head, residual capacity, cost; arc e ^ 1 is the reverse of e
    head: list[int] = []
    cap: list[int] = []
    cost: list[int] = []
    out: list[list[int]] = [[] for _ in range(m + k + 2)]

    def add_arc(u, v, c, w):
        out[u].append(len(head)); head.append(v); cap.append(c); cost.append(w)
        out[v].append(len(head)); head.append(u); cap.append(0); cost.append(-w)

    for i, (_, a) in enumerate(sup):
        add_arc(source, i, a, 0)
    for j, (_, b) in enumerate(dem):
        add_arc(m + j, sink, b, 0)
    middle = {}
    for i, ii in enumerate(keep_rows):
        for j, jj in enumerate(keep_cols):
            middle[(i, j)] = len(head)
            add_arc(i, m + j, inst.total, inst.cost[ii][jj])

    remaining = inst.total
    total = 0
    nodes = m + k + 2
    while remaining:
        dist: list = [None] * nodes
        via = [-1] * nodes
        dist[source] = 0
        for _ in range(nodes - 1):
            changed = False
            for u in range(nodes):
                if dist[u] is None:
                    continue
                for e in out[u]:
                    if cap[e] > 0:
                        v = head[e]
                        nd = dist[u] + cost[e]
                        if dist[v] is None or nd < dist[v]:
                            dist[v] = nd
                            via[v] = e
                            changed = True
            if not changed:
                break
        if dist[sink] is None:
            raise TransportError("no augmenting path; instance infeasible")
        delta = remaining
        v = sink
        while v != source:
            e = via[v]
            delta = min(delta, cap[e])
            v = head[e ^ 1]
        v = sink
        while v != source:
            e = via[v]
            cap[e] -= delta
            cap[e ^ 1] += delta
            v = head[e ^ 1]
        remaining -= delta
        total += delta * dist[sink]

    witness = {}
    for (i, j), e in middle.items():
        amount = cap[e ^ 1]
        if amount:
            witness[(sup[i][0], dem[j][0])] = amount
    return total, witness


def _as_fraction_measure(m: Mapping, name: str) -> dict:
    out = {}
    for v, p in m.items():
        p = Fraction(p)
        if p < 0:
            raise TransportError(f"{name} has negative mass {p} at {v}")
        if p:
            out[v] = p
    if sum(out.values(), Fraction(0)) != 1:
        raise TransportError(f"{name} does not sum to 1")
    return out


def wasserstein1(m1: Mapping, m2: Mapping, dist: DistanceMatrix) -> Fraction:
    """Exact W1 between two finitely supported probability measures on a graph."""
    p = _as_fraction_measure(m1, "m1")
    q = _as_fraction_measure(m2, "m2")
    for u in p:
        for v in q:
            if not dist.connected(u, v):
                raise TransportError(f"supports meet different components ({u}, {v})")
    scale = lcm(*(x.denominator for x in (*p.values(), *q.values())))
    supply = {u: int(x * scale) for u, x in p.items()}
    demand = {v: int(x * scale) for v, x in q.items()}
    cost, _ = solve_transportation(TransportInstance.from_masses(supply, demand, dist))
    return Fraction(cost, scale)
