"""Exact Lin-Lu-Yau curvature of vertex pairs.

Three independent routes compute the same number:

* :func:`kappa_adjacent` -- integer mass transport between the two
  neighborhoods (edges only),
* :func:`kappa_lipschitz` -- minimization of the Laplacian gradient over
  integer 1-Lipschitz potentials,
* :func:`kappa_limit_check` -- the lazy-walk Ollivier curvature evaluated
  close to full idleness.

Lower-bound certificates (an arbitrary integer coupling, or a signed
star coupling) are checked against these exact values.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Mapping

from .graph import DistanceMatrix, Graph, bfs_distances, iter_pairs
from .transport import TransportError, TransportInstance, check_coupling, coupling_cost, solve_transportation, wasserstein1

ADJACENT = "adjacent-coupling"
LIPSCHITZ = "lipschitz-lp"
ALPHA_LIMIT = "alpha-limit"


class CurvatureError(ValueError):
    """Invalid vertex pair or input for a curvature computation."""


class CurvatureConsistencyError(RuntimeError):
    """Two evaluations that must agree did not; indicates a solver bug."""


class StarCouplingError(ValueError):
    def __init__(self, condition: int, message: str):
        super().__init__(f"condition ({condition}) violated: {message}")
        self.condition = condition


def _distances(g: Graph, dist: DistanceMatrix | None) -> DistanceMatrix:
    return bfs_distances(g) if dist is None else dist


def _check_pair(g: Graph, x: int, y: int) -> None:
    if x == y:
        raise CurvatureError(f"curvature needs two distinct vertices, got x = y = {x}")
    for v in (x, y):
        if not 0 <= v < g.n:
            raise CurvatureError(f"vertex {v} not in graph with n={g.n}")
        if g.degree(v) == 0:
            raise CurvatureError(f"vertex {v} is isolated")


# ---------------------------------------------------------------------------
# lazy random walk


def lazy_measure(g: Graph, x: int, alpha) -> dict[int, Fraction]:
    """The alpha-lazy one-step distribution from ``x``."""
    alpha = Fraction(alpha)
    if not 0 <= alpha < 1:
        raise CurvatureError(f"idleness must lie in [0, 1), got {alpha}")
    if g.degree(x) == 0:
        raise CurvatureError(f"vertex {x} is isolated")
    step = (1 - alpha) / g.degree(x)
    m = {v: step for v in g.neighbors(x)}
    if alpha:
        m[x] = alpha
    return m


# ---------------------------------------------------------------------------
# integer mass system


@dataclass(frozen=True)
class MassPair:
    """Integer masses for the pair ``(x, y)`` oriented so that ``d(x) <= d(y)``."""

    x: int
    y: int
    dx: int
    dy: int
    c_x: int
    c_y: int
    lcm: int
    mu_x: Mapping[int, int]
    mu_y: Mapping[int, int]

    @property
    def balanced(self) -> bool:
        return sum(self.mu_x.values()) == sum(self.mu_y.values())

    def instance(self, dist: DistanceMatrix) -> TransportInstance:
        return TransportInstance.from_masses(self.mu_x, self.mu_y, dist)


def mass_pair(g: Graph, x: int, y: int) -> MassPair:
    _check_pair(g, x, y)
    if g.degree(x) > g.degree(y):
        x, y = y, x
    dx, dy = g.degree(x), g.degree(y)
    L = lcm(dx, dy)
    c_x, c_y = L // dx, L // dy
    nx_, ny_ = g.neighbors(x), g.neighbors(y)
    common = nx_ & ny_
    closed_y = ny_ | {y}
    closed_x = nx_ | {x}
    mu_x = {}
    for u in {y} | common:
        mu_x[u] = c_x - c_y
    for u in nx_ - closed_y:
        mu_x[u] = c_x
    mu_y = {u: c_y for u in ny_ - closed_x}
    mu_x = {u: a for u, a in sorted(mu_x.items()) if a}
    mu_y = dict(sorted(mu_y.items()))
    return MassPair(x, y, dx, dy, c_x, c_y, L, mu_x, mu_y)


# ---------------------------------------------------------------------------
# route 1: Li-Lu transport formula on edges


@dataclass(frozen=True)
class AdjacentResult:
    kappa: Fraction
    pair: MassPair
    min_cost: int
    coupling: dict


def kappa_adjacent_detail(g: Graph, x: int, y: int, dist: DistanceMatrix | None = None) -> AdjacentResult:
    _check_pair(g, x, y)
    if not g.has_edge(x, y):
        raise CurvatureError(f"({x}, {y}) is not an edge; use kappa_lipschitz for distant pairs")
    dist = _distances(g, dist)
    mp = mass_pair(g, x, y)
    cost, sigma = solve_transportation(mp.instance(dist))
    kappa = 1 + Fraction(1, mp.dy) - Fraction(cost, mp.lcm)
    return AdjacentResult(kappa, mp, cost, sigma)


def kappa_adjacent(g: Graph, x: int, y: int, dist: DistanceMatrix | None = None) -> Fraction:
    return kappa_adjacent_detail(g, x, y, dist).kappa


# ---------------------------------------------------------------------------
# route 2: Laplacian over 1-Lipschitz potentials


@dataclass(frozen=True)
class LipschitzResult:
    kappa: Fraction
    potential: dict[int, int]


def laplacian(g: Graph, f: Mapping[int, int], u: int) -> Fraction:
    return Fraction(sum(f[v] - f[u] for v in g.neighbors(u)), g.degree(u))


def kappa_lipschitz_detail(g: Graph, x: int, y: int, dist: DistanceMatrix | None = None) -> LipschitzResult:
    """Minimize ``(Δf(x) - Δf(y)) / d(x, y)`` over integer 1-Lipschitz ``f``
    on ``N[x] ∪ N[y]`` with ``f(x) = 0`` and ``f(y) = d(x, y)``.

    The feasible region is cut out by difference constraints with integer
    right-hand sides, so an integral optimum exists; the search below is an
    exact branch and bound over those integer points.
    """
    _check_pair(g, x, y)
    dist = _distances(g, dist)
    if not dist.connected(x, y):
        raise CurvatureError(f"vertices {x} and {y} lie in different components")
    D = dist[x, y]
    dx, dy = g.degree(x), g.degree(y)
    L = lcm(dx, dy)
    wx, wy = L // dx, L // dy
    nbx, nby = g.neighbors(x), g.neighbors(y)
    free = sorted((nbx | nby) - {x, y})
    weight = {v: (wx if v in nbx else 0) - (wy if v in nby else 0) for v in free}
    # scaled objective: L*(Δf(x) - Δf(y)) = sum(weight*f) + const
    const = L * D + (wx * D if y in nbx else 0)
    lo0 = {v: max(-dist[v, x], D - dist[v, y]) for v in free}
    hi0 = {v: min(dist[v, x], D + dist[v, y]) for v in free}
    order = sorted(free, key=lambda v: (-abs(weight[v]), v))
    k = len(order)
    dcol = [[dist[order[i], order[j]] for j in range(k)] for i in range(k)]
    w = [weight[v] for v in order]

    best = [None, None]
    values = [0] * k

    def bound(level, lo, hi):
        total = 0
        for j in range(level, k):
            total += w[j] * (lo[j] if w[j] > 0 else hi[j])
        return total

    def search(level, partial, lo, hi):
        if level == k:
            if best[0] is None or partial < best[0]:
                best[0] = partial
                best[1] = list(values)
            return
        if best[0] is not None and partial + bound(level, lo, hi) >= best[0]:
            return
        wv = w[level]
        choices = range(lo[level], hi[level] + 1)
        if wv < 0:
            choices = reversed(choices)
        drow = dcol[level]
        for a in choices:
            nlo = list(lo)
            nhi = list(hi)
            ok = True
            for j in range(level + 1, k):
                dj = drow[j]
                if a - dj > nlo[j]:
                    nlo[j] = a - dj
                if a + dj < nhi[j]:
                    nhi[j] = a + dj
                if nlo[j] > nhi[j]:
                    ok = False
                    break
            if not ok:
                continue
            values[level] = a
            search(level + 1, partial + wv * a, nlo, nhi)

    lo = [lo0[v] for v in order]
    hi = [hi0[v] for v in order]
    if any(a > b for a, b in zip(lo, hi)):
        raise CurvatureError("empty potential domain; distance data inconsistent")
    search(0, 0, lo, hi)
    potential = {x: 0, y: D}
    potential.update({v: a for v, a in zip(order, best[1])})
    kappa = Fraction(best[0] + const, L * D)
    return LipschitzResult(kappa, dict(sorted(potential.items())))


def kappa_lipschitz(g: Graph, x: int, y: int, dist: DistanceMatrix | None = None) -> Fraction:
    return kappa_lipschitz_detail(g, x, y, dist).kappa


def potential_objective(g: Graph, x: int, y: int, f: Mapping[int, int], dist: DistanceMatrix | None = None) -> Fraction:
    """``∇_xy Δf`` for a potential on ``N[x] ∪ N[y]``; checks the constraints."""
    dist = _distances(g, dist)
    D = dist.finite(x, y)
    dom = sorted(g.closed_neighbors(x) | g.closed_neighbors(y))
    for u in dom:
        if u not in f:
            raise CurvatureError(f"potential undefined at {u}")
    for i, u in enumerate(dom):
        for v in dom[i + 1:]:
            if abs(f[u] - f[v]) > dist[u, v]:
                raise CurvatureError(f"potential not 1-Lipschitz on ({u}, {v})")
    if f[y] - f[x] != D:
        raise CurvatureError("potential gradient from y to x is not 1")
    return (laplacian(g, f, x) - laplacian(g, f, y)) / D


# ---------------------------------------------------------------------------
# route 3: lazy-walk limit


def kappa_alpha(g: Graph, x: int, y: int, alpha, dist: DistanceMatrix | None = None) -> Fraction:
    _check_pair(g, x, y)
    dist = _distances(g, dist)
    if not dist.connected(x, y):
        raise CurvatureError(f"vertices {x} and {y} lie in different components")
    w = wasserstein1(lazy_measure(g, x, alpha), lazy_measure(g, y, alpha), dist)
    return 1 - w / dist[x, y]


def kappa_limit_check(g: Graph, x: int, y: int, dist: DistanceMatrix | None = None) -> Fraction:
    """``κ_α / (1 - α)`` at two idleness values past every breakpoint.

    Raises :class:`CurvatureConsistencyError` when the two values differ.
    """
    _check_pair(g, x, y)
    dist = _distances(g, dist)
    L = lcm(g.degree(x), g.degree(y))
    a1 = 1 - Fraction(1, 2 * L * g.n)
    a2 = 1 - Fraction(1, 4 * L * g.n)
    k1 = kappa_alpha(g, x, y, a1, dist) / (1 - a1)
    k2 = kappa_alpha(g, x, y, a2, dist) / (1 - a2)
    if k1 != k2:
        raise CurvatureConsistencyError(
            f"lazy curvature ratio not constant near 1 for ({x}, {y}): {k1} vs {k2}"
        )
    return k1


# ---------------------------------------------------------------------------
# lower-bound certificates


def _check_sigma(g: Graph, mp: MassPair, sigma: Mapping, dist: DistanceMatrix) -> TransportInstance:
    inst = mp.instance(dist)
    try:
        check_coupling(inst, {k: v for k, v in sigma.items() if v})
    except TransportError as exc:
        raise CurvatureError(f"not a coupling between mu_x and mu_y: {exc}") from None
    return inst


def coupling_lower_bound(g: Graph, x: int, y: int, sigma: Mapping, dist: DistanceMatrix | None = None) -> Fraction:
    """``1 + 1/d(y) - C(σ)/lcm`` for a feasible integer coupling ``σ``."""
    dist = _distances(g, dist)
    mp = mass_pair(g, x, y)
    inst = _check_sigma(g, mp, sigma, dist)
    cost = coupling_cost(inst, {k: v for k, v in sigma.items() if v})
    return 1 + Fraction(1, mp.dy) - Fraction(cost, mp.lcm)


@dataclass(frozen=True)
class StarCoupling:
    """Signed coupling between the non-lazy walks at ``x`` and ``y``."""

    x: int
    y: int
    values: Mapping[tuple[int, int], Fraction]


def star_coupling_from_sigma(g: Graph, x: int, y: int, sigma: Mapping, dist: DistanceMatrix | None = None) -> StarCoupling:
    dist = _distances(g, dist)
    if not g.has_edge(x, y):
        raise CurvatureError(f"({x}, {y}) is not an edge")
    mp = mass_pair(g, x, y)
    _check_sigma(g, mp, sigma, dist)
    x, y = mp.x, mp.y
    cx = g.closed_neighbors(x)
    cy = g.closed_neighbors(y)
    only_y = g.neighbors(y) - cx
    B: dict[tuple[int, int], Fraction] = {(x, y): 1 + Fraction(1, mp.dy)}
    for u in sorted(cx & cy):
        B[(u, u)] = Fraction(-1, mp.dy)
    for (u, v), amount in sigma.items():
        if amount and u in cx and v in only_y:
            B[(u, v)] = B.get((u, v), Fraction(0)) - Fraction(amount, mp.lcm)
    return StarCoupling(x, y, dict(sorted(B.items())))


def check_star_coupling(g: Graph, B: StarCoupling) -> None:
    """Raise :class:`StarCouplingError` naming the first violated condition."""
    x, y = B.x, B.y
    vals = {k: Fraction(v) for k, v in B.values.items()}
    if vals.get((x, y), 0) <= 0:
        raise StarCouplingError(1, f"B({x},{y}) = {vals.get((x, y), 0)} is not positive")
    for (u, v), b in vals.items():
        if (u, v) != (x, y) and b > 0:
            raise StarCouplingError(1, f"B({u},{v}) = {b} is positive")
    total = sum(vals.values(), Fraction(0))
    if total != 0:
        raise StarCouplingError(2, f"entries sum to {total}, not 0")
    rows = [Fraction(0)] * g.n
    cols = [Fraction(0)] * g.n
    for (u, v), b in vals.items():
        rows[u] += b
        cols[v] += b
    mx = lazy_measure(g, x, 0)
    my = lazy_measure(g, y, 0)
    for u in range(g.n):
        if u != x and rows[u] != -mx.get(u, 0):
            raise StarCouplingError(3, f"row {u} sums to {rows[u]}, expected {-mx.get(u, 0)}")
    for v in range(g.n):
        if v != y and cols[v] != -my.get(v, 0):
            raise StarCouplingError(4, f"column {v} sums to {cols[v]}, expected {-my.get(v, 0)}")


def star_coupling_bound(g: Graph, B: StarCoupling, dist: DistanceMatrix | None = None) -> Fraction:
    check_star_coupling(g, B)
    dist = _distances(g, dist)
    total = sum((Fraction(b) * dist.finite(u, v) for (u, v), b in B.values.items()), Fraction(0))
    return total / dist.finite(B.x, B.y)


def random_coupling(mp: MassPair, rng: random.Random, steps: int = 8) -> dict:
    """A feasible integer coupling: north-west corner start, then random
    marginal-preserving cycle moves."""
    rows = list(mp.mu_x.items())
    cols = list(mp.mu_y.items())
    flow = [[0] * len(cols) for _ in rows]
    left = [a for _, a in rows]
    need = [b for _, b in cols]
    i = j = 0
    while i < len(rows) and j < len(cols):
        t = min(left[i], need[j])
        flow[i][j] += t
        left[i] -= t
        need[j] -= t
        if left[i] == 0:
            i += 1
        if j < len(cols) and need[j] == 0:
            j += 1
    if len(rows) >= 2 and len(cols) >= 2:
        for _ in range(steps):
            i1, i2 = rng.sample(range(len(rows)), 2)
            j1, j2 = rng.sample(range(len(cols)), 2)
            room = min(flow[i1][j1], flow[i2][j2])
            if room:
                t = rng.randint(1, room)
                flow[i1][j1] -= t
                flow[i2][j2] -= t
                flow[i1][j2] += t
                flow[i2][j1] += t
    return {
        (rows[a][0], cols[b][0]): flow[a][b]
        for a in range(len(rows)) for b in range(len(cols)) if flow[a][b]
    }


# ---------------------------------------------------------------------------
# whole-graph queries


def kappa(g: Graph, x: int, y: int, dist: DistanceMatrix | None = None) -> Fraction:
    """Exact curvature of any pair: transport on edges, potentials otherwise."""
    if g.has_edge(x, y):
        return kappa_adjacent(g, x, y, dist)
    return kappa_lipschitz(g, x, y, dist)


def edge_curvatures(g: Graph, dist: DistanceMatrix | None = None) -> dict[tuple[int, int], Fraction]:
    dist = _distances(g, dist)
    return {(u, v): kappa_adjacent(g, u, v, dist) for u, v in g.edges}


@dataclass(frozen=True)
class PositivityVerdict:
    positive: bool
    worst_pair: tuple[int, int] | None
    worst_kappa: Fraction | None

    def __bool__(self) -> bool:
        return self.positive


def is_positively_curved(g: Graph, dist: DistanceMatrix | None = None, stop_early: bool = False) -> PositivityVerdict:
    """Positivity over all unordered pairs, with the lexicographically
    smallest pair attaining the minimum.

    With ``stop_early`` the scan checks edges first and returns at the first
    nonpositive value; the witness is then that pair, not necessarily an
    argmin.
    """
    if g.n < 2:
        raise CurvatureError("curvature needs at least two vertices")
    dist = _distances(g, dist)
    if not g.is_connected():
        raise CurvatureError("graph is disconnected")
    if stop_early:
        for u, v in g.edges:
            k = kappa_adjacent(g, u, v, dist)
            if k <= 0:
                return PositivityVerdict(False, (u, v), k)
    worst = None
    worst_pair = None
    for u, v in iter_pairs(g.n):
        k = kappa(g, u, v, dist)
        if stop_early and k <= 0:
            return PositivityVerdict(False, (u, v), k)
        if worst is None or k < worst:
            worst, worst_pair = k, (u, v)
    return PositivityVerdict(worst > 0, worst_pair, worst)


def format_fraction(q: Fraction, decimal: int | None = None) -> str:
    if decimal is not None:
        return f"{float(q):.{decimal}f}"
    return f"{q.numerator}/{q.denominator}"


@dataclass
class PairCurvature:
    u: int
    v: int
    kappa: Fraction
    method: str


@dataclass
class CurvatureReport:
    pairs: list[PairCurvature] = field(default_factory=list)

    @property
    def positively_curved(self) -> bool:
        return all(p.kappa > 0 for p in self.pairs)

    def to_dict(self) -> dict:
        return {
            "pairs": [
                {"u": p.u, "v": p.v, "kappa": format_fraction(p.kappa), "method": p.method}
                for p in self.pairs
            ],
            "positively_curved": self.positively_curved,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "CurvatureReport":
        return cls([PairCurvature(p["u"], p["v"], Fraction(p["kappa"]), p["method"]) for p in data["pairs"]])


def curvature_report(g: Graph, edges_only: bool = False, cross_check: bool = True) -> CurvatureReport:
    """Curvature of every edge (and every other pair unless ``edges_only``).

    With ``cross_check`` each edge value is recomputed by the potential and
    lazy-limit routes and any disagreement raises.
    """
    if not g.is_connected():
        raise CurvatureError("graph is disconnected")
    dist = bfs_distances(g)
    report = CurvatureReport()
    pairs = g.edges if edges_only else tuple(iter_pairs(g.n))
    for u, v in pairs:
        if g.has_edge(u, v):
            k = kappa_adjacent(g, u, v, dist)
            if cross_check:
                k2 = kappa_lipschitz(g, u, v, dist)
                k3 = kappa_limit_check(g, u, v, dist)
                if not k == k2 == k3:
                    raise CurvatureConsistencyError(f"methods disagree on ({u}, {v}): {k}, {k2}, {k3}")
            report.pairs.append(PairCurvature(u, v, k, ADJACENT))
        else:
            k = kappa_lipschitz(g, u, v, dist)
            if cross_check:
                k3 = kappa_limit_check(g, u, v, dist)
                if k != k3:
                    raise CurvatureConsistencyError(f"methods disagree on ({u}, {v}): {k}, {k3}")
            report.pairs.append(PairCurvature(u, v, k, LIPSCHITZ))
    return report
