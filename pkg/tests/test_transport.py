import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from curvlab.graph import Graph, bfs_distances, cycle_graph, path_graph
from curvlab.transport import (
    TransportError,
    TransportInstance,
    check_coupling,
    coupling_cost,
    solve_transportation,
    wasserstein1,
)


def brute_min_cost(supplies, demands, cost):
    """Exhaustive search over every nonnegative integer matrix with the given marginals."""
    m = len(supplies)
    best = None

    def fill(i, cols_left, acc):
        nonlocal best
        if i == m:
            if all(c == 0 for c in cols_left):
                best = acc if best is None else min(best, acc)
            return
        for row in _compositions(supplies[i], cols_left):
            rest = [c - r for c, r in zip(cols_left, row)]
            fill(i + 1, rest, acc + sum(r * cost[i][j] for j, r in enumerate(row)))

    fill(0, list(demands), 0)
    return best


def _compositions(total, caps):
    if not caps:
        if total == 0:
            yield ()
        return
    for first in range(min(total, caps[0]) + 1):
        for rest in _compositions(total - first, caps[1:]):
            yield (first, *rest)


def instance(sup, dem, cost):
    return TransportInstance(
        tuple((f"s{i}", a) for i, a in enumerate(sup)),
        tuple((f"t{j}", b) for j, b in enumerate(dem)),
        tuple(tuple(r) for r in cost),
    )


def random_balanced(rng, m, k, cap):
    while True:
        sup = [rng.randint(0, cap) for _ in range(m)]
        dem = [rng.randint(0, cap) for _ in range(k)]
        if sum(sup) == sum(dem) and sum(sup) > 0:
            return sup, dem


class TestSolver:
    def test_single_route(self):
        inst = TransportInstance((("a", 5),), (("b", 5),), ((2,),))
        cost, sigma = solve_transportation(inst)
        assert cost == 10
        assert sigma == {("a", "b"): 5}

    def test_diagonal_assignment(self):
        inst = TransportInstance((("a", 1), ("b", 1)), (("c", 1), ("d", 1)), ((1, 3), (3, 1)))
        cost, sigma = solve_transportation(inst)
        assert cost == 2
        assert sigma == {("a", "c"): 1, ("b", "d"): 1}

    def test_unbalanced_rejected(self):
        with pytest.raises(TransportError):
            TransportInstance((("a", 2),), (("b", 1),), ((1,),))

    def test_negative_mass_rejected(self):
        with pytest.raises(TransportError):
            TransportInstance((("a", -1), ("b", 2)), (("c", 1),), ((1,), (1,)))

    def test_zero_masses(self):
        inst = TransportInstance((("a", 0), ("b", 3)), (("c", 3), ("d", 0)), ((9, 9), (4, 9)))
        assert solve_transportation(inst) == (12, {("b", "c"): 3})

    def test_random_4x4_against_exhaustive(self):
        rng = random.Random(11)
        for _ in range(60):
            sup, dem = random_balanced(rng, 4, 4, 6)
            cost = [[rng.randint(0, 4) for _ in range(4)] for _ in range(4)]
            inst = instance(sup, dem, cost)
            value, sigma = solve_transportation(inst)
            check_coupling(inst, sigma)
            assert coupling_cost(inst, sigma) == value
            assert value == brute_min_cost(sup, dem, cost)

    def test_random_against_networkx_flow(self):
        rng = random.Random(12)
        for _ in range(100):
            m, k = rng.randint(1, 6), rng.randint(1, 6)
            sup, dem = random_balanced(rng, m, k, 12)
            cost = [[rng.randint(0, 6) for _ in range(k)] for _ in range(m)]
            h = nx.DiGraph()
            for i, a in enumerate(sup):
                h.add_node(("s", i), demand=-a)
            for j, b in enumerate(dem):
                h.add_node(("t", j), demand=b)
            for i in range(m):
                for j in range(k):
                    h.add_edge(("s", i), ("t", j), weight=cost[i][j])
            expected = nx.cost_of_flow(h, nx.min_cost_flow(h))
            assert solve_transportation(instance(sup, dem, cost))[0] == expected

    @given(st.data())
    def test_permutation_invariance(self, data):
        rng = random.Random(data.draw(st.integers(0, 10**6)))
        m, k = rng.randint(1, 4), rng.randint(1, 4)
        sup, dem = random_balanced(rng, m, k, 5)
        cost = [[rng.randint(0, 5) for _ in range(k)] for _ in range(m)]
        base = solve_transportation(instance(sup, dem, cost))[0]
        pr = data.draw(st.permutations(range(m)))
        pc = data.draw(st.permutations(range(k)))
        shuffled = instance([sup[i] for i in pr], [dem[j] for j in pc],
                            [[cost[i][j] for j in pc] for i in pr])
        assert solve_transportation(shuffled)[0] == base


def brute_w1_grid(m1, m2, dist, step):
    """Minimum over all couplings whose entries are multiples of ``step``."""
    src, dst = sorted(m1), sorted(m2)
    units_s = [int(m1[u] / step) for u in src]
    units_d = [int(m2[v] / step) for v in dst]
    cost = [[dist[u, v] for v in dst] for u in src]
    return brute_min_cost(units_s, units_d, cost) * step


class TestWasserstein:
    def test_identical(self):
        d = bfs_distances(cycle_graph(5))
        m = {0: Fraction(1, 3), 2: Fraction(2, 3)}
        assert wasserstein1(m, m, d) == 0

    def test_point_masses(self):
        d = bfs_distances(path_graph(5))
        assert wasserstein1({0: 1}, {4: 1}, d) == 4

    def test_c4_neighbor_measures(self):
        g = cycle_graph(4)
        d = bfs_distances(g)
        mx = {1: Fraction(1, 2), 3: Fraction(1, 2)}
        my = {0: Fraction(1, 2), 2: Fraction(1, 2)}
        value = wasserstein1(mx, my, d)
        assert value == brute_w1_grid(mx, my, d, Fraction(1, 4)) == 1

    def test_lazy_c4_against_grid(self):
        d = bfs_distances(cycle_graph(4))
        mx = {0: Fraction(1, 2), 1: Fraction(1, 4), 3: Fraction(1, 4)}
        my = {1: Fraction(1, 2), 0: Fraction(1, 4), 2: Fraction(1, 4)}
        assert wasserstein1(mx, my, d) == brute_w1_grid(mx, my, d, Fraction(1, 4)) == Fraction(1, 2)

    def test_not_probability(self):
        d = bfs_distances(path_graph(2))
        with pytest.raises(TransportError):
            wasserstein1({0: Fraction(1, 2)}, {1: 1}, d)

    def test_disconnected_support(self):
        d = bfs_distances(Graph.from_edges(2, []))
        with pytest.raises(TransportError):
            wasserstein1({0: 1}, {1: 1}, d)


@st.composite
def measures_on_cycle(draw, n=6, count=3):
    out = []
    for _ in range(count):
        weights = draw(st.lists(st.integers(0, 4), min_size=n, max_size=n).filter(any))
        total = sum(weights)
        out.append({v: Fraction(w, total) for v, w in enumerate(weights) if w})
    return out


class TestMetricProperties:
    d = bfs_distances(cycle_graph(6))

    @given(measures_on_cycle())
    def test_symmetry_and_triangle(self, ms):
        a, b, c = ms
        ab = wasserstein1(a, b, self.d)
        assert ab == wasserstein1(b, a, self.d)
        assert wasserstein1(a, c, self.d) <= ab + wasserstein1(b, c, self.d)
        assert (ab == 0) == (a == b)

    @given(st.integers(0, 10**6), st.integers(1, 5), st.integers(1, 5))
    def test_scaling(self, seed, s, c):
        rng = random.Random(seed)
        sup, dem = random_balanced(rng, 3, 3, 5)
        cost = [[rng.randint(0, 4) for _ in range(3)] for _ in range(3)]
        base = solve_transportation(instance(sup, dem, cost))[0]
        scaled = instance([s * a for a in sup], [s * b for b in dem], [[c * x for x in r] for r in cost])
        assert solve_transportation(scaled)[0] == s * c * base

    def test_rotation_invariance(self):
        a = {0: Fraction(1, 2), 1: Fraction(1, 2)}
        b = {3: Fraction(1, 3), 4: Fraction(2, 3)}
        base = wasserstein1(a, b, self.d)
        for r in range(6):
            ra = {(v + r) % 6: p for v, p in a.items()}
            rb = {(v + r) % 6: p for v, p in b.items()}
            assert wasserstein1(ra, rb, self.d) == base
