import itertools
import random
from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvlab.curvature import (
    ADJACENT,
    LIPSCHITZ,
    CurvatureConsistencyError,
    CurvatureError,
    CurvatureReport,
    StarCoupling,
    StarCouplingError,
    check_star_coupling,
    coupling_lower_bound,
    curvature_report,
    edge_curvatures,
    format_fraction,
    is_positively_curved,
    kappa,
    kappa_adjacent,
    kappa_adjacent_detail,
    kappa_alpha,
    kappa_limit_check,
    kappa_lipschitz,
    kappa_lipschitz_detail,
    lazy_measure,
    mass_pair,
    potential_objective,
    random_coupling,
    star_coupling_bound,
    star_coupling_from_sigma,
)
from curvlab.enumeration import enumerate_outerplanar_min_deg2, g8
from curvlab.graph import Graph, bfs_distances, complete_graph, cycle_graph, iter_pairs, path_graph, star_graph

# x=0 (degree 3), y=1 (degree 4), one common neighbor 2; 3 is the private
# neighbor of x, 4 and 5 are private to y and 4 touches the common neighbor.
ONE_COMMON_DY4 = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (1, 5), (2, 4)])
# same shape with d(y) = 3
ONE_COMMON_DY3 = Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4)])


def half_lazy_oracle(g: Graph, x: int, y: int) -> Fraction:
    """2 * kappa_{1/2} computed with networkx min-cost flow on integer masses."""
    d = dict(nx.all_pairs_shortest_path_length(_nx(g)))
    scale = 2 * g.degree(x) * g.degree(y)
    mx = {x: scale // 2, **{v: scale // (2 * g.degree(x)) for v in g.neighbors(x)}}
    my = {y: scale // 2, **{v: scale // (2 * g.degree(y)) for v in g.neighbors(y)}}
    h = nx.DiGraph()
    for v, a in mx.items():
        h.add_node(("s", v), demand=-a)
    for v, b in my.items():
        h.add_node(("t", v), demand=b)
    for u in mx:
        for v in my:
            h.add_edge(("s", u), ("t", v), weight=d[u][v])
    w = Fraction(nx.cost_of_flow(h, nx.min_cost_flow(h)), scale)
    return 2 * (1 - w / d[x][y])


def _nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


class TestMassPair:
    def test_triangle_is_empty(self):
        mp = mass_pair(complete_graph(3), 0, 1)
        assert (mp.c_x, mp.c_y, mp.lcm) == (1, 1, 2)
        assert mp.mu_x == {} and mp.mu_y == {}

    def test_one_common_neighbor_dy4(self):
        mp = mass_pair(ONE_COMMON_DY4, 1, 0)  # swapped internally
        assert (mp.x, mp.y, mp.lcm, mp.c_x, mp.c_y) == (0, 1, 12, 4, 3)
        assert mp.mu_x == {1: 1, 2: 1, 3: 4}
        assert mp.mu_y == {4: 3, 5: 3}

    def test_path_endpoints(self):
        mp = mass_pair(path_graph(3), 0, 2)
        assert (mp.c_x, mp.c_y, mp.lcm) == (1, 1, 1)
        assert mp.mu_x == {} and mp.mu_y == {}

    def test_isolated_rejected(self):
        with pytest.raises(CurvatureError):
            mass_pair(Graph.from_edges(3, [(0, 1)]), 0, 2)

    @given(st.integers(3, 8), st.data())
    @settings(max_examples=40)
    def test_invariants(self, n, data):
        graphs = enumerate_outerplanar_min_deg2(n)
        g = graphs[data.draw(st.integers(0, len(graphs) - 1))]
        x, y = g.edges[data.draw(st.integers(0, g.m - 1))]
        mp = mass_pair(g, x, y)
        assert mp.dx <= mp.dy
        assert mp.lcm == mp.dx * mp.c_x == mp.dy * mp.c_y
        common = len(g.neighbors(mp.x) & g.neighbors(mp.y))
        assert sum(mp.mu_x.values()) == sum(mp.mu_y.values()) == (mp.dy - 1 - common) * mp.c_y


class TestExactValues:
    @pytest.mark.parametrize("n, expected", [(3, Fraction(3, 2)), (4, 1), (5, Fraction(1, 2)),
                                             (6, 0), (7, 0), (8, 0), (11, 0)])
    def test_cycles(self, n, expected):
        g = cycle_graph(n)
        assert kappa_adjacent(g, 0, 1) == expected
        assert kappa_lipschitz(g, 0, 1) == expected

    def test_k2(self):
        g = complete_graph(2)
        assert kappa_adjacent(g, 0, 1) == kappa_lipschitz(g, 0, 1) == 2

    def test_complete_graph(self):
        for n in range(3, 7):
            g = complete_graph(n)
            assert kappa_adjacent(g, 0, 1) == half_lazy_oracle(g, 0, 1) == Fraction(n, n - 1)

    def test_star_center_leaf(self):
        for t in range(1, 6):
            g = star_graph(t)
            k = kappa_adjacent(g, 0, 1)
            assert k > 0
            assert k == kappa_lipschitz(g, 0, 1) == half_lazy_oracle(g, 0, 1)
        assert kappa_adjacent(star_graph(3), 0, 1) == Fraction(2, 3)

    def test_one_common_dy3(self):
        assert kappa_adjacent(ONE_COMMON_DY3, 0, 1) >= Fraction(1, 3)

    def test_one_common_dy4(self):
        assert kappa_adjacent(ONE_COMMON_DY4, 0, 1) >= Fraction(1, 12)

    def test_nonadjacent(self):
        assert kappa_lipschitz(path_graph(3), 0, 2) == 1
        assert kappa_lipschitz(cycle_graph(4), 0, 2) == 1
        assert kappa_lipschitz(cycle_graph(5), 0, 2) == Fraction(3, 4)
        assert kappa_lipschitz(cycle_graph(6), 0, 2) == Fraction(1, 2)

    def test_adjacent_rejects_distant_pair(self):
        with pytest.raises(CurvatureError):
            kappa_adjacent(path_graph(3), 0, 2)

    def test_same_vertex_rejected(self):
        for fn in (kappa_adjacent, kappa_lipschitz, kappa_limit_check):
            with pytest.raises(CurvatureError):
                fn(cycle_graph(4), 1, 1)
        with pytest.raises(CurvatureError):
            kappa_alpha(cycle_graph(4), 1, 1, Fraction(1, 2))

    def test_disconnected_pair(self):
        g = Graph.from_edges(4, [(0, 1), (2, 3)])
        with pytest.raises(CurvatureError):
            kappa_lipschitz(g, 0, 2)

    def test_g8_positive(self):
        g = g8()
        for u, v in g.edges:
            assert kappa_lipschitz(g, u, v) > 0


class TestLipschitzWitness:
    def test_potential_attains_value(self):
        for g in enumerate_outerplanar_min_deg2(7)[:15]:
            for x, y in iter_pairs(g.n):
                res = kappa_lipschitz_detail(g, x, y)
                assert potential_objective(g, x, y, res.potential) == res.kappa

    def test_potential_checks(self):
        g = cycle_graph(4)
        with pytest.raises(CurvatureError):
            potential_objective(g, 0, 1, {0: 0, 1: 1, 3: 2})
        with pytest.raises(CurvatureError):
            potential_objective(g, 0, 1, {0: 0, 1: 0, 2: 0, 3: 0})

    def test_brute_force_potentials(self):
        # exhaustive search over every integer potential on N[x] ∪ N[y]
        rng = random.Random(3)
        graphs = [g for n in range(4, 8) for g in enumerate_outerplanar_min_deg2(n)]
        for g in rng.sample(graphs, 25):
            d = bfs_distances(g)
            x, y = rng.choice(list(iter_pairs(g.n)))
            dom = sorted((g.closed_neighbors(x) | g.closed_neighbors(y)) - {x, y})
            D = d[x, y]
            best = None
            for vals in itertools.product(range(-2, D + 3), repeat=len(dom)):
                f = {x: 0, y: D, **dict(zip(dom, vals))}
                if all(abs(f[a] - f[b]) <= d[a, b] for a, b in itertools.combinations(f, 2)):
                    val = potential_objective(g, x, y, f, d)
                    best = val if best is None else min(best, val)
            assert kappa_lipschitz(g, x, y, d) == best


class TestAlpha:
    def test_lazy_measure(self):
        m = lazy_measure(cycle_graph(5), 0, Fraction(1, 3))
        assert m == {0: Fraction(1, 3), 1: Fraction(1, 3), 4: Fraction(1, 3)}
        assert sum(m.values()) == 1
        with pytest.raises(CurvatureError):
            lazy_measure(cycle_graph(5), 0, 1)

    def test_k2_alpha_zero(self):
        assert kappa_alpha(complete_graph(2), 0, 1, 0) == 0

    def test_c4_half(self):
        g = cycle_graph(4)
        a = Fraction(1, 2)
        assert kappa_alpha(g, 0, 1, a) / (1 - a) == kappa_lipschitz(g, 0, 1)

    def test_limit_examples(self):
        assert kappa_limit_check(complete_graph(3), 0, 1) == kappa_adjacent(complete_graph(3), 0, 1)
        assert kappa_limit_check(path_graph(3), 0, 2) == kappa_lipschitz(path_graph(3), 0, 2)
        s = star_graph(4)
        assert kappa_limit_check(s, 0, 1) == kappa_adjacent(s, 0, 1)

    def test_half_lazy_oracle_on_corpus(self):
        for n in range(3, 8):
            for g in enumerate_outerplanar_min_deg2(n):
                d = bfs_distances(g)
                for x, y in iter_pairs(g.n):
                    assert kappa(g, x, y, d) == half_lazy_oracle(g, x, y)


class TestCertificates:
    def test_optimal_coupling_is_tight(self):
        for g in [cycle_graph(5), ONE_COMMON_DY4, g8(), star_graph(3)]:
            for x, y in g.edges:
                res = kappa_adjacent_detail(g, x, y)
                assert coupling_lower_bound(g, x, y, res.coupling) == res.kappa
                B = star_coupling_from_sigma(g, x, y, res.coupling)
                check_star_coupling(g, B)
                assert star_coupling_bound(g, B) == res.kappa

    def test_cost_14_coupling(self):
        sigma = {(2, 4): 1, (1, 4): 1, (3, 4): 1, (3, 5): 3}
        assert coupling_lower_bound(ONE_COMMON_DY4, 0, 1, sigma) == Fraction(1, 12)
        B = star_coupling_from_sigma(ONE_COMMON_DY4, 0, 1, sigma)
        assert B.values[(0, 1)] == 1 + Fraction(1, 4)
        assert star_coupling_bound(ONE_COMMON_DY4, B) == Fraction(1, 12)

    def test_rows_of_star_coupling(self):
        sigma = kappa_adjacent_detail(ONE_COMMON_DY4, 0, 1).coupling
        B = star_coupling_from_sigma(ONE_COMMON_DY4, 0, 1, sigma)
        for u in ONE_COMMON_DY4.neighbors(0):
            assert sum(b for (a, _), b in B.values.items() if a == u) == Fraction(-1, 3)

    def test_triangle_structure(self):
        g = complete_graph(3)
        B = star_coupling_from_sigma(g, 0, 1, {})
        half = Fraction(-1, 2)
        assert B.values == {(0, 1): Fraction(3, 2), (0, 0): half, (1, 1): half, (2, 2): half}
        assert star_coupling_bound(g, B) == Fraction(3, 2)

    def test_k2(self):
        g = complete_graph(2)
        B = star_coupling_from_sigma(g, 0, 1, {})
        assert star_coupling_bound(g, B) == 2

    def test_wasteful_coupling_on_c4(self):
        g = cycle_graph(4)
        mp = mass_pair(g, 0, 1)
        # mu_x sits on 3, mu_y on 2; the only coupling is forced, so use C6 instead
        assert mp.mu_x == {3: 1} and mp.mu_y == {2: 1}
        h = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (2, 4), (3, 5)])
        exact = kappa_adjacent(h, 0, 1)
        crossed = {(2, 5): 1, (3, 4): 1}
        assert coupling_lower_bound(h, 0, 1, crossed) < exact

    @pytest.mark.parametrize("condition, mutate", [
        (1, lambda v: {**v, (0, 1): Fraction(0)}),
        (2, lambda v: {**v, (2, 2): v[(2, 2)] + Fraction(1, 1000)}),
    ])
    def test_condition_violations(self, condition, mutate):
        g = complete_graph(3)
        B = star_coupling_from_sigma(g, 0, 1, {})
        bad = StarCoupling(B.x, B.y, mutate(dict(B.values)))
        with pytest.raises(StarCouplingError) as info:
            check_star_coupling(g, bad)
        assert info.value.condition == condition

    def test_condition_3_and_4(self):
        g = cycle_graph(4)
        # keep the total at 0 but move mass between rows / columns
        B = star_coupling_from_sigma(g, 0, 1, {(3, 2): 1})
        v = dict(B.values)
        shifted = {**v, (3, 2): v[(3, 2)] + Fraction(1, 2), (2, 3): Fraction(-1, 2)}
        with pytest.raises(StarCouplingError) as info:
            check_star_coupling(g, StarCoupling(0, 1, shifted))
        assert info.value.condition == 3
        moved = {k: b for k, b in v.items() if k != (3, 2)}
        moved[(3, 3)] = v[(3, 2)]
        with pytest.raises(StarCouplingError) as info:
            check_star_coupling(g, StarCoupling(0, 1, moved))
        assert info.value.condition == 4

    def test_invalid_sigma(self):
        with pytest.raises(CurvatureError):
            coupling_lower_bound(ONE_COMMON_DY4, 0, 1, {(3, 4): 6})

    def test_random_couplings_sound(self):
        rng = random.Random(5)
        for g in enumerate_outerplanar_min_deg2(7):
            for x, y in g.edges:
                res = kappa_adjacent_detail(g, x, y)
                for _ in range(5):
                    sigma = random_coupling(res.pair, rng)
                    assert coupling_lower_bound(g, x, y, sigma) <= res.kappa


class TestWholeGraph:
    def test_c5_positive(self):
        assert is_positively_curved(cycle_graph(5))

    def test_c6_witness(self):
        v = is_positively_curved(cycle_graph(6))
        assert not v and v.worst_kappa == 0 and v.worst_pair == (0, 1)

    def test_g8(self):
        assert is_positively_curved(g8())

    def test_disconnected(self):
        with pytest.raises(CurvatureError):
            is_positively_curved(Graph.from_edges(4, [(0, 1), (2, 3)]))

    def test_relabel_invariance(self):
        rng = random.Random(9)
        for g in enumerate_outerplanar_min_deg2(7)[:10]:
            perm = list(range(g.n))
            rng.shuffle(perm)
            h = g.relabel(perm)
            for u, v in iter_pairs(g.n):
                assert kappa(g, u, v) == kappa(h, perm[u], perm[v])

    def test_report_round_trip(self):
        rep = curvature_report(cycle_graph(5))
        again = CurvatureReport.from_dict(rep.to_dict())
        assert again == rep
        assert {p.method for p in rep.pairs} == {ADJACENT, LIPSCHITZ}
        assert rep.positively_curved

    def test_report_edges_only(self):
        rep = curvature_report(cycle_graph(6), edges_only=True)
        assert len(rep.pairs) == 6 and not rep.positively_curved

    def test_edge_curvatures_keys(self):
        assert set(edge_curvatures(g8())) == set(g8().edges)

    def test_format(self):
        assert format_fraction(Fraction(2)) == "2/1"
        assert format_fraction(Fraction(-1, 12)) == "-1/12"
        assert format_fraction(Fraction(1, 3), 3) == "0.333"

    def test_consistency_error_type(self):
        assert issubclass(CurvatureConsistencyError, RuntimeError)
